#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "stochalc/church.hpp"
#include "stochalc/corpus.hpp"
#include "stochalc/io.hpp"

using namespace stochalc;

namespace {

Term P(const char* s) { return parse(s); }

CanonicalCapsule canon(const char* t) { return canonicalize({P(t), {}}); }

bool has_choice(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return false;
    case Term::Kind::Lam:
      return has_choice(t.body());
    case Term::Kind::App:
      return has_choice(t.fn()) || has_choice(t.arg());
    case Term::Kind::Choice:
      return true;
  }
  return false;
}

}  // namespace

TEST_CASE("corpus generation") {
  CorpusSpec spec;
  spec.count = 3;
  auto a = generate_corpus(spec);
  auto b = generate_corpus(spec);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(to_string(a[i]) == to_string(b[i]));
    CHECK(well_formed(a[i]));
  }

  spec.count = 1000;
  std::size_t choices = 0;
  std::size_t redexes = 0;
  std::size_t recursive = 0;
  for (const Capsule& c : generate_corpus(spec)) {
    CHECK(well_formed(c));
    choices += has_choice(c.term) ? 1 : 0;
    redexes += c.term.is_app() ? 1 : 0;
    bool rec = false;
    c.env.for_each([&](const Var& x, const Term& v) { rec = rec || occurs_free(v, x); });
    recursive += rec ? 1 : 0;
  }
  CHECK(choices > 300);
  CHECK(redexes > 300);
  CHECK(recursive > 300);

  spec.choice_weight = 0;
  spec.count = 300;
  for (const Capsule& c : generate_corpus(spec)) {
    CHECK_FALSE(has_choice(c.term));
    c.env.for_each([&](const Var&, const Term& v) { CHECK_FALSE(has_choice(v)); });
  }
}

TEST_CASE("Church decoding") {
  auto two = decode_church(canon("\\f.\\x.f (f x)"));
  REQUIRE(two);
  CHECK(two->numeral == std::optional<std::uint64_t>(2));
  CHECK_FALSE(two->boolean);

  auto t = decode_church(canon("\\a.\\b.a"));
  REQUIRE(t);
  CHECK(t->boolean == std::optional<bool>(true));
  CHECK(to_string(*t) == "true");

  CHECK_FALSE(decode_church(canon("\\x.x x")));

  auto f = decode_church(canon("\\a.\\b.b"));
  REQUIRE(f);
  CHECK(to_string(*f) == "false/0");

  for (std::uint64_t n : {0, 1, 5, 17}) {
    auto d = decode_church(canonicalize({church_numeral(n), {}}));
    REQUIRE(d);
    CHECK(d->numeral == std::optional<std::uint64_t>(n));
  }

  // values with environments: SUCC 2 evaluated by big-step
  Capsule prog = parse_program("PLUS 2 3");
  CoinSource zeros(CoinGenerator::constant(false));
  Outcome o = big_step(prog, zeros, Fuel{});
  REQUIRE(o.is_value());
  auto five = decode_church(*o.canonical);
  REQUIRE(five);
  CHECK(five->numeral == std::optional<std::uint64_t>(5));
}

TEST_CASE("program text") {
  Capsule c = parse_program(
      "# flips until heads\n"
      "let ID = \\x. x\n"
      "rec geo = \\n. n (+) geo (SUCC n)\n"
      "geo 0\n");
  CHECK(well_formed(c));
  CHECK(c.env.contains("geo"));
  CHECK_FALSE(c.env.contains("ID"));
  CoinSource coins(CoinGenerator::word("110", true));
  Outcome o = big_step(c, coins, Fuel{});
  REQUIRE(o.is_value());

  CHECK_THROWS_AS(parse_program("let X = y\nX"), SyntaxError);
  CHECK_THROWS_AS(parse_program("# nothing\n"), SyntaxError);
  CHECK_THROWS_AS(parse_program("undefined_name"), IllFormedCapsule);
  CHECK_THROWS_AS(parse_program("rec f = g\nf"), SyntaxError);
}

TEST_CASE("JSON") {
  Capsule c = parse_program("rec f = \\x. x (+) f x\nf (\\y. y)");
  Json j = capsule_to_json(c);
  CHECK(j["term"] == to_string(c.term));
  Capsule back = capsule_from_json(j);
  CHECK(canonicalize(back) == canonicalize(c));

  CHECK_THROWS_AS(capsule_from_json(Json::parse(R"({"term": "x", "env": {}})")), IllFormedCapsule);
  CHECK_THROWS(capsule_from_json(Json::parse(R"({"env": {}})")));

  CorpusSpec spec;
  spec.count = 20;
  auto corpus = generate_corpus(spec);
  auto again = corpus_from_json(Json::parse(corpus_to_json(corpus).dump()));
  REQUIRE(again.size() == corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) CHECK(canonicalize(again[i]) == canonicalize(corpus[i]));

  TreeLabeling t = labeling_from_json(Json::parse(R"({"": 1, "0": 0, "1": 0})"));
  CHECK(tree_process(t).run("10") == "01");
  CHECK_THROWS(labeling_from_json(Json::parse(R"({"2": 1})")));

  CoinSource zeros(CoinGenerator::constant(false));
  Outcome o = big_step(c, zeros, Fuel{});
  Json oj = outcome_to_json(o, false);
  CHECK(oj["outcome"] == "value");
  CHECK(oj["consumed"].is_array());
  CHECK(oj["steps"] == o.steps);
  CHECK(index_to_json(CoinIndex(7)) == 7);
  CoinIndex huge = CoinIndex(1) << 80;
  CHECK(index_to_json(huge) == huge.str());

  MeasureReport r = verify_measure(builtin("tl"), 1, 3);
  Json mj = measure_report_to_json(r);
  CHECK(mj[""]["sum"] == "1/2^0");
  CHECK(mj["1"]["expected"] == "1/2^1");
  CHECK(mj["1"]["pass"] == true);

  auto dir = std::filesystem::temp_directory_path();
  std::ofstream(dir / "stochalc_prog.lam") << "(\\x. x) (\\y. y)\n";
  CHECK(load_capsule((dir / "stochalc_prog.lam").string()).term.is_app());
  std::ofstream(dir / "stochalc_caps.json") << j.dump();
  CHECK(canonicalize(load_capsule((dir / "stochalc_caps.json").string())) == canonicalize(c));
}
