#include <doctest.h>

#include <random>

#include "stochalc/corpus.hpp"
#include "stochalc/treeproc.hpp"
#include "tree_oracle.hpp"

using namespace stochalc;

namespace {

Term P(const char* s) { return parse(s); }

Env four() {
  Env e;
  for (auto [x, v] : {std::pair{"a", "\\p.p"}, {"b", "\\p.p p"}, {"c", "\\u.\\w.u"}, {"d", "\\q.q"}}) {
    e = e.insert(x, parse(v));
  }
  return e;
}

const Capsule omega{P("(\\x.x x)(\\x.x x)"), {}};

}  // namespace

TEST_CASE("build_tree worked examples") {
  CapsuleTree ch = build_tree({P("a (+) b"), four()}, Fuel{});
  CHECK(ch.label("") == CoinIndex(0));
  for (const Word& w : words_of_length(6)) {
    CoinSource s(CoinGenerator::word(w, false));
    CHECK(apply_capsule_tree(ch, s, 6) == w);
  }

  CapsuleTree var = build_tree({P("a"), four()}, Fuel{});
  CoinSource s(CoinGenerator::word("0110", false));
  CHECK(apply_capsule_tree(var, s, 4) == "0110");
  for (const Word& w : words_up_to(4)) CHECK(var.label(w) == CoinIndex(w.size()));

  Capsule app{P("(a (+) b) (c (+) d)"), four()};
  CapsuleTree adequacy = build_tree(app, Fuel{});
  CHECK(adequacy.label("") == CoinIndex(0));
  CHECK(adequacy.label("0") == CoinIndex(2));
  CapsuleTree literal = build_tree(app, Fuel{}, Split::BigstepLiteral);
  CHECK(literal.label("") == CoinIndex(0));
  CHECK(literal.label("0") == CoinIndex(1));

  CHECK_THROWS_AS(build_tree({P("x"), {}}, Fuel{}), IllFormedCapsule);
}

TEST_CASE("apply_capsule_tree") {
  CapsuleTree ch = build_tree({P("a (+) b"), four()}, Fuel{});
  CoinSource ones(CoinGenerator::constant(true));
  CHECK(apply_capsule_tree(ch, ones, 1) == "1");

  CapsuleTree starved = build_tree(omega, Fuel{0});
  CoinSource any(CoinGenerator::seeded(1));
  CHECK_THROWS_AS(apply_capsule_tree(starved, any, 1), Unresolved);
  CHECK_FALSE(starved.label("").has_value());
}

TEST_CASE("check_equivalence worked examples") {
  EquivalenceReport r = check_equivalence({P("a (+) b"), four()}, CoinGenerator::constant(false), Fuel{});
  CHECK(r.agree);
  REQUIRE(r.big.is_value());
  CHECK(*r.big.canonical == *r.small.canonical);
  CHECK(r.tree_word == "0");

  EquivalenceReport w = check_equivalence(omega, CoinGenerator::seeded(5), Fuel{10000});
  CHECK(w.agree);
  CHECK(w.fuel_exhausted);
  CHECK_FALSE(w.big.is_value());
  CHECK_FALSE(w.small.is_value());
}

TEST_CASE("the incremental tree matches the proof's definition") {
  CorpusSpec spec;
  spec.count = 120;
  spec.seed = 3;
  std::mt19937_64 rng(17);
  Fuel fuel{1500};
  std::size_t compared = 0;
  for (const Capsule& c : generate_corpus(spec)) {
    for (Split split : {Split::Adequacy, Split::BigstepLiteral}) {
      CapsuleTree ct = build_tree(c, fuel, split);
      SplitOffsets off = split_offsets(split);
      std::vector<Word> nodes = words_up_to(4);
      CoinSource alpha(CoinGenerator::seeded(rng()));
      TreeRun run = run_capsule_tree(ct, alpha);
      for (std::size_t k = 0; k <= run.output.size(); ++k) nodes.push_back(run.output.substr(0, k));
      if (run.reduced) {
        for (const char* tail : {"0", "01", "011"}) nodes.push_back(run.output + tail);
      }
      for (const Word& w : nodes) {
        auto want = oracle::label(c, w, off, fuel.max_steps);
        if (!want) continue;
        auto got = ct.label(w);
        if (!got) continue;
        ++compared;
        INFO(to_string(c), " node '", w, "'");
        CHECK(*got == *want);
      }
    }
  }
  CHECK(compared > 3000);
}

TEST_CASE("corpus trees never repeat labels and preserve measure") {
  CorpusSpec spec;
  spec.count = 200;
  spec.seed = 5;
  std::mt19937_64 rng(23);
  Fuel fuel{5000};
  std::size_t measured = 0;
  for (const Capsule& c : generate_corpus(spec)) {
    CapsuleTree ct = build_tree(c, fuel);
    for (int i = 0; i < 3; ++i) {
      CoinSource alpha(CoinGenerator::seeded(rng()));
      CHECK_NOTHROW(run_capsule_tree(ct, alpha));
      CHECK_FALSE(alpha.duplicate());
    }
    bool resolved = true;
    for (const Word& w : words_up_to(3)) resolved = resolved && ct.label(w).has_value();
    if (!resolved) continue;
    ++measured;
    MeasureReport r = verify_tree_measure(ct.labeling(), 4);
    INFO(to_string(c));
    CHECK(r.pass());
  }
  CHECK(measured > 100);
}

TEST_CASE("the tree-process cursor agrees with the labeling on small trees") {
  for (const char* term : {"a (+) b", "(a (+) b) (c (+) d)", "(\\x. x (+) d) (a (+) c)"}) {
    CapsuleTree ct = build_tree({P(term), four()}, Fuel{});
    TossingProcess cursor = ct.process();
    TossingProcess table = tree_process(ct.labeling());
    for (const Word& in : words_of_length(12)) CHECK(cursor.run(in) == table.run(in));
    CHECK(verify_measure(cursor, 3, 12).pass());
  }
}

TEST_CASE("equivalence holds on a corpus sample") {
  CorpusSpec spec;
  spec.count = 200;
  spec.seed = 9;
  std::mt19937_64 rng(29);
  for (const Capsule& c : generate_corpus(spec)) {
    for (Split split : {Split::Adequacy, Split::BigstepLiteral}) {
      EquivalenceReport r = check_equivalence(c, CoinGenerator::seeded(rng()), Fuel{20000}, split);
      INFO(to_string(c), ": ", r.detail);
      CHECK(r.agree);
      CHECK_FALSE(r.duplicate);
    }
  }
}
