#include <doctest.h>

#include "stochalc/coins.hpp"

using namespace stochalc;

TEST_CASE("dyadic arithmetic") {
  CHECK(Dyadic(6, 3) == Dyadic(3, 2));
  CHECK(Dyadic(3, 2).to_string() == "3/2^2");
  CHECK(Dyadic::from_string("3/2^2") == Dyadic(3, 2));
  CHECK(Dyadic::pow2_neg(1) + Dyadic::pow2_neg(1) == Dyadic::one());
  CHECK(Dyadic::pow2_neg(2) < Dyadic::pow2_neg(1));
  CHECK(Dyadic::one() - Dyadic::pow2_neg(2) == Dyadic(3, 2));
  CHECK(Dyadic::zero().to_string() == "0/2^0");
  CHECK(Dyadic::pow2_neg(200) + Dyadic::pow2_neg(200) == Dyadic::pow2_neg(199));
}

TEST_CASE("built-in processes") {
  CHECK(builtin("tl").run("0110") == "110");
  CHECK(builtin("evens").run("010101") == "000");
  CHECK(builtin("odds").run("010101") == "111");
  CHECK(builtin("proj1").trace("00000000").examined == std::vector<std::size_t>{1, 4, 7});
  CHECK(builtin("proj1").run("01001001") == "111");
  CHECK(builtin("proj0").trace("00000000").examined == std::vector<std::size_t>{0, 3, 6});
  CHECK(builtin("proj2").run("00100100") == "11");
  CHECK_THROWS_AS(builtin("proj3"), UnknownName);
}

TEST_CASE("tree processes") {
  TossingProcess t = tree_process(TreeLabeling::table({{"", 0}, {"0", 1}, {"1", 2}}));
  CHECK(t.run("01") == "01");
  CHECK(tree_process(TreeLabeling::identity()).run("0110100") == "0110100");
  TossingProcess u = tree_process(TreeLabeling::table({{"", 1}, {"0", 0}, {"1", 0}}));
  CHECK(u.run("10") == "01");
  ProcessOutput tr = u.trace("10");
  CHECK(tr.examined == std::vector<std::size_t>{1, 0});

  TossingProcess bad = tree_process(TreeLabeling::table({{"", 0}, {"0", 0}}));
  CHECK_THROWS_AS((void)bad.run("00"), LabelRepetition);
}

TEST_CASE("partial skip-zeros process") {
  TossingProcess t = skip_zeros_process();
  CHECK(t.run("1011") == "01");
  CHECK(t.run("000") == "");
  CHECK(t.run("001110") == "10");
}

TEST_CASE("prefix codes") {
  CHECK(extract_prefix_code(builtin("tl"), "0", 2) == PrefixCode{"00", "10"});
  CHECK(extract_prefix_code(builtin("evens"), "", 3) == PrefixCode{""});
  CHECK(extract_prefix_code(builtin("proj0"), "1", 1) == PrefixCode{"1"});
  CHECK_THROWS_AS(extract_prefix_code(builtin("proj1"), "1", 1), DepthInsufficient);
  CHECK(is_prefix_code({"00", "01", "1"}));
  CHECK_FALSE(is_prefix_code({"0", "01"}));
  CHECK_FALSE(is_prefix_code({}));
}

TEST_CASE("verify_measure") {
  MeasureReport r = verify_measure(builtin("tl"), 2, 3);
  CHECK(r.pass());
  CHECK(r.entries.size() == 7);
  for (const auto& e : r.entries) CHECK(e.sum == Dyadic::pow2_neg(e.x.size()));

  CHECK(verify_measure(tree_process(TreeLabeling::identity()), 6, 6).pass());

  TossingProcess zero = process_from_function("zero", [](const Word& w) { return Word(w.size(), '0'); });
  MeasureReport z = verify_measure(zero, 1, 4);
  CHECK_FALSE(z.pass());
  for (const auto& e : z.entries) {
    if (e.x == "1") {
      CHECK(e.sum == Dyadic::zero());
      CHECK_FALSE(e.pass);
    }
  }
}

TEST_CASE("mass agrees with the extracted code") {
  for (const auto& name : builtin_names()) {
    TossingProcess t = builtin(name);
    for (const Word& x : words_up_to(3)) {
      Dyadic sum;
      for (const Word& y : extract_prefix_code(t, x, 9)) sum += Dyadic::pow2_neg(y.size());
      CHECK(sum == prefix_code_mass(t, x, 9));
    }
  }
}

TEST_CASE("coding function axioms") {
  std::map<Word, PrefixCode> p;
  for (const Word& x : words_up_to(3)) p[x] = extract_prefix_code(builtin("tl"), x, 4);
  CHECK(coding_function_check(p, 3));

  std::map<Word, PrefixCode> q = p;
  q[""] = {"0"};
  CHECK_FALSE(coding_function_check(q, 0));

  std::map<Word, PrefixCode> d{{"", {""}}, {"0", {"0"}}, {"1", {"0"}}};
  CHECK_FALSE(coding_function_check(d, 1));
}

TEST_CASE("tree processes are monotone and uniformly continuous") {
  std::map<Word, std::uint64_t> tab;
  // label(w) = 2 |w| + last bit, distinct along every path
  for (const Word& w : words_up_to(6)) tab[w] = 2 * w.size() + (w.empty() ? 0 : w.back() - '0');
  TossingProcess t = tree_process(TreeLabeling::table(tab));
  std::uint64_t max_label = 0;
  for (const Word& w : words_up_to(3)) max_label = std::max(max_label, tab[w]);
  // m(n) = 1 + max label over depth <= 3 nodes determines 4 output bits
  for (const Word& in : words_of_length(max_label + 1)) {
    CHECK(t.run(in).size() >= 4);
    for (std::size_t k = 0; k < in.size(); ++k) CHECK(is_prefix(t.run(in.substr(0, k)), t.run(in)));
  }
}

TEST_CASE("coin sources") {
  CoinSource s(CoinGenerator::parse("word:101+zeros"));
  CHECK(*s.consume(0) == true);
  CHECK(*s.consume(1) == false);
  CHECK(*s.peek(10) == false);
  CHECK_FALSE(s.duplicate());
  s.consume(0);
  CHECK(s.duplicate());

  CoinSource w(CoinGenerator::parse("word:10"));
  CHECK_FALSE(w.peek(2).has_value());
  CHECK(*CoinSource(CoinGenerator::parse("ones")).peek(123456) == true);

  CoinGenerator g = CoinGenerator::seeded(42);
  CHECK(g.bit(5) == CoinGenerator::seeded(42).bit(5));
  CoinGenerator f = g.with_flips({5});
  CHECK(*f.bit(5) != *g.bit(5));
  CHECK(f.bit(6) == g.bit(6));
  CHECK_THROWS(CoinGenerator::parse("nope"));
}

TEST_CASE("coin views compose as index maps") {
  CoinView v;
  CHECK(v.proj(1).at(2) == 7);
  CHECK(v.proj(0).proj(1).at(0) == 3);
  CHECK(v.proj(2).tail().at(0) == 5);
  CHECK(v.tail().proj(2).at(1) == 6);
}
