#include <doctest.h>

#include "stochalc/engeler.hpp"

using namespace stochalc;

namespace {

const std::vector<Token>& U() { return finite_universe(); }

}  // namespace

TEST_CASE("tokens") {
  CHECK(U().size() == 6);
  CHECK(U()[0].is_empty());
  CHECK(U()[0].rank() == 0);
  CHECK(U()[1].rank() == 1);
  CHECK(U()[4].rank() == 1);
  CHECK(U()[5].rank() == 2);
  TokenSet s(U().begin(), U().end());
  CHECK(s.size() == 6);
}

TEST_CASE("fun") {
  Token q0 = U()[1];
  Token q1 = U()[2];
  CHECK(engeler_fun({Token::empty()}, "0101", {q0}).empty());
  CHECK(engeler_fun({Token::triple("", {}, q0)}, "", {}) == TokenSet{q0});
  CHECK(engeler_fun({Token::triple("0", {q0}, q1)}, "1", {q0}).empty());
  CHECK(engeler_fun({Token::triple("0", {q0}, q1)}, "01", {q0, q1}) == TokenSet{q1});
  CHECK(engeler_fun({Token::triple("0", {q0}, q1)}, "01", {q1}).empty());
}

TEST_CASE("lam") {
  for (std::size_t p = 0; p <= 2; ++p) {
    CHECK(engeler_lam(FiniteFun::bottom(p), 2, U()) == TokenSet{Token::empty()});
  }
  Token q0 = U()[1];
  FiniteFun keep(0, {q0}, {{{}, {q0}}});
  TokenSet l = engeler_lam(keep, 2, U());
  CHECK(l.contains(Token::triple("", {q0}, q0)));
  CHECK_FALSE(l.contains(Token::triple("", {}, q0)));
  CHECK(l.contains(Token::empty()));
  CHECK(funlam_identity(keep, 2));

  CHECK_THROWS(FiniteFun(0, {q0}, {{{q0}, {}}}));
}

TEST_CASE("fun of lam is the identity") {
  FunLamReport ex = funlam_exhaustive(2, 3);
  CHECK(ex.pass());
  CHECK(ex.tables > 0);
  MESSAGE("exhaustive: ", ex.tables, " slice tables, ", ex.points, " points");

  FunLamReport rnd = funlam_random_tables(300, 7, 2);
  CHECK(rnd.pass());
  CHECK(rnd.first_failure.empty());
}

TEST_CASE("the slice kernel agrees with token sets") {
  // every one-token slice table at prefix 1, through both implementations
  for (std::size_t a = 0; a < U().size(); ++a) {
    for (unsigned bits = 0; bits < 16; ++bits) {
      std::vector<std::vector<TokenSet>> table(2, std::vector<TokenSet>(2));
      bool monotone = true;
      for (unsigned cyl = 0; cyl < 2; ++cyl) {
        bool without = bits >> (2 * cyl) & 1U;
        bool with = bits >> (2 * cyl + 1) & 1U;
        monotone = monotone && (!without || with);
        if (without) table[cyl][0] = {U()[1]};
        if (with) table[cyl][1] = {U()[1]};
      }
      if (!monotone) continue;
      FiniteFun f(1, {U()[a]}, table);
      std::string why;
      CHECK_MESSAGE(funlam_identity(f, 2, &why), why);

      slice::Table t;
      t.prefix = 1;
      for (unsigned cyl = 0; cyl < 2; ++cyl) {
        for (unsigned b = 0; b < 64; ++b) {
          TokenSet in;
          for (unsigned i = 0; i < 6; ++i) {
            if (b >> i & 1U) in.insert(U()[i]);
          }
          if (f(Word(1, cyl != 0U ? '1' : '0'), in).contains(U()[1])) t.g[cyl] |= std::uint64_t{1} << b;
        }
      }
      auto lq = slice::lam(t);
      for (unsigned cyl2 = 0; cyl2 < 4; ++cyl2) {
        for (unsigned b = 0; b < 64; ++b) {
          bool want = (t.g[cyl2 >> 1] >> b & 1U) != 0;
          CHECK(slice::fun(lq, cyl2, b) == want);
          CHECK(slice::holds(t, cyl2, b) == want);
        }
      }
    }
  }
}

TEST_CASE("monotone predicates") {
  // Dedekind numbers
  const std::size_t dedekind[] = {2, 3, 6, 20, 168, 7581, 7828354};
  for (unsigned n = 0; n <= 5; ++n) CHECK(monotone_predicates(n).size() == dedekind[n]);
  SliceFamily full = full_universe_family();
  CHECK(full.tables == dedekind[6]);
  FunLamReport r;
  check_slice_range(full, 0, full.tables, r);
  CHECK(r.pass());
  CHECK(r.tables == dedekind[6]);
}
