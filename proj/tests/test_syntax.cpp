#include <doctest.h>

#include <functional>
#include <map>
#include <random>

#include "stochalc/corpus.hpp"
#include "stochalc/syntax.hpp"

using namespace stochalc;

namespace {

Term P(const char* s) { return parse(s); }

Env env_of(std::initializer_list<std::pair<const char*, const char*>> bs) {
  Env e;
  for (const auto& [x, v] : bs) e = e.insert(x, parse(v));
  return e;
}

}  // namespace

TEST_CASE("parse builds the expected trees") {
  Term sa = Term::lam("x", Term::app(Term::var("x"), Term::var("x")));
  CHECK(P("(\\x.x x)(\\x.x x)") == Term::app(sa, sa));
  CHECK(P("x") == Term::var("x"));
  CHECK(P("a (+) b (+) c") == Term::choice(Term::var("a"), Term::choice(Term::var("b"), Term::var("c"))));
  CHECK(P("a b c") == Term::app(Term::app(Term::var("a"), Term::var("b")), Term::var("c")));
  CHECK(P("a b (+) c") == Term::choice(Term::app(Term::var("a"), Term::var("b")), Term::var("c")));
  CHECK(P("\\x y. x") == Term::lam("x", Term::lam("y", Term::var("x"))));
  CHECK(P("λx. x ⊕ x") == Term::lam("x", Term::choice(Term::var("x"), Term::var("x"))));
}

TEST_CASE("parse reports the error position") {
  CHECK_THROWS_AS(P("(x"), SyntaxError);
  CHECK_THROWS_AS(P("\\. x"), SyntaxError);
  CHECK_THROWS_AS(P(""), SyntaxError);
  try {
    P("x )");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("pretty printing round-trips") {
  for (const char* s : {"(\\x.x x)(\\x.x x)", "a (+) b (+) c", "(a (+) b) c", "\\x. x (\\y. y) (+) x",
                        "f (g h) (\\z. z)", "(\\x. x) (+) \\y. y"}) {
    Term t = P(s);
    CHECK(parse(to_string(t)) == t);
  }
}

TEST_CASE("well_formed") {
  CHECK(well_formed({P("x"), env_of({{"x", "\\y.y"}})}));
  CHECK_FALSE(well_formed({P("x"), {}}));
  CHECK_FALSE(well_formed({P("\\z.z"), env_of({{"x", "\\y.w"}})}));
  // env values must be abstractions
  CHECK_FALSE(well_formed({P("x"), env_of({{"x", "y"}, {"y", "\\a.a"}})}));
  CHECK(well_formed({P("f"), env_of({{"f", "\\n. f n"}})}));
}

TEST_CASE("canonicalize") {
  CanonicalCapsule a = canonicalize({P("\\a.a"), env_of({{"x", "\\y.y"}})});
  CHECK(a.capsule().term == P("\\v0.v0"));
  CHECK(a.capsule().env.size() == 0);
  CHECK(canonicalize({P("\\a.a"), {}}) == canonicalize({P("\\b.b"), {}}));
  CHECK_FALSE(canonicalize({P("\\a.\\b.a"), {}}) == canonicalize({P("\\a.\\b.b"), {}}));

  Capsule rec{P("x"), env_of({{"x", "\\y.x"}})};
  CanonicalCapsule r = canonicalize(rec);
  CHECK(r.capsule().env.size() == 1);
  CHECK(well_formed(r.capsule()));
  CHECK(canonicalize(r.capsule()) == r);
  CHECK(canonicalize(r.capsule()).key() == r.key());

  CHECK_THROWS_AS(canonicalize({P("x"), {}}), IllFormedCapsule);
}

TEST_CASE("fresh_var") {
  CHECK(fresh_var({"v0"}) == "v1");
  CHECK(fresh_var({}) == "v0");
  std::set<Var> ten;
  for (int i = 0; i < 10; ++i) ten.insert("v" + std::to_string(i));
  CHECK(fresh_var(ten) == "v10");

  FreshSupply s({P("v3 v7x"), env_of({{"v3", "\\v12.v12"}, {"v7x", "\\a.a"}})});
  CHECK(s.next() == "v13");
  CHECK(s.next() == "v14");
}

namespace {

// Consistent renaming of every env variable and binder plus unreachable junk.
Capsule scramble(const Capsule& c, std::mt19937_64& rng) {
  std::map<Var, Var> ren;
  std::uint64_t k = rng() % 1000;
  c.env.for_each([&](const Var& x, const Term&) { ren.emplace(x, "r" + std::to_string(k++) + "_" + x); });
  std::function<Term(const Term&, std::map<Var, Var>)> go = [&](const Term& t, std::map<Var, Var> m) -> Term {
    switch (t.kind()) {
      case Term::Kind::Var: {
        auto it = m.find(t.name());
        return it == m.end() ? t : Term::var(it->second);
      }
      case Term::Kind::Lam: {
        Var b = "b" + std::to_string(k++);
        m.insert_or_assign(t.name(), b);
        return Term::lam(b, go(t.body(), m));
      }
      case Term::Kind::App:
        return Term::app(go(t.fn(), m), go(t.arg(), m));
      case Term::Kind::Choice:
        return Term::choice(go(t.left(), m), go(t.right(), m));
    }
    return t;
  };
  Env env;
  c.env.for_each([&](const Var& x, const Term& v) { env = env.insert(ren.at(x), go(v, ren)); });
  env = env.insert("junk" + std::to_string(k), P("\\q. q q"));
  return {go(c.term, ren), env};
}

}  // namespace

TEST_CASE("canonical forms are idempotent and identify alpha/GC classes on the corpus") {
  CorpusSpec spec;
  spec.count = 300;
  std::mt19937_64 rng(7);
  for (const Capsule& c : generate_corpus(spec)) {
    CanonicalCapsule k = canonicalize(c);
    CHECK(canonicalize(k.capsule()) == k);
    Capsule s = scramble(c, rng);
    REQUIRE(well_formed(s));
    CHECK(canonicalize(s) == k);
    CHECK(parse(to_string(k.capsule().term)) == k.capsule().term);
  }
}
