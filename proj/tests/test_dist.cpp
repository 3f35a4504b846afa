#include <doctest.h>

#include <cmath>

#include "stochalc/corpus.hpp"
#include "stochalc/dist.hpp"

using namespace stochalc;

namespace {

Term P(const char* s) { return parse(s); }

Env abc() {
  Env e;
  for (auto [x, v] : {std::pair{"A", "\\p.p"}, {"B", "\\p.\\q.p"}, {"C", "\\p.\\q.q"}}) e = e.insert(x, parse(v));
  return e;
}

CanonicalCapsule canon(const char* t) { return canonicalize({P(t), {}}); }

}  // namespace

TEST_CASE("exact distributions of the worked examples") {
  Distribution d = exact_distribution({P("(\\p.p) (+) (\\p.\\q.p)"), {}}, 8, Fuel{});
  CHECK(d.outcomes.size() == 2);
  CHECK(d.outcomes.at(canon("\\p.p")) == Dyadic::pow2_neg(1));
  CHECK(d.outcomes.at(canon("\\p.\\q.p")) == Dyadic::pow2_neg(1));
  CHECK(d.unresolved.is_zero());

  Distribution e = exact_distribution({P("(A (+) B) (+) C"), abc()}, 8, Fuel{});
  CHECK(e.outcomes.size() == 3);
  CHECK(e.outcomes.at(canon("\\p.p")) == Dyadic::pow2_neg(2));
  CHECK(e.outcomes.at(canon("\\p.\\q.p")) == Dyadic::pow2_neg(2));
  CHECK(e.outcomes.at(canon("\\p.\\q.q")) == Dyadic::pow2_neg(1));
  CHECK(e.total() == Dyadic::one());

  Distribution m = exact_distribution({P("(\\x.x) A (+) (\\y.y) A"), abc()}, 8, Fuel{});
  CHECK(m.outcomes.size() == 1);
  CHECK(m.outcomes.at(canon("\\p.p")) == Dyadic::one());

  Distribution w = exact_distribution({P("(\\x.x x)(\\x.x x)"), {}}, 8, Fuel{1000});
  CHECK(w.outcomes.empty());
  CHECK(w.unresolved == Dyadic::one());
}

TEST_CASE("mass is conserved and refinement is monotone") {
  CorpusSpec spec;
  spec.count = 120;
  spec.seed = 21;
  for (const Capsule& c : generate_corpus(spec)) {
    Distribution prev = exact_distribution(c, 2, Fuel{2000});
    CHECK(prev.total() == Dyadic::one());
    for (auto [depth, fuel] : {std::pair{4, 2000}, {6, 4000}}) {
      Distribution d = exact_distribution(c, depth, Fuel{static_cast<std::uint64_t>(fuel)});
      INFO(to_string(c));
      CHECK(d.total() == Dyadic::one());
      CHECK(d.unresolved <= prev.unresolved);
      for (const auto& [k, p] : prev.outcomes) {
        REQUIRE(d.outcomes.contains(k));
        CHECK(p <= d.outcomes.at(k));
      }
      prev = d;
    }
  }
}

TEST_CASE("sampling") {
  std::uint64_t n = 10000;
  Empirical e = sample_distribution({P("(\\p.p) (+) (\\p.\\q.p)"), {}}, n, 99, Fuel{});
  CHECK(e.samples == n);
  double freq = static_cast<double>(e.counts.at(canon("\\p.p"))) / static_cast<double>(n);
  CHECK(std::abs(freq - 0.5) <= 4 * (1 / (2 * std::sqrt(static_cast<double>(n)))));

  Empirical one = sample_distribution({P("\\x.x"), {}}, 500, 1, Fuel{});
  CHECK(one.counts.size() == 1);
  CHECK(one.counts.begin()->second == 500);

  Empirical w = sample_distribution({P("(\\x.x x)(\\x.x x)"), {}}, 100, 1, Fuel{1000});
  CHECK(w.diverged == 100);
  CHECK(w.counts.empty());
}

TEST_CASE("sampling does not depend on how samples are grouped") {
  Capsule c{P("(A (+) B) ((\\z. z) (+) C)"), abc()};
  Empirical whole = sample_distribution(c, 3000, 5, Fuel{});
  std::vector<std::uint64_t> seeds = sample_seeds(5, 3000);
  Empirical a;
  Empirical b;
  for (std::size_t i = 0; i < seeds.size(); ++i) record_sample(i % 3 == 0 ? a : b, c, seeds[i], Fuel{}, Split::Adequacy);
  merge(a, b);
  CHECK(a.samples == whole.samples);
  CHECK(a.diverged == whole.diverged);
  CHECK(a.counts == whole.counts);
}

TEST_CASE("compare") {
  Distribution half;
  half.outcomes.emplace(canon("\\a.a"), Dyadic::pow2_neg(1));
  half.outcomes.emplace(canon("\\a.\\b.a"), Dyadic::pow2_neg(1));

  Empirical close;
  close.samples = 10000;
  close.counts.emplace(canon("\\a.a"), 5034);
  close.counts.emplace(canon("\\a.\\b.a"), 4966);
  Comparison ok = compare(half, close, 4.0);
  CHECK(ok.pass());
  CHECK(ok.max_z == doctest::Approx(0.68));

  Empirical far;
  far.samples = 10000;
  far.counts.emplace(canon("\\a.a"), 9000);
  far.counts.emplace(canon("\\a.\\b.a"), 1000);
  Comparison bad = compare(half, far, 4.0);
  CHECK_FALSE(bad.pass());
  CHECK(bad.max_z == doctest::Approx(80.0));

  Distribution all;
  all.outcomes.emplace(canon("\\a.a"), Dyadic::one());
  Empirical same;
  same.samples = 10;
  same.counts.emplace(canon("\\a.a"), 10);
  Comparison z = compare(all, same, 4.0);
  CHECK(z.pass());
  CHECK(z.max_z == 0.0);

  // an unexpected outcome under a certain distribution can never pass
  Empirical odd = same;
  odd.counts.emplace(canon("\\a.\\b.b"), 1);
  odd.samples = 11;
  CHECK_FALSE(compare(all, odd, 4.0).pass());

  Distribution partial = all;
  partial.outcomes.begin()->second = Dyadic::pow2_neg(1);
  partial.unresolved = Dyadic::pow2_neg(1);
  CHECK_THROWS_AS(compare(partial, same, 4.0), UnresolvedMass);
  CHECK_NOTHROW(compare(partial, same, 4.0, false));
}

TEST_CASE("exact and sampled distributions agree on corpus programs") {
  CorpusSpec spec;
  spec.count = 40;
  spec.seed = 2;
  int checked = 0;
  for (const Capsule& c : generate_corpus(spec)) {
    Distribution d = exact_distribution(c, 16, Fuel{5000});
    if (!d.unresolved.is_zero()) continue;
    Empirical e = sample_distribution(c, 2000, 77, Fuel{5000});
    INFO(to_string(c));
    CHECK(compare(d, e, 4.0).pass());
    ++checked;
  }
  CHECK(checked >= 10);
}
