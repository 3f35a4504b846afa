#include "stochalc/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace stochalc {

Dyadic Distribution::total() const {
  Dyadic sum = unresolved;
  for (const auto& [k, p] : outcomes) sum += p;
  return sum;
}

namespace {

struct Branch {
  SmallStepMachine machine;
  std::size_t coins;
  std::uint64_t steps;
};

}  // namespace

Distribution exact_distribution(const Capsule& c, std::size_t coin_depth, Fuel fuel) {
  Distribution d;
  std::vector<Branch> work;
  work.push_back({SmallStepMachine(c), 0, 0});
  while (!work.empty()) {
    Branch b = std::move(work.back());
    work.pop_back();
    Dyadic weight = Dyadic::pow2_neg(b.coins);
    for (;;) {
      auto redex = b.machine.next_redex();
      if (redex == SmallStepMachine::Redex::None) {
        d.outcomes[canonicalize(b.machine.capsule())] += weight;
        break;
      }
      if (b.steps >= fuel.max_steps) {
        d.unresolved += weight;
        break;
      }
      ++b.steps;
      if (redex != SmallStepMachine::Redex::Choice) {
        b.machine.fire();
        continue;
      }
      if (b.coins >= coin_depth) {
        d.unresolved += weight;
        break;
      }
      Branch right{b.machine, b.coins + 1, b.steps};
      right.machine.fire(true);
      work.push_back(std::move(right));
      b.machine.fire(false);
      ++b.coins;
      weight = weight.half();
    }
  }
  return d;
}

std::vector<std::uint64_t> sample_seeds(std::uint64_t seed, std::uint64_t n) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> out(n);
  for (auto& s : out) s = rng();
  return out;
}

void record_sample(Empirical& e, const Capsule& c, std::uint64_t coin_seed, Fuel fuel, Split split) {
  CoinSource coins(CoinGenerator::seeded(coin_seed));
  Outcome o = big_step(c, coins, fuel, split);
  ++e.samples;
  if (o.is_value()) {
    ++e.counts[*o.canonical];
  } else {
    ++e.diverged;
  }
}

void merge(Empirical& into, const Empirical& from) {
  for (const auto& [k, n] : from.counts) into.counts[k] += n;
  into.diverged += from.diverged;
  into.samples += from.samples;
}

Empirical sample_distribution(const Capsule& c, std::uint64_t n, std::uint64_t seed, Fuel fuel, Split split) {
  if (n == 0) throw std::invalid_argument("need at least one sample");
  Empirical e;
  for (std::uint64_t s : sample_seeds(seed, n)) record_sample(e, c, s, fuel, split);
  return e;
}

bool Comparison::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const ComparisonEntry& e) { return e.pass; });
}

namespace {

ComparisonEntry score(std::string name, double p, std::uint64_t hits, std::uint64_t n, double tol) {
  ComparisonEntry e;
  e.outcome = std::move(name);
  e.expected = p;
  e.observed = static_cast<double>(hits) / static_cast<double>(n);
  double diff = std::fabs(e.observed - p);
  if (p <= 0.0 || p >= 1.0) {
    e.z = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    e.z = diff / std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  }
  e.pass = e.z <= tol;
  return e;
}

}  // namespace

Comparison compare(const Distribution& exact, const Empirical& empirical, double tolerance_sigmas, bool strict) {
  if (strict && !exact.unresolved.is_zero()) {
    throw UnresolvedMass("exact distribution leaves " + exact.unresolved.to_string() + " unresolved");
  }
  if (empirical.samples == 0) throw std::invalid_argument("empty sample");
  Comparison cmp;
  std::set<CanonicalCapsule> keys;
  for (const auto& [k, p] : exact.outcomes) keys.insert(k);
  for (const auto& [k, n] : empirical.counts) keys.insert(k);
  for (const auto& k : keys) {
    auto pe = exact.outcomes.find(k);
    auto ce = empirical.counts.find(k);
    double p = pe == exact.outcomes.end() ? 0.0 : pe->second.to_double();
    std::uint64_t hits = ce == empirical.counts.end() ? 0 : ce->second;
    cmp.entries.push_back(score(k.key(), p, hits, empirical.samples, tolerance_sigmas));
  }
  if (empirical.diverged != 0 || !exact.unresolved.is_zero()) {
    cmp.entries.push_back(
        score("diverged", exact.unresolved.to_double(), empirical.diverged, empirical.samples, tolerance_sigmas));
  }
  for (const auto& e : cmp.entries) cmp.max_z = std::max(cmp.max_z, e.z);
  return cmp;
}

}  // namespace stochalc
