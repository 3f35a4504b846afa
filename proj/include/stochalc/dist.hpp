#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "stochalc/dyadic.hpp"
#include "stochalc/opsem.hpp"

namespace stochalc {

struct Distribution {
  std::map<CanonicalCapsule, Dyadic> outcomes;
  // Paths that hit the coin-depth or fuel bound.
  Dyadic unresolved;

  [[nodiscard]] Dyadic total() const;
};

// Explores the binary tree of coin decisions made by the small-step machine;
// a path needing more than coin_depth coins is cut off as unresolved.
Distribution exact_distribution(const Capsule& c, std::size_t coin_depth, Fuel fuel);

struct Empirical {
  std::map<CanonicalCapsule, std::uint64_t> counts;
  std::uint64_t diverged = 0;
  std::uint64_t samples = 0;
};

// The coin seed of sample i; drawn serially from one generator seeded by
// `seed`, so any partition of the samples gives the same result.
std::vector<std::uint64_t> sample_seeds(std::uint64_t seed, std::uint64_t n);

// n big-step runs with independent seeded coin streams.
Empirical sample_distribution(const Capsule& c, std::uint64_t n, std::uint64_t seed, Fuel fuel,
                              Split split = Split::Adequacy);

// Adds one big-step run to an empirical tally.
void record_sample(Empirical& e, const Capsule& c, std::uint64_t coin_seed, Fuel fuel, Split split);
void merge(Empirical& into, const Empirical& from);

class UnresolvedMass : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ComparisonEntry {
  std::string outcome;  // canonical key, or "diverged"
  double expected = 0;
  double observed = 0;
  double z = 0;
  bool pass = false;
};

struct Comparison {
  std::vector<ComparisonEntry> entries;
  double max_z = 0;
  [[nodiscard]] bool pass() const;
};

// z = |p_hat - p| / sqrt(p (1 - p) / n) per outcome, over the union of exact
// and observed outcomes; diverged samples count as one more outcome whose
// expected mass is the unresolved mass. Throws UnresolvedMass when strict and
// the exact distribution is incomplete.
Comparison compare(const Distribution& exact, const Empirical& empirical, double tolerance_sigmas,
                   bool strict = true);

}  // namespace stochalc
