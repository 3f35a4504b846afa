#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stochalc/coins.hpp"
#include "stochalc/denot.hpp"
#include "stochalc/dist.hpp"
#include "stochalc/engeler.hpp"
#include "stochalc/opsem.hpp"

// Corpus-wide kernels in two flavours: a plain loop and an OpenMP loop. Work
// items are independent and their results are merged in item order, so both
// flavours return identical results.
namespace stochalc::par {

enum class Exec { Serial, Parallel };

// Number of OpenMP threads a parallel kernel will use.
int threads();

// Coin seed of run j of capsule i is seeds[i * per_capsule + j].
std::vector<std::uint64_t> run_seeds(std::uint64_t base, std::size_t capsules, std::size_t per_capsule);

struct EquivalenceTally {
  std::uint64_t runs = 0;
  std::uint64_t values = 0;  // big-step terminated
  std::uint64_t diverged = 0;
  std::uint64_t fuel_exhausted = 0;
  std::uint64_t agreed = 0;
  std::uint64_t duplicates = 0;
  std::vector<std::string> failures;  // the first few, in item order
  [[nodiscard]] bool pass() const { return runs > 0 && agreed == runs && duplicates == 0; }
};

EquivalenceTally tree_equivalence(const std::vector<Capsule>& corpus, std::size_t per_capsule, std::uint64_t base_seed,
                                  Fuel fuel, Split split, Exec exec);

struct AdequacyTally {
  std::uint64_t runs = 0;
  std::uint64_t values = 0;      // big-step value and dsem closure
  std::uint64_t bottoms = 0;     // neither, without running out of fuel
  std::uint64_t fuel_cases = 0;  // either side ran out of fuel; reported only
  std::uint64_t definedness_failures = 0;
  std::uint64_t soundness_failures = 0;
  std::uint64_t coin_mismatches = 0;  // dsem and big-step consumed different coins
  std::uint64_t duplicates = 0;
  std::vector<std::string> failures;
  [[nodiscard]] bool pass() const {
    return runs > 0 && definedness_failures == 0 && soundness_failures == 0 && duplicates == 0;
  }
};

AdequacyTally adequacy(const std::vector<Capsule>& corpus, std::size_t per_capsule, std::uint64_t base_seed, Fuel fuel,
                       Fuel probe_fuel, unsigned probe_depth, Split split, Exec exec);

// Over the words x in parallel.
MeasureReport verify_measure(const TossingProcess& t, std::size_t max_len, std::size_t input_depth, Exec exec);

// The restricted-argument families plus the full-universe prefix-0 family.
FunLamReport funlam(std::size_t max_prefix, std::size_t max_args, Exec exec);

Empirical sample_distribution(const Capsule& c, std::uint64_t n, std::uint64_t seed, Fuel fuel, Split split,
                              Exec exec);

}  // namespace stochalc::par
