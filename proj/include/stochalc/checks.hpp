#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stochalc/io.hpp"
#include "stochalc/parallel.hpp"

// The property checks behind `stochalc check` and the acceptance binary.
namespace stochalc::checks {

struct CheckConfig {
  std::uint64_t corpus_seed = 1;
  std::size_t count = 1000;
  std::size_t coin_seeds = 5;
  std::uint64_t base_seed = 2024;
  Fuel fuel{50000};
  Fuel probe_fuel{5000};
  unsigned probe_depth = 2;
  Split split = Split::Adequacy;
  par::Exec exec = par::Exec::Parallel;
  std::size_t flip_runs = 200;
  std::size_t programs = 20;
  std::uint64_t samples = 10000;
  double sigmas = 4.0;
  // Exact enumeration bounds for the sampled programs.
  std::size_t coin_depth = 16;
  Fuel dist_fuel{5000};
};

struct CheckResult {
  std::string id;
  std::string name;
  bool property = false;  // the checked property held
  double seconds = 0;
  double limit = 0;  // seconds; 0 means no limit
  std::string summary;
  Json details = Json::object();

  [[nodiscard]] bool within_limit() const { return limit <= 0 || seconds < limit; }
  [[nodiscard]] bool pass() const { return property && within_limit(); }
};

// Without timing the report is identical from run to run.
Json to_json(const CheckResult& r, bool timing = true);

// Input depth that suffices for each builtin at output length 8.
std::size_t builtin_input_depth(const std::string& name);

// Five finite tree processes on nodes of length <= 8.
std::vector<std::pair<std::string, TreeLabeling>> fixed_trees();

std::vector<Capsule> corpus(const CheckConfig& cfg);

CheckResult measure(const CheckConfig& cfg);
CheckResult tree_equivalence(const CheckConfig& cfg, const std::vector<Capsule>& corpus,
                             par::EquivalenceTally* tally = nullptr);
CheckResult adequacy(const CheckConfig& cfg, const std::vector<Capsule>& corpus,
                     par::AdequacyTally* tally = nullptr);
CheckResult funlam(const CheckConfig& cfg);
CheckResult linearity(const par::EquivalenceTally& eq, const par::AdequacyTally& ad);
CheckResult prefix_dependence(const CheckConfig& cfg, const std::vector<Capsule>& corpus);
CheckResult worked_examples(const CheckConfig& cfg, const std::vector<Capsule>& corpus);

// All seven, in order; the corpus runs are shared with the linearity check.
std::vector<CheckResult> check_all(const CheckConfig& cfg);

}  // namespace stochalc::checks
