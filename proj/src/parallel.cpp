#include "stochalc/parallel.hpp"

#include <omp.h>

#include <optional>
#include <random>

#include "stochalc/treeproc.hpp"

namespace stochalc::par {

namespace {

constexpr std::size_t kMaxFailures = 10;

// Runs body(i) for i in [0, n) and returns the results in index order.
template <typename T, typename F>
std::vector<T> map_items(std::size_t n, Exec exec, F body) {
  std::vector<std::optional<T>> slots(n);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < n; ++i) slots[i].emplace(body(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) slots[i].emplace(body(i));
  }
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

void note(std::vector<std::string>& failures, std::string what) {
  if (failures.size() < kMaxFailures) failures.push_back(std::move(what));
}

}  // namespace

int threads() { return omp_get_max_threads(); }

std::vector<std::uint64_t> run_seeds(std::uint64_t base, std::size_t capsules, std::size_t per_capsule) {
  return sample_seeds(base, capsules * per_capsule);
}

EquivalenceTally tree_equivalence(const std::vector<Capsule>& corpus, std::size_t per_capsule, std::uint64_t base_seed,
                                  Fuel fuel, Split split, Exec exec) {
  std::vector<std::uint64_t> seeds = run_seeds(base_seed, corpus.size(), per_capsule);
  auto reports = map_items<EquivalenceReport>(seeds.size(), exec, [&](std::size_t k) {
    return check_equivalence(corpus[k / per_capsule], CoinGenerator::seeded(seeds[k]), fuel, split);
  });
  EquivalenceTally t;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    ++t.runs;
    if (r.big.is_value()) {
      ++t.values;
    } else {
      ++t.diverged;
      if (r.fuel_exhausted) ++t.fuel_exhausted;
    }
    if (r.duplicate) ++t.duplicates;
    if (r.agree) {
      ++t.agreed;
    } else {
      note(t.failures, "capsule " + std::to_string(k / per_capsule) + " seed " + std::to_string(seeds[k]) + ": " +
                           r.detail);
    }
  }
  return t;
}

namespace {

struct AdequacyRun {
  bool value = false;
  bool closure = false;
  bool fuel_case = false;
  bool sound = true;
  bool coins_match = true;
  bool duplicate = false;
};

AdequacyRun adequacy_run(const Capsule& c, std::uint64_t seed, Fuel fuel, Fuel probe_fuel, unsigned depth,
                         Split split) {
  AdequacyRun r;
  CoinGenerator g = CoinGenerator::seeded(seed);
  CoinSource d_coins(g);
  DenotResult d = dsem(c, d_coins, fuel, split);
  CoinSource b_coins(g);
  Outcome o = big_step(c, b_coins, fuel, split);
  r.value = o.is_value();
  r.closure = !d.value.is_bottom();
  r.fuel_case = o.fuel_exhausted || d.fuel_exhausted;
  r.duplicate = d_coins.duplicate() || b_coins.duplicate();
  r.coins_match = d_coins.consumed() == b_coins.consumed();
  if (r.value && r.closure) {
    // the value's denotation does not depend on its coins
    CoinSource gamma(CoinGenerator::seeded(seed ^ 0x9e3779b97f4a7c15ULL));
    DenotValue v = dsem(*o.value, gamma, fuel, split).value;
    r.sound = probe_equal(d.value, v, depth, default_probes(), probe_fuel, split);
  }
  return r;
}

}  // namespace

AdequacyTally adequacy(const std::vector<Capsule>& corpus, std::size_t per_capsule, std::uint64_t base_seed, Fuel fuel,
                       Fuel probe_fuel, unsigned probe_depth, Split split, Exec exec) {
  std::vector<std::uint64_t> seeds = run_seeds(base_seed, corpus.size(), per_capsule);
  auto runs = map_items<AdequacyRun>(seeds.size(), exec, [&](std::size_t k) {
    return adequacy_run(corpus[k / per_capsule], seeds[k], fuel, probe_fuel, probe_depth, split);
  });
  AdequacyTally t;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto& r = runs[k];
    std::string where = "capsule " + std::to_string(k / per_capsule) + " seed " + std::to_string(seeds[k]);
    ++t.runs;
    if (r.duplicate) ++t.duplicates;
    if (!r.coins_match) ++t.coin_mismatches;
    if (r.fuel_case) {
      ++t.fuel_cases;
      continue;
    }
    if (r.value != r.closure) {
      ++t.definedness_failures;
      note(t.failures, where + (r.value ? ": big-step value but dsem bottom" : ": dsem closure but no big-step value"));
      continue;
    }
    if (r.value) {
      ++t.values;
      if (!r.sound) {
        ++t.soundness_failures;
        note(t.failures, where + ": dsem differs from the denotation of the big-step value");
      }
    } else {
      ++t.bottoms;
    }
  }
  return t;
}

MeasureReport verify_measure(const TossingProcess& t, std::size_t max_len, std::size_t input_depth, Exec exec) {
  std::vector<Word> xs = words_up_to(max_len);
  auto entries = map_items<MeasureEntry>(xs.size(), exec, [&](std::size_t i) {
    Dyadic sum = prefix_code_mass(t, xs[i], input_depth);
    Dyadic expected = Dyadic::pow2_neg(xs[i].size());
    return MeasureEntry{xs[i], sum, expected, sum == expected};
  });
  return {t.name(), std::move(entries)};
}

FunLamReport funlam(std::size_t max_prefix, std::size_t max_args, Exec exec) {
  std::vector<SliceFamily> fams = slice_families(max_prefix, max_args);
  fams.push_back(full_universe_family());
  struct Chunk {
    std::size_t fam;
    std::uint64_t begin;
    std::uint64_t end;
  };
  constexpr std::uint64_t kChunk = 1U << 15;
  std::vector<Chunk> chunks;
  for (std::size_t f = 0; f < fams.size(); ++f) {
    for (std::uint64_t b = 0; b < fams[f].tables; b += kChunk) {
      chunks.push_back({f, b, std::min(fams[f].tables, b + kChunk)});
    }
  }
  auto parts = map_items<FunLamReport>(chunks.size(), exec, [&](std::size_t i) {
    FunLamReport r;
    check_slice_range(fams[chunks[i].fam], chunks[i].begin, chunks[i].end, r);
    return r;
  });
  FunLamReport out;
  for (const auto& p : parts) merge(out, p);
  return out;
}

Empirical sample_distribution(const Capsule& c, std::uint64_t n, std::uint64_t seed, Fuel fuel, Split split,
                              Exec exec) {
  std::vector<std::uint64_t> seeds = sample_seeds(seed, n);
  constexpr std::size_t kChunk = 256;
  std::size_t chunks = (seeds.size() + kChunk - 1) / kChunk;
  auto parts = map_items<Empirical>(chunks, exec, [&](std::size_t i) {
    Empirical e;
    for (std::size_t k = i * kChunk; k < std::min(seeds.size(), (i + 1) * kChunk); ++k) {
      record_sample(e, c, seeds[k], fuel, split);
    }
    return e;
  });
  Empirical out;
  for (const auto& p : parts) merge(out, p);
  return out;
}

}  // namespace stochalc::par
