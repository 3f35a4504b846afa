#include <doctest.h>

#include <set>

#include "stochalc/checks.hpp"
#include "stochalc/corpus.hpp"
#include "stochalc/parallel.hpp"

using namespace stochalc;

namespace {

std::vector<Capsule> small_corpus() {
  CorpusSpec spec;
  spec.seed = 5;
  spec.count = 60;
  return generate_corpus(spec);
}

bool same(const MeasureReport& a, const MeasureReport& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].x != b.entries[i].x || a.entries[i].sum != b.entries[i].sum) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("serial and parallel kernels agree") {
  auto corpus = small_corpus();
  auto es = par::tree_equivalence(corpus, 2, 9, Fuel{3000}, Split::Adequacy, par::Exec::Serial);
  auto ep = par::tree_equivalence(corpus, 2, 9, Fuel{3000}, Split::Adequacy, par::Exec::Parallel);
  CHECK(es.pass());
  CHECK(es.runs == ep.runs);
  CHECK(es.values == ep.values);
  CHECK(es.fuel_exhausted == ep.fuel_exhausted);
  CHECK(es.failures == ep.failures);

  auto as = par::adequacy(corpus, 2, 9, Fuel{3000}, Fuel{1000}, 2, Split::Adequacy, par::Exec::Serial);
  auto ap = par::adequacy(corpus, 2, 9, Fuel{3000}, Fuel{1000}, 2, Split::Adequacy, par::Exec::Parallel);
  CHECK(as.pass());
  CHECK(as.values == ap.values);
  CHECK(as.bottoms == ap.bottoms);
  CHECK(as.fuel_cases == ap.fuel_cases);

  CHECK(same(par::verify_measure(builtin("odds"), 6, 14, par::Exec::Serial),
             par::verify_measure(builtin("odds"), 6, 14, par::Exec::Parallel)));
  CHECK(same(par::verify_measure(builtin("odds"), 6, 14, par::Exec::Serial), verify_measure(builtin("odds"), 6, 14)));

  FunLamReport fs = par::funlam(1, 2, par::Exec::Serial);
  FunLamReport fp = par::funlam(1, 2, par::Exec::Parallel);
  CHECK(fs.pass());
  CHECK(fs.tables == fp.tables);
  CHECK(fs.points == fp.points);

  Capsule c = corpus[8];
  Empirical s = par::sample_distribution(c, 700, 4, Fuel{3000}, Split::Adequacy, par::Exec::Serial);
  Empirical p = par::sample_distribution(c, 700, 4, Fuel{3000}, Split::Adequacy, par::Exec::Parallel);
  Empirical plain = sample_distribution(c, 700, 4, Fuel{3000});
  CHECK(s.counts == p.counts);
  CHECK(s.counts == plain.counts);
  CHECK(s.diverged == plain.diverged);
}

TEST_CASE("checks on a small configuration") {
  checks::CheckConfig cfg;
  cfg.count = 40;
  cfg.coin_seeds = 2;
  cfg.fuel = Fuel{5000};
  cfg.probe_fuel = Fuel{1000};
  cfg.flip_runs = 30;
  cfg.programs = 3;
  cfg.samples = 2000;
  auto corpus = checks::corpus(cfg);
  par::EquivalenceTally eq;
  par::AdequacyTally ad;
  auto r2 = checks::tree_equivalence(cfg, corpus, &eq);
  auto r3 = checks::adequacy(cfg, corpus, &ad);
  CHECK(r2.pass());
  CHECK(r3.pass());
  CHECK(eq.runs == 80);
  CHECK(checks::linearity(eq, ad).pass());
  CHECK(checks::prefix_dependence(cfg, corpus).pass());
  auto r7 = checks::worked_examples(cfg, corpus);
  CHECK(r7.pass());
  CHECK(r7.details["programs"].size() == 3);

  // A run over time fails even when the property holds.
  checks::CheckResult slow = r2;
  slow.seconds = slow.limit + 1;
  CHECK_FALSE(slow.pass());
  CHECK(checks::to_json(r2, false).dump() == checks::to_json(checks::tree_equivalence(cfg, corpus), false).dump());
}

TEST_CASE("fixed trees are finite tree processes without repeated labels") {
  for (const auto& [name, t] : checks::fixed_trees()) {
    INFO(name);
    for (const Word& w : words_up_to(8)) {
      std::set<std::uint64_t> seen;
      for (std::size_t k = 0; k <= w.size(); ++k) seen.insert(t.entries()->at(w.substr(0, k)));
      CHECK(seen.size() == w.size() + 1);
    }
    CHECK(verify_tree_measure(t, 8, name).pass());
  }
}
