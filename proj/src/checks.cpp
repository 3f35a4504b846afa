#include "stochalc/checks.hpp"

#include <chrono>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "stochalc/corpus.hpp"
#include "stochalc/treeproc.hpp"

namespace stochalc::checks {

namespace {

class Stopwatch {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CheckResult make_result(std::string id, std::string name) {
  CheckResult r;
  r.id = std::move(id);
  r.name = std::move(name);
  return r;
}

Json strings(const std::vector<std::string>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s);
  return out;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

TreeLabeling labeling(const std::function<std::uint64_t(const Word&)>& f) {
  std::map<Word, std::uint64_t> table;
  for (const Word& w : words_up_to(8)) table[w] = f(w);
  return TreeLabeling::table(std::move(table));
}

std::uint64_t max_label(const TreeLabeling& t) {
  std::uint64_t m = 0;
  for (const auto& [w, l] : *t.entries()) m = std::max(m, l);
  return m;
}

std::vector<CoinIndex> unconsumed_near(const std::vector<CoinIndex>& consumed, std::size_t k) {
  std::set<CoinIndex> used(consumed.begin(), consumed.end());
  std::vector<CoinIndex> out;
  for (const CoinIndex& i : consumed) {
    for (const CoinIndex& j : {CoinIndex(i + 1), CoinIndex(i * 3 + 1), CoinIndex(i * 3 + 2)}) {
      if (out.size() < k && !used.contains(j) && std::find(out.begin(), out.end(), j) == out.end()) out.push_back(j);
    }
  }
  return out;
}

// Flip sets that avoid every consumed index: the lowest free indices, the
// ones right after the last consumed, some near consumed ones and a random
// draw below twice the largest consumed index.
std::vector<std::set<CoinIndex>> flip_sets(const std::vector<CoinIndex>& consumed, std::uint64_t seed) {
  std::set<CoinIndex> used(consumed.begin(), consumed.end());
  CoinIndex top = used.empty() ? CoinIndex(0) : *used.rbegin();
  std::vector<std::set<CoinIndex>> out;

  std::set<CoinIndex> low;
  for (CoinIndex k = 0; low.size() < 3; ++k) {
    if (!used.contains(k)) low.insert(k);
  }
  out.push_back(low);
  out.push_back({top + 1, top + 2, top + 3});
  auto near = unconsumed_near(consumed, 3);
  if (near.size() == 3) out.emplace_back(near.begin(), near.end());

  std::mt19937_64 rng(seed);
  std::uint64_t range = used.empty() || top > 1000000 ? 64 : top.convert_to<std::uint64_t>() * 2 + 64;
  std::set<CoinIndex> rnd;
  while (rnd.size() < 3) {
    CoinIndex k = rng() % range;
    if (!used.contains(k)) rnd.insert(k);
  }
  out.push_back(rnd);
  return out;
}

}  // namespace

Json to_json(const CheckResult& r, bool timing) {
  Json j{{"id", r.id}, {"name", r.name}, {"pass", r.pass()}, {"property", r.property}};
  if (timing) {
    j["seconds"] = r.seconds;
    j["limit"] = r.limit;
  }
  j["summary"] = r.summary;
  j["details"] = r.details;
  return j;
}

std::size_t builtin_input_depth(const std::string& name) {
  static const std::map<std::string, std::size_t> depth{{"tl", 9},     {"evens", 15}, {"odds", 16},
                                                        {"proj0", 22}, {"proj1", 23}, {"proj2", 24}};
  return depth.at(name);
}

std::vector<std::pair<std::string, TreeLabeling>> fixed_trees() {
  std::vector<std::pair<std::string, TreeLabeling>> out;
  out.emplace_back("tree:depth", labeling([](const Word& w) { return w.size(); }));
  out.emplace_back("tree:reversed", labeling([](const Word& w) { return 8 - w.size(); }));
  out.emplace_back("tree:last-bit", labeling([](const Word& w) -> std::uint64_t {
                     return w.empty() ? 0 : 2 * w.size() + (w.back() == '1');
                   }));
  out.emplace_back("tree:first-bit", labeling([](const Word& w) -> std::uint64_t {
                     return w.empty() ? 0 : w.size() + (w[0] == '1' ? 9 : 0);
                   }));
  out.emplace_back("tree:mod11", labeling([](const Word& w) -> std::uint64_t {
                     return w.empty() ? 0 : (w[0] == '0' ? 5 * w.size() : 7 * w.size()) % 11;
                   }));
  return out;
}

std::vector<Capsule> corpus(const CheckConfig& cfg) {
  CorpusSpec spec;
  spec.seed = cfg.corpus_seed;
  spec.count = cfg.count;
  return generate_corpus(spec);
}

CheckResult measure(const CheckConfig& cfg) {
  Stopwatch clock;
  CheckResult r = make_result("1", "measure preservation");
  r.limit = 10;
  r.property = true;
  std::size_t words = 0;
  std::vector<std::string> failed;
  auto record = [&](const MeasureReport& m) {
    words += m.entries.size();
    r.details[m.process] = m.pass();
    if (!m.pass()) {
      r.property = false;
      failed.push_back(m.process);
    }
  };
  for (const auto& name : builtin_names()) {
    record(par::verify_measure(builtin(name), 8, builtin_input_depth(name), cfg.exec));
  }
  for (const auto& [name, t] : fixed_trees()) {
    record(par::verify_measure(tree_process(t, name), 8, max_label(t) + 1, cfg.exec));
  }
  r.seconds = clock.seconds();
  r.summary = std::to_string(r.details.size()) + " processes, " + std::to_string(words) + " words x";
  if (!failed.empty()) r.summary += "; failed: " + strings(failed).dump();
  return r;
}

CheckResult tree_equivalence(const CheckConfig& cfg, const std::vector<Capsule>& corpus,
                             par::EquivalenceTally* tally) {
  Stopwatch clock;
  CheckResult r = make_result("2", "tree-process equivalence");
  r.limit = 120;
  par::EquivalenceTally t = par::tree_equivalence(corpus, cfg.coin_seeds, cfg.base_seed, cfg.fuel, cfg.split, cfg.exec);
  r.seconds = clock.seconds();
  r.property = t.runs > 0 && t.agreed == t.runs;
  r.summary = std::to_string(t.agreed) + "/" + std::to_string(t.runs) + " agree (" + std::to_string(t.values) +
              " values, " + std::to_string(t.fuel_exhausted) + " out of fuel)";
  r.details = Json{{"runs", t.runs},
                   {"values", t.values},
                   {"diverged", t.diverged},
                   {"fuel_exhausted", t.fuel_exhausted},
                   {"agreed", t.agreed},
                   {"duplicates", t.duplicates},
                   {"failures", strings(t.failures)}};
  if (tally != nullptr) *tally = std::move(t);
  return r;
}

CheckResult adequacy(const CheckConfig& cfg, const std::vector<Capsule>& corpus, par::AdequacyTally* tally) {
  Stopwatch clock;
  CheckResult r = make_result("3", "adequacy and soundness");
  r.limit = 180;
  par::AdequacyTally t = par::adequacy(corpus, cfg.coin_seeds, cfg.base_seed, cfg.fuel, cfg.probe_fuel,
                                       cfg.probe_depth, cfg.split, cfg.exec);
  r.seconds = clock.seconds();
  r.property = t.runs > 0 && t.definedness_failures == 0 && t.soundness_failures == 0;
  std::uint64_t checked = t.runs - t.fuel_cases;
  r.summary = std::to_string(checked - t.definedness_failures - t.soundness_failures) + "/" +
              std::to_string(checked) + " terminating runs agree (" + std::to_string(t.fuel_cases) +
              " fuel cases reported)";
  r.details = Json{{"runs", t.runs},
                   {"values", t.values},
                   {"bottoms", t.bottoms},
                   {"fuel_cases", t.fuel_cases},
                   {"definedness_failures", t.definedness_failures},
                   {"soundness_failures", t.soundness_failures},
                   {"coin_mismatches", t.coin_mismatches},
                   {"duplicates", t.duplicates},
                   {"failures", strings(t.failures)}};
  if (tally != nullptr) *tally = std::move(t);
  return r;
}

CheckResult funlam(const CheckConfig& cfg) {
  Stopwatch clock;
  CheckResult r = make_result("4", "fun after lam is the identity");
  r.limit = 30;
  FunLamReport slices = par::funlam(2, 3, cfg.exec);
  FunLamReport tables = funlam_random_tables(200, cfg.base_seed, 2);
  bool bottom_ok = true;
  for (std::size_t p = 0; p <= 2; ++p) {
    TokenSet l = engeler_lam(FiniteFun::bottom(p), 2, finite_universe());
    bottom_ok = bottom_ok && l == TokenSet{Token::empty()} && !l.empty();
  }
  r.seconds = clock.seconds();
  r.property = slices.pass() && tables.pass() && bottom_ok;
  r.summary = std::to_string(slices.tables) + " slice tables, " + std::to_string(tables.tables) +
              " whole tables, lam(bottom) = {empty}: " + (bottom_ok ? "yes" : "no");
  r.details = Json{{"slice_tables", slices.tables},       {"slice_points", slices.points},
                   {"slice_failures", slices.failures},   {"table_count", tables.tables},
                   {"table_failures", tables.failures},   {"lam_bottom", bottom_ok},
                   {"first_failure", slices.first_failure + tables.first_failure}};
  return r;
}

CheckResult linearity(const par::EquivalenceTally& eq, const par::AdequacyTally& ad) {
  CheckResult r = make_result("5", "linearity of coin use");
  r.property = eq.runs > 0 && ad.runs > 0 && eq.duplicates == 0 && ad.duplicates == 0;
  r.summary = std::to_string(eq.duplicates + ad.duplicates) + " duplicate coin reads over " +
              std::to_string(eq.runs + ad.runs) + " corpus runs";
  r.details = Json{{"equivalence_runs", eq.runs},
                   {"equivalence_duplicates", eq.duplicates},
                   {"adequacy_runs", ad.runs},
                   {"adequacy_duplicates", ad.duplicates}};
  return r;
}

CheckResult prefix_dependence(const CheckConfig& cfg, const std::vector<Capsule>& corpus) {
  Stopwatch clock;
  CheckResult r = make_result("6", "prefix dependence");
  std::vector<std::uint64_t> seeds = par::run_seeds(cfg.base_seed, corpus.size(), cfg.coin_seeds);
  std::uint64_t runs = 0;
  std::uint64_t flips = 0;
  std::vector<std::string> failures;
  for (std::size_t k = 0; k < seeds.size() && runs < cfg.flip_runs; ++k) {
    const Capsule& c = corpus[k / cfg.coin_seeds];
    CoinGenerator g = CoinGenerator::seeded(seeds[k]);
    CoinSource a(g);
    Outcome big = big_step(c, a, cfg.fuel, cfg.split);
    if (!big.is_value()) continue;
    CoinSource s(g);
    Outcome small = reduce(c, s, cfg.fuel);
    ++runs;

    std::vector<std::set<CoinIndex>> sets = flip_sets(big.consumed, seeds[k]);
    for (const auto& f : sets) {
      CoinSource b(g.with_flips(f));
      ++flips;
      if (!same_outcome(big_step(c, b, cfg.fuel, cfg.split), big) && failures.size() < 10) {
        failures.push_back("big-step, capsule " + std::to_string(k / cfg.coin_seeds) + " seed " +
                           std::to_string(seeds[k]));
      }
    }
    for (const auto& f : flip_sets(small.consumed, seeds[k] + 1)) {
      CoinSource b(g.with_flips(f));
      ++flips;
      if (!same_outcome(reduce(c, b, cfg.fuel), small) && failures.size() < 10) {
        failures.push_back("small-step, capsule " + std::to_string(k / cfg.coin_seeds) + " seed " +
                           std::to_string(seeds[k]));
      }
    }
  }
  r.seconds = clock.seconds();
  r.property = runs == cfg.flip_runs && failures.empty();
  r.summary = std::to_string(runs) + " terminating runs, " + std::to_string(flips) + " flip sets of 3, " +
              std::to_string(failures.size()) + " changed outcomes";
  r.details = Json{{"runs", runs}, {"flip_sets", flips}, {"failures", strings(failures)}};
  return r;
}

CheckResult worked_examples(const CheckConfig& cfg, const std::vector<Capsule>& corpus) {
  Stopwatch clock;
  CheckResult r = make_result("7", "worked examples");
  r.property = true;
  auto expect = [&](const std::string& what, bool ok) {
    r.details[what] = ok;
    r.property = r.property && ok;
  };

  Capsule omega{parse("(\\x. x x) (\\x. x x)"), {}};
  {
    CoinSource a(CoinGenerator::constant(false));
    Outcome o = big_step(omega, a, cfg.fuel, cfg.split);
    expect("omega diverges under big-step", !o.is_value() && o.fuel_exhausted);
    CoinSource s(CoinGenerator::constant(false));
    Outcome p = reduce(omega, s, cfg.fuel);
    expect("omega diverges under small-step", !p.is_value() && p.fuel_exhausted);
    CoinSource d(CoinGenerator::constant(false));
    expect("dsem(omega) is bottom", dsem(omega, d, cfg.fuel, cfg.split).value.is_bottom());
    CoinSource e(CoinGenerator::constant(false));
    expect("dsem(\\x.x x) is not bottom",
           !dsem(Capsule{parse("\\x. x x"), {}}, e, cfg.fuel, cfg.split).value.is_bottom());
  }
  {
    Env abc;
    abc = abc.insert("A", parse("\\p.p")).insert("B", parse("\\p.\\q.p")).insert("C", parse("\\p.\\q.q"));
    Distribution d = exact_distribution({parse("(A (+) B) (+) C"), abc}, 8, cfg.dist_fuel);
    auto mass = [&](const char* v) {
      auto it = d.outcomes.find(canonicalize({parse(v), {}}));
      return it == d.outcomes.end() ? Dyadic::zero() : it->second;
    };
    expect("exact (A (+) B) (+) C is 1/4, 1/4, 1/2",
           d.outcomes.size() == 3 && d.unresolved.is_zero() && mass("\\p.p") == Dyadic::pow2_neg(2) &&
               mass("\\p.\\q.p") == Dyadic::pow2_neg(2) && mass("\\p.\\q.q") == Dyadic::pow2_neg(1));
  }

  // Corpus programs whose exact distribution is complete and not a point mass.
  Json programs = Json::array();
  double max_z = 0;
  std::size_t agreed = 0;
  for (std::size_t i = 0; i < corpus.size() && programs.size() < cfg.programs; ++i) {
    Distribution d = exact_distribution(corpus[i], cfg.coin_depth, cfg.dist_fuel);
    if (!d.unresolved.is_zero() || d.outcomes.size() < 2) continue;
    Empirical e = par::sample_distribution(corpus[i], cfg.samples, cfg.base_seed + i, cfg.fuel, cfg.split, cfg.exec);
    Comparison cmp = compare(d, e, cfg.sigmas);
    max_z = std::max(max_z, cmp.max_z);
    if (cmp.pass()) ++agreed;
    programs.push_back(Json{{"capsule", i}, {"outcomes", d.outcomes.size()}, {"max_z", cmp.max_z}, {"pass", cmp.pass()}});
  }
  expect("sampled programs agree within tolerance", programs.size() == cfg.programs && agreed == programs.size());
  r.details["programs"] = programs;
  r.seconds = clock.seconds();
  std::size_t failed = 0;
  for (const auto& [k, v] : r.details.items()) {
    if (v.is_boolean() && !v.get<bool>()) ++failed;
  }
  r.summary = "Omega, self-application and the three-way choice " +
              std::string(failed == 0 ? "as expected" : "NOT as expected") + "; " + std::to_string(agreed) + "/" +
              std::to_string(programs.size()) + " programs within " + fmt(cfg.sigmas) + " sigma (max z " +
              fmt(max_z) + ")";
  return r;
}

std::vector<CheckResult> check_all(const CheckConfig& cfg) {
  std::vector<CheckResult> out;
  std::vector<Capsule> c = corpus(cfg);
  par::EquivalenceTally eq;
  par::AdequacyTally ad;
  out.push_back(measure(cfg));
  out.push_back(tree_equivalence(cfg, c, &eq));
  out.push_back(adequacy(cfg, c, &ad));
  out.push_back(funlam(cfg));
  out.push_back(linearity(eq, ad));
  out.push_back(prefix_dependence(cfg, c));
  out.push_back(worked_examples(cfg, c));
  return out;
}

}  // namespace stochalc::checks
