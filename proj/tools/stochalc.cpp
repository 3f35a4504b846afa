#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "stochalc/checks.hpp"
#include "stochalc/church.hpp"
#include "stochalc/corpus.hpp"
#include "stochalc/io.hpp"
#include "stochalc/treeproc.hpp"

using namespace stochalc;

namespace {

constexpr int kUsage = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::uint64_t default_seed(std::uint64_t fallback) {
  const char* env = std::getenv("STOCHALC_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    std::size_t used = 0;
    std::uint64_t s = std::stoull(env, &used);
    if (env[used] != '\0') throw std::invalid_argument(env);
    return s;
  } catch (const std::exception&) {
    throw UsageError(std::string("STOCHALC_SEED is not a number: ") + env);
  }
}

struct Input {
  std::string file;
  std::string expr;

  void add(CLI::App* app) {
    auto* f = app->add_option("--term", file, "program file (.json capsule or program text)");
    auto* e = app->add_option("-e,--expr", expr, "program text");
    f->excludes(e);
  }

  [[nodiscard]] Capsule load() const {
    if (!file.empty()) return load_capsule(file);
    if (!expr.empty()) return parse_program(expr);
    throw UsageError("give a program with --term FILE or -e EXPR");
  }
};

struct Common {
  std::uint64_t fuel = Fuel{}.max_steps;
  std::string split = "adequacy";
  bool json = false;

  [[nodiscard]] Split split_kind() const { return parse_split(split); }
};

void add_fuel(CLI::App* app, Common& c) {
  app->add_option("--fuel", c.fuel, "bound on rule applications")->capture_default_str();
}

void add_split(CLI::App* app, Common& c) {
  app->add_option("--split", c.split, "coin split of applications")
      ->check(CLI::IsMember({"adequacy", "bigstep-literal"}))
      ->capture_default_str();
}

CoinGenerator coins_or_default(const std::string& spec) {
  if (!spec.empty()) return CoinGenerator::parse(spec);
  return CoinGenerator::seeded(default_seed(0));
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string value_line(const Outcome& o) {
  std::string out = describe(o);
  if (o.is_value()) {
    if (auto v = decode_church(*o.canonical)) out += "  [" + to_string(*v) + "]";
  }
  return out;
}

int report(const std::vector<checks::CheckResult>& results, bool timing) {
  bool ok = true;
  Json out = Json::array();
  for (const auto& r : results) {
    out.push_back(checks::to_json(r, timing));
    ok = ok && r.pass();
  }
  print(results.size() == 1 ? out[0] : Json{{"pass", ok}, {"checks", out}});
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Call-by-value lambda calculus with fair coin choice"};
  app.require_subcommand(1);
  Common common;
  Input input;
  std::string coins;

  auto* run = app.add_subcommand("run", "evaluate a program");
  input.add(run);
  std::string semantics = "big";
  run->add_option("--coins", coins, "seed:<u64> | word:<bits>[+zeros] | zeros | ones");
  run->add_option("--semantics", semantics)->check(CLI::IsMember({"big", "small"}))->capture_default_str();
  add_fuel(run, common);
  add_split(run, common);
  run->add_flag("--json", common.json);

  auto* tr = app.add_subcommand("trace", "log every small-step rule as one JSON line");
  input.add(tr);
  tr->add_option("--coins", coins);
  add_fuel(tr, common);

  auto* den = app.add_subcommand("denot", "denotation: bottom or a closure with probe fingerprints");
  input.add(den);
  unsigned depth = 2;
  den->add_option("--coins", coins);
  den->add_option("--depth", depth, "probe depth")->capture_default_str();
  add_fuel(den, common);
  add_split(den, common);
  den->add_flag("--json", common.json);

  auto* dist = app.add_subcommand("dist", "exact output distribution, optionally against samples");
  input.add(dist);
  std::size_t coin_depth = 16;
  std::uint64_t samples = 0;
  std::optional<std::uint64_t> seed;
  bool serial = false;
  dist->add_option("--coin-depth", coin_depth)->capture_default_str();
  dist->add_option("--samples", samples, "big-step samples to compare with")->capture_default_str();
  dist->add_option("--seed", seed, "sampling seed (default STOCHALC_SEED or 0)");
  double sigmas = 4.0;
  dist->add_option("--tolerance", sigmas, "allowed deviation in standard errors")->capture_default_str();
  add_fuel(dist, common);
  add_split(dist, common);
  dist->add_flag("--serial", serial, "sample without OpenMP");
  dist->add_flag("--json", common.json);

  auto* gen = app.add_subcommand("gen", "write a random corpus as JSON");
  CorpusSpec spec;
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("--seed", gen_seed, "corpus seed (default STOCHALC_SEED or 1)");
  gen->add_option("--count", spec.count)->capture_default_str();
  gen->add_option("--depth", spec.max_term_depth, "maximum term depth")->capture_default_str();
  gen->add_option("--choice-weight", spec.choice_weight)->capture_default_str();
  gen->add_option("--pool", spec.pool, "environment bindings per capsule")->capture_default_str();

  auto* check = app.add_subcommand("check", "property checks; exit 1 on failure");
  check->require_subcommand(1);
  checks::CheckConfig cfg;
  std::string corpus_file;
  std::optional<std::uint64_t> check_seed;
  bool timing = false;
  auto add_check_common = [&](CLI::App* c) {
    c->add_flag("--serial", serial, "run without OpenMP");
    c->add_flag("--timing", timing, "include run times and limits in the report");
  };
  auto add_corpus = [&](CLI::App* c) {
    c->add_option("--corpus", corpus_file, "corpus JSON (default: generated)");
    c->add_option("--corpus-seed", cfg.corpus_seed)->capture_default_str();
    c->add_option("--count", cfg.count, "generated corpus size")->capture_default_str();
    c->add_option("--samples", cfg.coin_seeds, "coin seeds per capsule")->capture_default_str();
    c->add_option("--seed", check_seed, "base coin seed (default STOCHALC_SEED or 2024)");
    c->add_option("--fuel", cfg.fuel.max_steps)->capture_default_str();
    c->add_option("--split", common.split)->check(CLI::IsMember({"adequacy", "bigstep-literal"}));
  };

  auto* c_measure = check->add_subcommand("measure", "measure preservation of tossing processes");
  std::string process;
  std::string labeling_file;
  std::size_t max_len = 8;
  std::optional<std::size_t> input_depth;
  c_measure->add_option("--process", process, "tl, evens, odds, proj0, proj1 or proj2");
  c_measure->add_option("--labeling", labeling_file, "tree labeling JSON");
  c_measure->add_option("--max-len", max_len)->capture_default_str();
  c_measure->add_option("--input-depth", input_depth);
  add_check_common(c_measure);

  auto* c_equiv = check->add_subcommand("tree-equiv", "big-step against the capsule tree process");
  add_corpus(c_equiv);
  add_check_common(c_equiv);

  auto* c_adeq = check->add_subcommand("adequacy", "denotational against operational semantics");
  add_corpus(c_adeq);
  c_adeq->add_option("--probe-fuel", cfg.probe_fuel.max_steps)->capture_default_str();
  c_adeq->add_option("--depth", cfg.probe_depth, "probe depth")->capture_default_str();
  add_check_common(c_adeq);

  auto* c_funlam = check->add_subcommand("funlam", "fun after lam on finite functions");
  std::size_t max_prefix = 2;
  unsigned max_rank = 2;
  std::size_t max_args = 3;
  c_funlam->add_option("--max-prefix", max_prefix)->check(CLI::Range(0, 2))->capture_default_str();
  c_funlam->add_option("--max-rank", max_rank)->check(CLI::Range(2, 2))->capture_default_str();
  c_funlam->add_option("--max-args", max_args, "tokens a slice may read")->check(CLI::Range(1, 6))
      ->capture_default_str();
  add_check_common(c_funlam);

  auto* c_all = check->add_subcommand("all", "the whole acceptance suite");
  add_corpus(c_all);
  add_check_common(c_all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*run) {
      Capsule c = input.load();
      CoinSource src(coins_or_default(coins));
      bool small = semantics == "small";
      Outcome o = small ? reduce(c, src, Fuel{common.fuel}) : big_step(c, src, Fuel{common.fuel}, common.split_kind());
      if (common.json) {
        print(outcome_to_json(o, small));
      } else {
        std::cout << value_line(o) << "\n";
      }
      return 0;
    }
    if (*tr) {
      Capsule c = input.load();
      CoinSource src(coins_or_default(coins));
      Trace t = trace(c, src, Fuel{common.fuel});
      for (const auto& e : t.entries) {
        Json line{{"rule", e.rule}};
        if (e.bit) line["bit"] = *e.bit ? 1 : 0;
        line["capsule"] = e.capsule;
        std::cout << line.dump() << "\n";
      }
      Json end = outcome_to_json(t.outcome, true);
      if (!t.outcome.is_value() && t.outcome.fuel_exhausted) end["outcome"] = "fuel-exhausted";
      std::cout << end.dump() << "\n";
      return 0;
    }
    if (*den) {
      Capsule c = input.load();
      CoinSource src(coins_or_default(coins));
      DenotResult d = dsem(c, src, Fuel{common.fuel}, common.split_kind());
      std::string fp = fingerprint(d.value, depth, default_probes(), Fuel{common.fuel}, common.split_kind());
      if (common.json) {
        Json j{{"denotation", d.value.is_bottom() ? "bottom" : "closure"},
               {"fingerprint", fp},
               {"fuel_exhausted", d.fuel_exhausted},
               {"steps", d.steps}};
        print(j);
      } else {
        std::cout << fp << "\n";
      }
      return 0;
    }
    if (*dist) {
      Capsule c = input.load();
      Distribution d = exact_distribution(c, coin_depth, Fuel{common.fuel});
      std::optional<Empirical> e;
      std::optional<Comparison> cmp;
      if (samples > 0) {
        e = par::sample_distribution(c, samples, seed ? *seed : default_seed(0), Fuel{common.fuel},
                                     common.split_kind(), serial ? par::Exec::Serial : par::Exec::Parallel);
        cmp = compare(d, *e, sigmas, false);
      }
      if (common.json) {
        Json j = distribution_to_json(d, e ? &*e : nullptr);
        if (cmp) j["max_z"] = cmp->max_z, j["agree"] = cmp->pass();
        print(j);
      } else {
        for (const auto& [k, p] : d.outcomes) {
          std::cout << p.to_string() << "\t" << k.key();
          if (e) {
            auto it = e->counts.find(k);
            std::cout << "\t" << (it == e->counts.end() ? 0 : it->second) << "/" << e->samples;
          }
          std::cout << "\n";
        }
        std::cout << d.unresolved.to_string() << "\tunresolved";
        if (e) std::cout << "\t" << e->diverged << "/" << e->samples << " diverged";
        std::cout << "\n";
        if (cmp) std::cout << "max z " << cmp->max_z << (cmp->pass() ? " (agree)" : " (disagree)") << "\n";
      }
      return 0;
    }
    if (*gen) {
      spec.seed = gen_seed ? *gen_seed : default_seed(1);
      print(corpus_to_json(generate_corpus(spec)));
      return 0;
    }

    cfg.exec = serial ? par::Exec::Serial : par::Exec::Parallel;
    cfg.split = parse_split(common.split);
    cfg.base_seed = check_seed ? *check_seed : default_seed(cfg.base_seed);
    auto corpus = [&] { return corpus_file.empty() ? checks::corpus(cfg) : load_corpus(corpus_file); };

    if (*c_measure) {
      if (process.empty() && labeling_file.empty()) return report({checks::measure(cfg)}, timing);
      MeasureReport m;
      if (!process.empty()) {
        if (!labeling_file.empty()) throw UsageError("give either --process or --labeling");
        std::size_t d = input_depth ? *input_depth : (max_len == 8 ? checks::builtin_input_depth(process) : 0);
        if (d == 0) throw UsageError("--input-depth is required when --max-len is not 8");
        m = par::verify_measure(builtin(process), max_len, d, cfg.exec);
      } else {
        TreeLabeling t = labeling_from_json(Json::parse(read_file(labeling_file)));
        m = input_depth ? par::verify_measure(tree_process(t), max_len, *input_depth, cfg.exec)
                        : verify_tree_measure(t, max_len);
      }
      print(Json{{"process", m.process}, {"pass", m.pass()}, {"words", measure_report_to_json(m)}});
      return m.pass() ? 0 : 1;
    }
    if (*c_equiv) return report({checks::tree_equivalence(cfg, corpus())}, timing);
    if (*c_adeq) return report({checks::adequacy(cfg, corpus())}, timing);
    if (*c_funlam) {
      if (max_prefix == 2 && max_args == 3) return report({checks::funlam(cfg)}, timing);
      FunLamReport r = par::funlam(max_prefix, max_args, cfg.exec);
      print(Json{{"pass", r.pass()}, {"tables", r.tables}, {"points", r.points}, {"failures", r.failures},
                 {"first_failure", r.first_failure}});
      return r.pass() ? 0 : 1;
    }
    if (*c_all) {
      if (!corpus_file.empty()) throw UsageError("check all always uses the generated corpus");
      return report(checks::check_all(cfg), timing);
    }
  } catch (const std::exception& e) {
    // Bad input: unreadable files, syntax errors, ill-formed capsules.
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
