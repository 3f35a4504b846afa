#include "stochalc/corpus.hpp"

#include <random>
#include <string>

namespace stochalc {

namespace {

class Generator {
 public:
  Generator(const CorpusSpec& spec, std::mt19937_64& rng) : spec_(spec), rng_(rng) {}

  Capsule capsule() {
    binder_ = 0;
    Env env;
    std::vector<Var> avail;
    for (std::size_t i = 0; i < spec_.pool; ++i) {
      Var f = "f" + std::to_string(i);
      env = env.insert(f, binding(f, avail));
      avail.push_back(f);
    }
    Term t = term(spec_.max_term_depth, {}, avail);
    // Lean towards a redex at the root so most capsules do some work.
    if (coin(0.5)) t = Term::app(t, term(spec_.max_term_depth > 0 ? spec_.max_term_depth - 1 : 0, {}, avail));
    return {t, env};
  }

 private:
  const CorpusSpec& spec_;
  std::mt19937_64& rng_;
  std::size_t binder_ = 0;

  bool coin(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng_)];
  }

  Var fresh_binder() { return "x" + std::to_string(binder_++); }

  Term binding(const Var& self, const std::vector<Var>& earlier) {
    std::size_t depth = spec_.max_term_depth > 1 ? spec_.max_term_depth - 1 : 1;
    Var x = fresh_binder();
    if (spec_.choice_weight > 0 && coin(0.3)) {
      Term base = term(depth - 1, {x}, earlier);
      Term arg = term(depth - 1, {x}, earlier);
      return Term::lam(x, Term::choice(base, Term::app(Term::var(self), arg)));
    }
    return Term::lam(x, term(depth, {x}, earlier));
  }

  Term leaf(const std::vector<Var>& scope, const std::vector<Var>& avail) {
    if (!scope.empty() && (avail.empty() || coin(0.6))) return Term::var(pick(scope));
    if (!avail.empty()) return Term::var(pick(avail));
    Var x = fresh_binder();
    return Term::lam(x, Term::var(x));
  }

  Term term(std::size_t depth, std::vector<Var> scope, const std::vector<Var>& avail) {
    if (depth == 0 || coin(0.25)) return leaf(scope, avail);
    double lam_w = 1.0;
    double app_w = 1.2;
    double choice_w = spec_.choice_weight;
    double r = std::uniform_real_distribution<double>(0.0, lam_w + app_w + choice_w)(rng_);
    if (r < lam_w) {
      Var x = fresh_binder();
      scope.push_back(x);
      return Term::lam(x, term(depth - 1, scope, avail));
    }
    if (r < lam_w + app_w) return Term::app(term(depth - 1, scope, avail), term(depth - 1, scope, avail));
    return Term::choice(term(depth - 1, scope, avail), term(depth - 1, scope, avail));
  }
};

}  // namespace

std::vector<Capsule> generate_corpus(const CorpusSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  Generator gen(spec, rng);
  std::vector<Capsule> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) out.push_back(gen.capsule());
  return out;
}

}  // namespace stochalc
