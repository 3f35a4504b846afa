#include "stochalc/denot.hpp"

namespace stochalc {

DenotValue make_closure(Var param, Term body, MixedEnv env) {
  return DenotValue(std::make_shared<const Closure>(Closure{std::move(param), std::move(body), std::move(env)}));
}

MixedEnv mixed_env(const Env& env) {
  MixedEnv out;
  env.for_each([&](const Var& x, const Term& v) { out = out.insert(x, MixedEntry(v)); });
  return out;
}

DenotValue sigma_star_lookup(const MixedEnv& env, const Var& x) {
  const MixedEntry* e = env.find(x);
  if (e == nullptr) throw UnboundVariable("unbound variable " + x);
  if (const auto* v = std::get_if<DenotValue>(e)) return *v;
  const Term& lam = std::get<Term>(*e);
  if (!lam.is_lam()) throw IllFormedCapsule("environment entry for " + x + " is not an abstraction");
  // The abstraction clause ignores coins, and the closure interprets its body
  // in this same environment: one unfolding of the fixpoint.
  return make_closure(lam.name(), lam.body(), env);
}

namespace {

struct Frame {
  bool after_arg;
  Term arg;
  MixedEnv env;
  DenotValue fn;
  CoinView view;
};

class Evaluator {
 public:
  Evaluator(CoinSource& alpha, Fuel fuel, Split split)
      : alpha_(alpha), max_steps_(fuel.max_steps), offsets_(split_offsets(split)) {}

  DenotResult eval(Term m, MixedEnv env, CoinView view) { return loop(std::move(m), std::move(env), std::move(view), {}); }

  DenotResult apply(const DenotValue& f, CoinView beta, const DenotValue& v) {
    if (f.is_bottom() || v.is_bottom()) return {};
    if (!charge()) return exhausted();
    const Closure& c = f.closure();
    return loop(c.body, c.env.insert(c.param, MixedEntry(v)), std::move(beta), {});
  }

 private:
  CoinSource& alpha_;
  std::uint64_t max_steps_;
  SplitOffsets offsets_;
  std::uint64_t steps_ = 0;

  bool charge() {
    if (steps_ >= max_steps_) return false;
    ++steps_;
    return true;
  }

  DenotResult exhausted() {
    DenotResult r;
    r.fuel_exhausted = true;
    r.steps = steps_;
    return r;
  }

  DenotResult loop(Term cur, MixedEnv env, CoinView view, std::vector<Frame> stack) {
    DenotValue val;
    for (;;) {
      switch (cur.kind()) {
        case Term::Kind::Var:
          if (!charge()) return exhausted();
          val = sigma_star_lookup(env, cur.name());
          if (val.is_bottom()) return {{}, false, false, steps_};
          break;
        case Term::Kind::Lam:
          val = make_closure(cur.name(), cur.body(), env);
          break;
        case Term::Kind::App:
          stack.push_back({false, cur.arg(), env, {}, view});
          view = view.proj(offsets_.fn);
          cur = Term(cur.fn());
          continue;
        case Term::Kind::Choice: {
          if (!charge()) return exhausted();
          auto bit = alpha_.consume(view.at(0));
          if (!bit) {
            DenotResult r;
            r.coins_exhausted = true;
            r.steps = steps_;
            return r;
          }
          cur = Term(*bit ? cur.right() : cur.left());
          view = view.tail();
          continue;
        }
      }
      // A value is ready; pop frames until one needs more evaluation.
      for (;;) {
        if (stack.empty()) return {val, false, false, steps_};
        Frame frame = std::move(stack.back());
        stack.pop_back();
        if (!frame.after_arg) {
          cur = std::move(frame.arg);
          env = std::move(frame.env);
          view = frame.view.proj(offsets_.arg);
          stack.push_back({true, cur, {}, val, std::move(frame.view)});
          break;
        }
        if (!charge()) return exhausted();
        const Closure& c = frame.fn.closure();
        cur = c.body;
        env = c.env.insert(c.param, MixedEntry(val));
        view = frame.view.proj(offsets_.body);
        break;
      }
    }
  }
};

}  // namespace

DenotResult dsem(const Term& m, const MixedEnv& env, CoinSource& alpha, Fuel fuel, Split split, const CoinView& view) {
  for (const auto& x : free_vars(m)) {
    if (!env.contains(x)) throw UnboundVariable("free variable " + x + " is not in the environment");
  }
  return Evaluator(alpha, fuel, split).eval(m, env, view);
}

DenotResult dsem(const Capsule& c, CoinSource& alpha, Fuel fuel, Split split) {
  if (!well_formed(c)) throw IllFormedCapsule("capsule is not well formed: " + to_string(c));
  return dsem(c.term, mixed_env(c.env), alpha, fuel, split);
}

DenotResult apply(const DenotValue& f, const CoinView& beta, const DenotValue& v, CoinSource& alpha, Fuel fuel,
                  Split split) {
  return Evaluator(alpha, fuel, split).apply(f, beta, v);
}

std::vector<Probe> default_probes() {
  return {
      {"I", parse("\\a. a"), CoinGenerator::constant(false)},
      {"K", parse("\\a. \\b. a"), CoinGenerator::constant(false)},
      {"KI", parse("\\a. \\b. b"), CoinGenerator::constant(false)},
      {"FLIP", parse("\\a. (\\b. a) (+) (\\b. b)"), CoinGenerator::seeded(0x5eed)},
      // Without a probe that diverges, every probe result is a closure and
      // bounded probing cannot separate K from KI.
      {"DIV", parse("\\a. (\\x. x x) (\\x. x x)"), CoinGenerator::constant(false)},
  };
}

namespace {

DenotValue probe_value(const Probe& p, Fuel fuel, Split split) {
  CoinSource none(CoinGenerator::constant(false));
  return dsem(p.term, MixedEnv(), none, fuel, split).value;
}

DenotValue apply_probe(const DenotValue& u, const Probe& p, const DenotValue& arg, Fuel fuel, Split split) {
  CoinSource coins(p.coins);
  return apply(u, CoinView(), arg, coins, fuel, split).value;
}

}  // namespace

bool probe_equal(const DenotValue& u, const DenotValue& v, unsigned depth, const std::vector<Probe>& probes,
                 Fuel fuel, Split split) {
  if (u.is_bottom() || v.is_bottom()) return u.is_bottom() && v.is_bottom();
  if (depth == 0) return true;
  for (const auto& p : probes) {
    DenotValue arg = probe_value(p, fuel, split);
    DenotValue ru = apply_probe(u, p, arg, fuel, split);
    DenotValue rv = apply_probe(v, p, arg, fuel, split);
    if (!probe_equal(ru, rv, depth - 1, probes, fuel, split)) return false;
  }
  return true;
}

std::string fingerprint(const DenotValue& u, unsigned depth, const std::vector<Probe>& probes, Fuel fuel,
                        Split split) {
  if (u.is_bottom()) return "bottom";
  if (depth == 0) return "closure";
  std::string out = "closure[";
  bool first = true;
  for (const auto& p : probes) {
    if (!first) out += ", ";
    first = false;
    DenotValue arg = probe_value(p, fuel, split);
    out += p.name + ": " + fingerprint(apply_probe(u, p, arg, fuel, split), depth - 1, probes, fuel, split);
  }
  out += "]";
  return out;
}

}  // namespace stochalc
