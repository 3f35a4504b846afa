#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "stochalc/coins.hpp"
#include "stochalc/opsem.hpp"
#include "stochalc/persistent_map.hpp"
#include "stochalc/syntax.hpp"

namespace stochalc {

struct Closure;

// Bottom, or a suspended function of (coins, argument). A closure is never
// bottom, even when every application of it diverges.
class DenotValue {
 public:
  DenotValue() = default;
  static DenotValue bottom() { return {}; }
  explicit DenotValue(std::shared_ptr<const Closure> c) : closure_(std::move(c)) {}

  [[nodiscard]] bool is_bottom() const { return closure_ == nullptr; }
  [[nodiscard]] const Closure& closure() const { return *closure_; }

 private:
  std::shared_ptr<const Closure> closure_;
};

// A variable denotes either a semantic value or a syntactic abstraction to be
// interpreted in the whole environment (the least fixpoint).
using MixedEntry = std::variant<DenotValue, Term>;
using MixedEnv = PersistentMap<Var, MixedEntry>;

struct Closure {
  Var param;
  Term body;
  MixedEnv env;
};

DenotValue make_closure(Var param, Term body, MixedEnv env);
MixedEnv mixed_env(const Env& env);

class UnboundVariable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

DenotValue sigma_star_lookup(const MixedEnv& env, const Var& x);

struct DenotResult {
  DenotValue value;
  bool fuel_exhausted = false;
  bool coins_exhausted = false;
  std::uint64_t steps = 0;
};

// Coins are read through `view` from the root stream of `alpha`.
DenotResult dsem(const Term& m, const MixedEnv& env, CoinSource& alpha, Fuel fuel, Split split = Split::Adequacy,
                 const CoinView& view = CoinView());
DenotResult dsem(const Capsule& c, CoinSource& alpha, Fuel fuel, Split split = Split::Adequacy);

// f beta v, strict in v.
DenotResult apply(const DenotValue& f, const CoinView& beta, const DenotValue& v, CoinSource& alpha, Fuel fuel,
                  Split split = Split::Adequacy);

struct Probe {
  std::string name;
  Term term;
  CoinGenerator coins;
};

// Identity, the two projections K and KI, a probe that flips a coin, and one
// that diverges once applied.
std::vector<Probe> default_probes();

bool probe_equal(const DenotValue& u, const DenotValue& v, unsigned depth, const std::vector<Probe>& probes,
                 Fuel fuel, Split split = Split::Adequacy);

// "bottom", or "closure" followed by the fingerprints of the probe results.
std::string fingerprint(const DenotValue& u, unsigned depth, const std::vector<Probe>& probes, Fuel fuel,
                        Split split = Split::Adequacy);

}  // namespace stochalc
