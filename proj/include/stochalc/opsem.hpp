#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stochalc/coins.hpp"
#include "stochalc/syntax.hpp"

namespace stochalc {

// Bound on rule applications: variable lookups, beta steps and choices.
// Entering an abstraction or descending into an application is free.
struct Fuel {
  std::uint64_t max_steps = 100000;
};

// Which substream of an application's coins goes to the function, the
// argument and the body.
enum class Split { Adequacy, BigstepLiteral };

struct SplitOffsets {
  unsigned fn;
  unsigned arg;
  unsigned body;
};

SplitOffsets split_offsets(Split s);
Split parse_split(std::string_view name);
std::string_view to_string(Split s);

struct Outcome {
  enum class Kind { Value, Diverged };

  Kind kind = Kind::Diverged;
  std::optional<Capsule> value;
  std::optional<CanonicalCapsule> canonical;
  // Diverged only: true when fuel ran out, false when the coins did.
  bool fuel_exhausted = false;
  // Root indices for big-step; 0, 1, 2, ... for small-step.
  std::vector<CoinIndex> consumed;
  // Small-step only: the consumed bits in order.
  Word word;
  std::uint64_t steps = 0;

  [[nodiscard]] bool is_value() const { return kind == Kind::Value; }
};

// Same kind, canonical value, exhaustion reason, consumed indices and steps.
bool same_outcome(const Outcome& a, const Outcome& b);
std::string describe(const Outcome& o);

// Resumable big-step evaluator. It runs until it needs a coin for a choice,
// finishes, or runs out of fuel; the caller decides where the coin comes from.
class BigStepMachine {
 public:
  enum class Status { NeedBit, Done, FuelExhausted };

  BigStepMachine(const Capsule& c, Fuel fuel, Split split = Split::Adequacy);

  Status run();
  // View of the choice waiting for its bit.
  [[nodiscard]] const CoinView& view() const { return view_; }
  void supply(bool bit);

  [[nodiscard]] Capsule result() const { return {cur_, env_}; }
  [[nodiscard]] std::uint64_t steps() const { return steps_; }
  [[nodiscard]] const Env& env() const { return env_; }

 private:
  struct Frame {
    bool after_arg;  // false: evaluating the function, term is the argument
    Term term;       // true: evaluating the argument, term is the function value
    CoinView view;   // coins of the whole application
  };

  Term cur_;
  Env env_;
  CoinView view_;
  bool returning_ = false;
  bool exhausted_ = false;
  std::vector<Frame> stack_;
  FreshSupply fresh_;
  SplitOffsets offsets_;
  std::uint64_t steps_ = 0;
  std::uint64_t max_steps_;
};

Outcome big_step(const Capsule& c, CoinSource& alpha, Fuel fuel, Split split = Split::Adequacy);

class AlreadyReduced : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Leftmost-outermost call-by-value reduction of a capsule, one rule at a
// time. The term is kept as a zipper so locating the next redex is amortized
// constant time.
class SmallStepMachine {
 public:
  enum class Redex { None, Var, Beta, Choice };

  explicit SmallStepMachine(const Capsule& c);

  Redex next_redex();
  // Fires the redex found by next_redex; `bit` selects the choice branch.
  void fire(bool bit = false);

  [[nodiscard]] Capsule capsule() const;
  [[nodiscard]] bool reduced() const { return frames_.empty() && focus_.is_lam(); }
  [[nodiscard]] const Term& focus() const { return focus_; }
  [[nodiscard]] const Env& env() const { return env_; }

 private:
  struct Frame {
    bool right;  // false: function position, term is the pending argument
    Term term;   // true: argument position, term is the function value
  };

  Term focus_;
  Env env_;
  std::vector<Frame> frames_;
  FreshSupply fresh_;
};

// One rule; a choice reads the next sequential coin of `coins`, i.e. index
// coins.consumed().size().
std::pair<Capsule, Word> small_step(const Capsule& c, CoinSource& coins);

Outcome reduce(const Capsule& c, CoinSource& coins, Fuel fuel);

struct TraceEntry {
  std::string rule;  // variable-lookup, beta, choice-0, choice-1
  std::optional<bool> bit;
  std::string capsule;  // after the step
};

struct Trace {
  std::vector<TraceEntry> entries;
  Outcome outcome;
};

Trace trace(const Capsule& c, CoinSource& coins, Fuel fuel);

}  // namespace stochalc
