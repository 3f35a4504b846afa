#pragma once

// The tree t<M,e> exactly as the equivalence proof defines it, by structural
// recursion with small-step side conditions. Slow and independent of the
// incremental walk in treeproc, which is what makes it useful as an oracle.

#include <optional>

#include "stochalc/opsem.hpp"

namespace oracle {

using namespace stochalc;

struct SideRun {
  enum class Kind { Value, NeedsMore, OutOfFuel } kind;
  Capsule value;
  std::size_t consumed = 0;
};

// <c> ->x <v> for the prefix x of w it consumes, or NV if w runs out first.
// `budget` is shared by every side run of one query, so a diverging body
// cannot recurse forever.
inline SideRun run_to_value(const Capsule& c, const Word& w, std::uint64_t& budget) {
  SmallStepMachine m(c);
  std::size_t used = 0;
  for (;;) {
    auto r = m.next_redex();
    if (r == SmallStepMachine::Redex::None) return {SideRun::Kind::Value, m.capsule(), used};
    if (budget == 0) return {SideRun::Kind::OutOfFuel, c, used};
    --budget;
    if (r == SmallStepMachine::Redex::Choice) {
      if (used >= w.size()) return {SideRun::Kind::NeedsMore, c, used};
      m.fire(w[used++] == '1');
    } else {
      m.fire();
    }
  }
}

inline std::optional<CoinIndex> label_with(const Capsule& c, const Word& w, SplitOffsets off, std::uint64_t& fuel) {
  const Term& t = c.term;
  if (t.is_var() || t.is_lam()) return CoinIndex(w.size());
  if (t.is_choice()) {
    if (w.empty()) return CoinIndex(0);
    Capsule branch{w[0] == '0' ? t.left() : t.right(), c.env};
    auto l = label_with(branch, w.substr(1), off, fuel);
    if (!l) return std::nullopt;
    return *l + 1;
  }
  Capsule fn{t.fn(), c.env};
  SideRun m = run_to_value(fn, w, fuel);
  if (m.kind == SideRun::Kind::OutOfFuel) return std::nullopt;
  if (m.kind == SideRun::Kind::NeedsMore) {
    auto l = label_with(fn, w, off, fuel);
    if (!l) return std::nullopt;
    return 3 * *l + off.fn;
  }
  Word rest = w.substr(m.consumed);
  const Term& lam = m.value.term;
  Capsule arg{t.arg(), m.value.env};
  SideRun n = run_to_value(arg, rest, fuel);
  if (n.kind == SideRun::Kind::OutOfFuel) return std::nullopt;
  if (n.kind == SideRun::Kind::NeedsMore) {
    auto l = label_with(arg, rest, off, fuel);
    if (!l) return std::nullopt;
    return 3 * *l + off.arg;
  }
  std::set<Var> avoid;
  collect_names(lam, avoid);
  n.value.env.for_each([&](const Var& x, const Term& v) {
    avoid.insert(x);
    collect_names(v, avoid);
  });
  collect_names(n.value.term, avoid);
  Var y = fresh_var(avoid);
  Capsule body{rename_free(lam.body(), lam.name(), y), n.value.env.insert(y, n.value.term)};
  auto l = label_with(body, rest.substr(n.consumed), off, fuel);
  if (!l) return std::nullopt;
  return 3 * *l + off.body;
}

inline std::optional<CoinIndex> label(const Capsule& c, const Word& w, SplitOffsets off, std::uint64_t fuel) {
  return label_with(c, w, off, fuel);
}

}  // namespace oracle
