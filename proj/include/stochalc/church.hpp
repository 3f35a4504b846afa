#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "stochalc/opsem.hpp"
#include "stochalc/syntax.hpp"

namespace stochalc {

Term church_numeral(std::uint64_t n);

// I, K, KI, TRUE, FALSE, OMEGA, SUCC, PLUS.
const std::map<Var, Term>& prelude();

// Replaces free occurrences of macro names, and of all-digit names by Church
// numerals. Macro bodies must be closed, so nothing can be captured.
Term expand_macros(const Term& t, const std::map<Var, Term>& macros);

// Program text: lines `let NAME = TERM` (macros), `rec NAME = TERM`
// (environment bindings, may refer to each other), and the main term on the
// remaining lines. `#` starts a comment line.
Capsule parse_program(std::string_view text);

// A decoded Church value. \a.\b.b is both false and zero.
struct ChurchValue {
  std::optional<bool> boolean;
  std::optional<std::uint64_t> numeral;
};

// Applies the value to marker abstractions with the big-step machine and an
// all-zeros coin source, and reads off which marker comes back.
std::optional<ChurchValue> decode_church(const CanonicalCapsule& v, Fuel fuel = Fuel{10000});

std::string to_string(const ChurchValue& v);

}  // namespace stochalc
