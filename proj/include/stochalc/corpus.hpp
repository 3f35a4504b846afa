#pragma once

#include <cstdint>
#include <vector>

#include "stochalc/syntax.hpp"

namespace stochalc {

struct CorpusSpec {
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  std::size_t max_term_depth = 4;
  // Relative weight of choice nodes among inner nodes; 0 disables them.
  double choice_weight = 1.0;
  // Number of named environment bindings per capsule.
  std::size_t pool = 4;
};

// Random well-formed capsules. Environment bindings only refer to earlier
// bindings, except for self-recursive ones of the form
// \x. B (+) f A, which recur only after a coin comes up 1.
std::vector<Capsule> generate_corpus(const CorpusSpec& spec);

}  // namespace stochalc
