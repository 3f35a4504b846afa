#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "stochalc/coins.hpp"
#include "stochalc/opsem.hpp"

namespace stochalc {

class Unresolved : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The tree t<M,e> relating big-step coins to small-step coins. Node w is the
// state reached after the small-step run has consumed w; its label is the
// root index the big-step evaluation reads for the next coin. Once the
// capsule is reduced the tree continues as the identity tree of the final
// substream.
class CapsuleTree {
 public:
  CapsuleTree(Capsule c, Fuel fuel, Split split) : capsule_(std::move(c)), fuel_(fuel), split_(split) {}

  [[nodiscard]] const Capsule& capsule() const { return capsule_; }
  [[nodiscard]] Fuel fuel() const { return fuel_; }
  [[nodiscard]] Split split() const { return split_; }

  // t(w), or nothing when the node cannot be resolved within fuel.
  [[nodiscard]] std::optional<CoinIndex> label(const Word& w) const;
  [[nodiscard]] TreeLabeling labeling() const;
  // The tree process itself, driven incrementally.
  [[nodiscard]] TossingProcess process() const;

 private:
  Capsule capsule_;
  Fuel fuel_;
  Split split_;
};

CapsuleTree build_tree(const Capsule& c, Fuel fuel, Split split = Split::Adequacy);

// A cursor walking down one path of a capsule tree.
class CapsuleTreeWalk {
 public:
  explicit CapsuleTreeWalk(const CapsuleTree& t);

  // Label of the current node; nothing when unresolved.
  [[nodiscard]] std::optional<CoinIndex> label() const;
  void descend(bool bit);
  // The capsule has been reduced along this path.
  [[nodiscard]] bool reduced() const { return status_ == BigStepMachine::Status::Done; }
  [[nodiscard]] bool unresolved() const { return status_ == BigStepMachine::Status::FuelExhausted; }

 private:
  BigStepMachine machine_;
  BigStepMachine::Status status_;
  std::uint64_t after_value_ = 0;
};

// First out_len bits of T<M,e>(alpha); the coins read are consumed from
// alpha. Throws Unresolved, or LabelRepetition if a label recurs.
Word apply_capsule_tree(const CapsuleTree& ct, CoinSource& alpha, std::size_t out_len);

struct TreeRun {
  Word output;
  bool reduced = false;
  bool unresolved = false;
  bool coins_exhausted = false;
};

// Emits T<M,e>(alpha) until the capsule is reduced along the emitted path.
TreeRun run_capsule_tree(const CapsuleTree& ct, CoinSource& alpha);

struct EquivalenceReport {
  Outcome big;
  Outcome small;
  Word tree_word;
  bool agree = false;
  // Fuel ran out on the big-step side; the claim is only that small-step
  // also fails to produce a value.
  bool fuel_exhausted = false;
  // The tree read exactly the coins big-step consumed.
  bool coins_match = false;
  bool duplicate = false;
  std::string detail;
};

EquivalenceReport check_equivalence(const Capsule& c, const CoinGenerator& alpha, Fuel fuel,
                                    Split split = Split::Adequacy);

}  // namespace stochalc
