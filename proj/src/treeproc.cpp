#include "stochalc/treeproc.hpp"

#include <algorithm>
#include <set>

namespace stochalc {

CapsuleTreeWalk::CapsuleTreeWalk(const CapsuleTree& t)
    : machine_(t.capsule(), t.fuel(), t.split()), status_(machine_.run()) {}

std::optional<CoinIndex> CapsuleTreeWalk::label() const {
  switch (status_) {
    case BigStepMachine::Status::NeedBit:
      return machine_.view().at(0);
    case BigStepMachine::Status::Done:
      return machine_.view().at(after_value_);
    case BigStepMachine::Status::FuelExhausted:
      break;
  }
  return std::nullopt;
}

void CapsuleTreeWalk::descend(bool bit) {
  switch (status_) {
    case BigStepMachine::Status::NeedBit:
      machine_.supply(bit);
      status_ = machine_.run();
      break;
    case BigStepMachine::Status::Done:
      ++after_value_;
      break;
    case BigStepMachine::Status::FuelExhausted:
      throw Unresolved("descending below an unresolved node");
  }
}

std::optional<CoinIndex> CapsuleTree::label(const Word& w) const {
  CapsuleTreeWalk walk(*this);
  for (char b : w) {
    if (walk.unresolved()) return std::nullopt;
    walk.descend(b == '1');
  }
  return walk.label();
}

TreeLabeling CapsuleTree::labeling() const {
  CapsuleTree self = *this;
  return TreeLabeling::rule([self](const Word& w) { return self.label(w); });
}

namespace {

class CapsuleTreeCursor final : public ProcessCursor {
 public:
  explicit CapsuleTreeCursor(const CapsuleTree& t) : walk_(t) { advance(); }

  void feed(bool bit) override {
    input_.push_back(bit ? '1' : '0');
    advance();
  }
  const Word& output() const override { return out_; }
  const std::vector<std::size_t>& examined() const override { return examined_; }
  std::unique_ptr<ProcessCursor> clone() const override { return std::make_unique<CapsuleTreeCursor>(*this); }

 private:
  CapsuleTreeWalk walk_;
  Word input_;
  Word out_;
  std::vector<std::size_t> examined_;

  void advance() {
    for (;;) {
      auto l = walk_.label();
      if (!l || *l >= input_.size()) return;
      auto i = l->convert_to<std::size_t>();
      if (std::find(examined_.begin(), examined_.end(), i) != examined_.end()) {
        throw LabelRepetition("label " + std::to_string(i) + " repeats along path '" + out_ + "'");
      }
      examined_.push_back(i);
      out_.push_back(input_[i]);
      walk_.descend(input_[i] == '1');
    }
  }
};

}  // namespace

TossingProcess CapsuleTree::process() const {
  CapsuleTree self = *this;
  return {"tree" + to_string(capsule_.term), [self] { return std::make_unique<CapsuleTreeCursor>(self); }};
}

CapsuleTree build_tree(const Capsule& c, Fuel fuel, Split split) {
  if (!well_formed(c)) throw IllFormedCapsule("capsule is not well formed: " + to_string(c));
  return {c, fuel, split};
}

Word apply_capsule_tree(const CapsuleTree& ct, CoinSource& alpha, std::size_t out_len) {
  CapsuleTreeWalk walk(ct);
  Word out;
  std::set<CoinIndex> seen;
  while (out.size() < out_len) {
    auto l = walk.label();
    if (!l) throw Unresolved("tree node '" + out + "' is unresolved within fuel");
    if (!seen.insert(*l).second) throw LabelRepetition("label " + l->str() + " repeats along path '" + out + "'");
    auto bit = alpha.consume(*l);
    if (!bit) throw std::out_of_range("coin source undefined at index " + l->str());
    out.push_back(*bit ? '1' : '0');
    walk.descend(*bit);
  }
  return out;
}

TreeRun run_capsule_tree(const CapsuleTree& ct, CoinSource& alpha) {
  CapsuleTreeWalk walk(ct);
  TreeRun run;
  std::set<CoinIndex> seen;
  for (;;) {
    if (walk.reduced()) {
      run.reduced = true;
      return run;
    }
    auto l = walk.label();
    if (!l) {
      run.unresolved = true;
      return run;
    }
    if (!seen.insert(*l).second) {
      throw LabelRepetition("label " + l->str() + " repeats along path '" + run.output + "'");
    }
    auto bit = alpha.consume(*l);
    if (!bit) {
      run.coins_exhausted = true;
      return run;
    }
    run.output.push_back(*bit ? '1' : '0');
    walk.descend(*bit);
  }
}

EquivalenceReport check_equivalence(const Capsule& c, const CoinGenerator& alpha, Fuel fuel, Split split) {
  EquivalenceReport r;
  CoinSource big_coins(alpha);
  r.big = big_step(c, big_coins, fuel, split);

  CoinSource tree_coins(alpha);
  TreeRun run = run_capsule_tree(build_tree(c, fuel, split), tree_coins);
  r.tree_word = run.output;

  CoinSource small_coins(CoinGenerator::word(run.output, false));
  r.small = reduce(c, small_coins, fuel);

  r.duplicate = big_coins.duplicate() || tree_coins.duplicate() || small_coins.duplicate();
  std::set<CoinIndex> big_set(big_coins.consumed().begin(), big_coins.consumed().end());
  std::set<CoinIndex> tree_set(tree_coins.consumed().begin(), tree_coins.consumed().end());
  r.coins_match = big_set == tree_set;

  if (r.big.is_value()) {
    if (!r.small.is_value()) {
      r.detail = "big-step reached " + r.big.canonical->key() + " but small-step on T(alpha) " + describe(r.small);
    } else if (r.big.canonical != r.small.canonical) {
      r.detail = "values differ: " + r.big.canonical->key() + " vs " + r.small.canonical->key();
    } else if (r.small.word != run.output) {
      r.detail = "small-step consumed '" + r.small.word + "' of T(alpha) = '" + run.output + "'";
    } else if (!r.coins_match) {
      r.detail = "tree read different coins than big-step";
    } else {
      r.agree = true;
    }
  } else {
    r.fuel_exhausted = r.big.fuel_exhausted;
    if (r.small.is_value()) {
      r.detail = "big-step " + describe(r.big) + " but small-step reached " + r.small.canonical->key();
    } else {
      r.agree = true;
    }
  }
  if (r.duplicate) {
    r.agree = false;
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("a coin was consumed twice");
  }
  return r;
}

}  // namespace stochalc
