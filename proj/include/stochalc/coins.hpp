#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stochalc/dyadic.hpp"

namespace stochalc {

// Coin indices grow geometrically under nested three-way splits, so they are
// unbounded naturals.
using CoinIndex = BigNat;

// A finite binary word, one '0'/'1' character per bit.
using Word = std::string;

bool is_prefix(const Word& prefix, const Word& w);
bool prefix_comparable(const Word& a, const Word& b);
// All words of length exactly n, in lexicographic order.
std::vector<Word> words_of_length(std::size_t n);
// All words of length at most n, shortest first.
std::vector<Word> words_up_to(std::size_t n);

// Deterministic bit function index -> {0,1}. A finite word without a tail is
// undefined past its end.
class CoinGenerator {
 public:
  static CoinGenerator seeded(std::uint64_t seed);
  static CoinGenerator word(Word bits, bool zero_tail);
  static CoinGenerator constant(bool bit);
  // seed:<u64> | word:<bits>[+zeros] | zeros | ones
  static CoinGenerator parse(std::string_view spec);

  [[nodiscard]] std::optional<bool> bit(const CoinIndex& i) const;
  [[nodiscard]] std::string describe() const;

  // Same stream with the given indices inverted.
  [[nodiscard]] CoinGenerator with_flips(std::set<CoinIndex> flips) const;

 private:
  enum class Kind { Seeded, Word, Constant };
  Kind kind_ = Kind::Constant;
  std::uint64_t seed_ = 0;
  Word word_;
  bool tail_ = false;  // Word: zero tail present. Constant: the bit.
  std::shared_ptr<const std::set<CoinIndex>> flips_;
};

// Instrumented coin stream. Reading is repeatable; consuming the same index
// twice raises the duplicate flag.
class CoinSource {
 public:
  explicit CoinSource(CoinGenerator gen) : gen_(std::move(gen)) {}

  [[nodiscard]] std::optional<bool> peek(const CoinIndex& i) const { return gen_.bit(i); }
  std::optional<bool> consume(const CoinIndex& i);

  [[nodiscard]] const std::vector<CoinIndex>& consumed() const { return order_; }
  [[nodiscard]] bool duplicate() const { return duplicate_; }
  [[nodiscard]] const CoinGenerator& generator() const { return gen_; }
  // Same generator, nothing consumed.
  [[nodiscard]] CoinSource fresh() const { return CoinSource(gen_); }

 private:
  CoinGenerator gen_;
  std::vector<CoinIndex> order_;
  std::set<CoinIndex> seen_;
  bool duplicate_ = false;
};

// A substream of the root stream: local index n maps to scale * n + offset.
// Every composition of proj_i and tl is of this form. Nested splits make the
// coefficients huge, so a view is kept as a chain of proj steps plus a count
// of pending tails, and the coefficients of a step are only computed (once)
// when a coin is actually read through it. Views from one evaluation must not
// be read concurrently from several threads.
class CoinView {
 public:
  CoinView() = default;
  [[nodiscard]] CoinIndex at(std::uint64_t n) const;
  // n -> this(3n + i)
  [[nodiscard]] CoinView proj(unsigned i) const;
  // n -> this(n + 1)
  [[nodiscard]] CoinView tail() const;

 private:
  struct Step;
  CoinView(std::shared_ptr<const Step> step, std::uint64_t tails) : step_(std::move(step)), tails_(tails) {}
  std::shared_ptr<const Step> step_;  // null: the root stream
  std::uint64_t tails_ = 0;
};

// Incremental state of a prefix-driven stream transformer.
class ProcessCursor {
 public:
  virtual ~ProcessCursor() = default;
  virtual void feed(bool bit) = 0;
  [[nodiscard]] virtual const Word& output() const = 0;
  // Input indices read so far, in reading order.
  [[nodiscard]] virtual const std::vector<std::size_t>& examined() const = 0;
  [[nodiscard]] virtual std::unique_ptr<ProcessCursor> clone() const = 0;
};

struct ProcessOutput {
  Word output;
  std::vector<std::size_t> examined;
};

// A stream transformer presented as a machine over finite input prefixes:
// feeding more input never retracts output.
class TossingProcess {
 public:
  using Factory = std::function<std::unique_ptr<ProcessCursor>()>;

  TossingProcess(std::string name, Factory start) : name_(std::move(name)), start_(std::move(start)) {}

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::unique_ptr<ProcessCursor> start() const { return start_(); }
  [[nodiscard]] Word run(const Word& input) const;
  [[nodiscard]] ProcessOutput trace(const Word& input) const;

 private:
  std::string name_;
  Factory start_;
};

class UnknownName : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LabelRepetition : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DepthInsufficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// tl, evens, odds, proj0, proj1, proj2.
TossingProcess builtin(std::string_view name);
const std::vector<std::string>& builtin_names();

// Wraps a plain word-to-word function; output is recomputed from scratch on
// every feed.
TossingProcess process_from_function(std::string name, std::function<Word(const Word&)> f);

// t : 2* -> N. An undefined node (missing table entry) stops the output.
class TreeLabeling {
 public:
  using Rule = std::function<std::optional<CoinIndex>(const Word&)>;

  static TreeLabeling table(std::map<Word, std::uint64_t> entries);
  static TreeLabeling rule(Rule r);
  // t(w) = |w|
  static TreeLabeling identity();

  [[nodiscard]] std::optional<CoinIndex> label(const Word& w) const { return rule_(w); }
  // For table labelings: the table itself.
  [[nodiscard]] const std::map<Word, std::uint64_t>* entries() const { return entries_.get(); }

 private:
  explicit TreeLabeling(Rule r) : rule_(std::move(r)) {}
  Rule rule_;
  std::shared_ptr<const std::map<Word, std::uint64_t>> entries_;
};

// beta_n = alpha_{t(beta_0 ... beta_{n-1})}. Throws LabelRepetition when a
// queried path repeats a label.
TossingProcess tree_process(TreeLabeling t, std::string name = "tree");

// T(0*10a) = 0 T(a), T(0*11a) = 1 T(a); defined on streams with infinitely
// many ones.
TossingProcess skip_zeros_process();

// Nonempty set of pairwise prefix-incomparable words.
using PrefixCode = std::set<Word>;

bool is_prefix_code(const PrefixCode& p);
// Every element of q extends some element of p.
bool code_refines(const PrefixCode& p, const PrefixCode& q);

// Minimal input words y, |y| <= input_depth, such that every input extending
// y produces output extending x. Throws DepthInsufficient if some input word
// of length input_depth leaves the output a proper prefix of x. When T is
// not measure preserving the result may be empty.
PrefixCode extract_prefix_code(const TossingProcess& t, const Word& x, std::size_t input_depth);

// Sum over P_x of 2^-|y|, without materializing P_x.
Dyadic prefix_code_mass(const TossingProcess& t, const Word& x, std::size_t input_depth);

struct MeasureEntry {
  Word x;
  Dyadic sum;
  Dyadic expected;
  bool pass;
};

struct MeasureReport {
  std::string process;
  std::vector<MeasureEntry> entries;
  [[nodiscard]] bool pass() const;
};

// For every x with |x| <= max_len compares the P_x mass with 2^-|x|.
MeasureReport verify_measure(const TossingProcess& t, std::size_t max_len, std::size_t input_depth);

// Pr[T(alpha) extends x] for the tree process of t, computed along the path
// x itself: each fresh label fixes one more coin. Coincides with the P_x mass
// for any tree, and needs no input-depth bound, so it handles the huge labels
// of nested three-way splits. A label repeated with a conflicting bit gives 0,
// a repeat with a consistent bit skips the halving; both break the identity.
Dyadic tree_cylinder_mass(const TreeLabeling& t, const Word& x);
MeasureReport verify_tree_measure(const TreeLabeling& t, std::size_t max_len, std::string name = "tree");

// Checks the coding-function axioms on all words up to max_len.
bool coding_function_check(const std::map<Word, PrefixCode>& p, std::size_t max_len);

}  // namespace stochalc
