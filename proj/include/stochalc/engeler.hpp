#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "stochalc/coins.hpp"

namespace stochalc {

class Token;
using TokenSet = std::set<Token>;

// Finitary element of the Engeler-style domain: the empty token, or a triple
// (x, c, q) read "on coins extending x, input containing c yields q".
class Token {
 public:
  static Token empty();
  static Token triple(Word x, TokenSet c, Token q);

  [[nodiscard]] bool is_empty() const { return node_ == nullptr; }
  [[nodiscard]] const Word& word() const;
  [[nodiscard]] const TokenSet& inputs() const;
  [[nodiscard]] const Token& result() const;
  [[nodiscard]] unsigned rank() const;

  friend std::strong_ordering operator<=>(const Token& a, const Token& b);
  friend bool operator==(const Token& a, const Token& b) { return (a <=> b) == 0; }

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

std::string to_string(const Token& t);
std::string to_string(const TokenSet& s);

// {q : exists x <= x_prefix, c' subset of c, (x, c', q) in a}
TokenSet engeler_fun(const TokenSet& a, const Word& x_prefix, const TokenSet& c);

// The six tokens of rank at most 2 the finite fragment is built on:
// empty, (e,{},empty), (0,{},empty), (1,{},empty), (e,{empty},empty),
// (e,{(e,{},empty)},empty).
const std::vector<Token>& finite_universe();

// A continuous function coins -> tokens -> tokens that only looks at the
// first `prefix` coins and at which of the tokens in `args` its input holds.
class FiniteFun {
 public:
  // table[cylinder][mask]: cylinder indexes the coin prefix in binary, mask
  // the subset of args present. Must be monotone in the mask.
  FiniteFun(std::size_t prefix, std::vector<Token> args, std::vector<std::vector<TokenSet>> table);

  static FiniteFun bottom(std::size_t prefix);

  // beta_prefix needs at least `prefix` bits.
  [[nodiscard]] TokenSet operator()(const Word& beta_prefix, const TokenSet& b) const;
  [[nodiscard]] std::size_t prefix() const { return prefix_; }
  [[nodiscard]] const std::vector<Token>& args() const { return args_; }

 private:
  std::size_t prefix_;
  std::vector<Token> args_;
  std::vector<std::vector<TokenSet>> table_;
};

// {(x, c, q) : |x| <= max_prefix, c subset of universe, q in f(beta, c) for
// every beta extending x} together with the empty token.
TokenSet engeler_lam(const FiniteFun& f, std::size_t max_prefix, const std::vector<Token>& universe);

// The same construction for one output token at a time over the six-token
// universe, with token sets as 6-bit masks and sets of such sets as 64-bit
// masks. Membership of a fixed q in fun(lam f) and in f depends only on the
// slice g(beta, c) = [q in f(beta, c)], so checking every slice checks every
// table built from them.
namespace slice {

// g[cylinder] is the set of input masks c (as a 64-bit mask) with
// q in f(cylinder, c). Only prefix lengths up to 2 are supported.
struct Table {
  std::size_t prefix = 0;
  std::array<std::uint64_t, 4> g{};
};

// lam restricted to q: for each word x of length <= 2 (index 2^|x| - 1 + x),
// the set of c with (x, c, q) in lam f.
std::array<std::uint64_t, 7> lam(const Table& t);
// Whether q in fun(lam f)(beta, b) for beta in the two-bit cylinder.
bool fun(const std::array<std::uint64_t, 7>& lam_q, unsigned cylinder, unsigned b);
bool holds(const Table& t, unsigned cylinder, unsigned b);

}  // namespace slice

struct FunLamReport {
  std::uint64_t tables = 0;
  std::uint64_t points = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
  [[nodiscard]] bool pass() const { return failures == 0 && tables > 0; }
};

// All slice tables of one coin-prefix length whose input dependence goes
// through one fixed set of universe tokens: each cylinder independently picks
// one of `choices`. Table i picks choices[digit_c(i)] in base choices.size().
struct SliceFamily {
  std::size_t prefix = 0;
  std::vector<std::uint64_t> choices;
  std::uint64_t tables = 0;
};

// One family per prefix length <= max_prefix and per set of max_args tokens;
// a slice that reads fewer tokens appears in every family containing them.
std::vector<SliceFamily> slice_families(std::size_t max_prefix, std::size_t max_args);

// Checks fun(lam g) = g on tables [begin, end) of a family at every two-bit
// cylinder and every input subset; accumulates into report.
void check_slice_range(const SliceFamily& fam, std::uint64_t begin, std::uint64_t end, FunLamReport& report);

// All monotone predicates on subsets of n <= 6 tokens, as 2^n-bit masks
// indexed by subset (7 828 354 of them for n = 6).
std::vector<std::uint64_t> monotone_predicates(unsigned n);

// Prefix 0 with every monotone predicate over the whole universe: the
// unrestricted slices, enumerated completely.
SliceFamily full_universe_family();

// Adds b to a; a's first failure wins, so merging in order is deterministic.
void merge(FunLamReport& a, const FunLamReport& b);

// Every family, serially.
FunLamReport funlam_exhaustive(std::size_t max_prefix, std::size_t max_args);

// Whole multi-token tables through the token-set implementation.
FunLamReport funlam_random_tables(std::size_t count, std::uint64_t seed, std::size_t max_prefix);

// Checks fun(lam f) = f at every cylinder and every subset of the universe.
bool funlam_identity(const FiniteFun& f, std::size_t max_prefix, std::string* failure = nullptr);

}  // namespace stochalc
