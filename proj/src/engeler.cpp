#include "stochalc/engeler.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

namespace stochalc {

struct Token::Node {
  Word x;
  TokenSet c;
  Token q;
};

Token Token::empty() { return {}; }

Token Token::triple(Word x, TokenSet c, Token q) {
  Token t;
  t.node_ = std::make_shared<const Node>(Node{std::move(x), std::move(c), std::move(q)});
  return t;
}

const Word& Token::word() const { return node_->x; }
const TokenSet& Token::inputs() const { return node_->c; }
const Token& Token::result() const { return node_->q; }

unsigned Token::rank() const {
  if (is_empty()) return 0;
  unsigned r = node_->q.rank();
  for (const auto& t : node_->c) r = std::max(r, t.rank());
  return r + 1;
}

std::strong_ordering operator<=>(const Token& a, const Token& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.is_empty()) return std::strong_ordering::less;
  if (b.is_empty()) return std::strong_ordering::greater;
  if (auto c = a.node_->x <=> b.node_->x; c != 0) return c;
  if (auto c = std::lexicographical_compare_three_way(a.node_->c.begin(), a.node_->c.end(), b.node_->c.begin(),
                                                      b.node_->c.end());
      c != 0) {
    return c;
  }
  return a.node_->q <=> b.node_->q;
}

std::string to_string(const Token& t) {
  if (t.is_empty()) return "0";
  return "(" + (t.word().empty() ? std::string("e") : t.word()) + "," + to_string(t.inputs()) + "," +
         to_string(t.result()) + ")";
}

std::string to_string(const TokenSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& t : s) {
    if (!first) out += ",";
    first = false;
    out += to_string(t);
  }
  return out + "}";
}

TokenSet engeler_fun(const TokenSet& a, const Word& x_prefix, const TokenSet& c) {
  TokenSet out;
  for (const auto& t : a) {
    if (t.is_empty() || !is_prefix(t.word(), x_prefix)) continue;
    if (std::includes(c.begin(), c.end(), t.inputs().begin(), t.inputs().end())) out.insert(t.result());
  }
  return out;
}

const std::vector<Token>& finite_universe() {
  static const std::vector<Token> u = [] {
    Token e = Token::empty();
    Token t1 = Token::triple("", {}, e);
    return std::vector<Token>{
        e, t1, Token::triple("0", {}, e), Token::triple("1", {}, e), Token::triple("", {e}, e),
        Token::triple("", {t1}, e),
    };
  }();
  return u;
}

FiniteFun::FiniteFun(std::size_t prefix, std::vector<Token> args, std::vector<std::vector<TokenSet>> table)
    : prefix_(prefix), args_(std::move(args)), table_(std::move(table)) {
  if (args_.size() > 16) throw std::invalid_argument("too many argument tokens");
  std::size_t masks = std::size_t{1} << args_.size();
  if (table_.size() != (std::size_t{1} << prefix_)) throw std::invalid_argument("table needs one row per cylinder");
  for (const auto& row : table_) {
    if (row.size() != masks) throw std::invalid_argument("table row needs one entry per argument subset");
    for (std::size_t m = 0; m < masks; ++m) {
      for (std::size_t i = 0; i < args_.size(); ++i) {
        std::size_t bigger = m | (std::size_t{1} << i);
        if (!std::includes(row[bigger].begin(), row[bigger].end(), row[m].begin(), row[m].end())) {
          throw std::invalid_argument("finite function is not monotone");
        }
      }
    }
  }
}

FiniteFun FiniteFun::bottom(std::size_t prefix) {
  return {prefix, {}, std::vector<std::vector<TokenSet>>(std::size_t{1} << prefix, std::vector<TokenSet>(1))};
}

TokenSet FiniteFun::operator()(const Word& beta_prefix, const TokenSet& b) const {
  if (beta_prefix.size() < prefix_) throw std::invalid_argument("coin prefix shorter than the function's prefix");
  std::size_t cyl = 0;
  for (std::size_t i = 0; i < prefix_; ++i) cyl = (cyl << 1) | (beta_prefix[i] == '1' ? 1U : 0U);
  std::size_t mask = 0;
  for (std::size_t i = 0; i < args_.size(); ++i) {
    if (b.count(args_[i]) != 0) mask |= std::size_t{1} << i;
  }
  return table_[cyl][mask];
}

namespace {

std::vector<TokenSet> subsets_of(const std::vector<Token>& universe) {
  std::vector<TokenSet> out;
  for (std::size_t m = 0; m < (std::size_t{1} << universe.size()); ++m) {
    TokenSet s;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if ((m >> i) & 1U) s.insert(universe[i]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

// All words of length `len` extending x.
std::vector<Word> extensions(const Word& x, std::size_t len) {
  if (x.size() >= len) return {x.substr(0, len)};
  std::vector<Word> out;
  for (const auto& tail : words_of_length(len - x.size())) out.push_back(x + tail);
  return out;
}

}  // namespace

TokenSet engeler_lam(const FiniteFun& f, std::size_t max_prefix, const std::vector<Token>& universe) {
  TokenSet out{Token::empty()};
  auto inputs = subsets_of(universe);
  for (const auto& x : words_up_to(max_prefix)) {
    auto cyls = extensions(x, f.prefix());
    for (const auto& c : inputs) {
      // q must be produced on every cylinder below x.
      TokenSet common = f(cyls.front(), c);
      for (std::size_t i = 1; i < cyls.size() && !common.empty(); ++i) {
        TokenSet next = f(cyls[i], c);
        TokenSet both;
        std::set_intersection(common.begin(), common.end(), next.begin(), next.end(),
                              std::inserter(both, both.end()));
        common = std::move(both);
      }
      for (const auto& q : common) out.insert(Token::triple(x, c, q));
    }
  }
  return out;
}

bool funlam_identity(const FiniteFun& f, std::size_t max_prefix, std::string* failure) {
  TokenSet l = engeler_lam(f, max_prefix, finite_universe());
  std::size_t len = std::max(max_prefix, f.prefix());
  for (const auto& beta : words_of_length(len)) {
    for (const auto& b : subsets_of(finite_universe())) {
      TokenSet lhs = engeler_fun(l, beta, b);
      TokenSet rhs = f(beta, b);
      if (lhs != rhs) {
        if (failure != nullptr) {
          *failure = "beta " + beta + ", b " + to_string(b) + ": fun(lam f) = " + to_string(lhs) +
                     ", f = " + to_string(rhs);
        }
        return false;
      }
    }
  }
  return true;
}

namespace slice {

namespace {

const std::array<std::uint64_t, 64>& subset_masks() {
  static const std::array<std::uint64_t, 64> sub = [] {
    std::array<std::uint64_t, 64> s{};
    for (unsigned b = 0; b < 64; ++b) {
      for (unsigned c = 0; c < 64; ++c) {
        if ((c & ~b) == 0) s[b] |= std::uint64_t{1} << c;
      }
    }
    return s;
  }();
  return sub;
}

}  // namespace

std::array<std::uint64_t, 7> lam(const Table& t) {
  std::array<std::uint64_t, 7> out{};
  for (unsigned len = 0; len <= 2; ++len) {
    for (unsigned x = 0; x < (1U << len); ++x) {
      std::uint64_t acc = ~std::uint64_t{0};
      if (len >= t.prefix) {
        acc = t.g[x >> (len - t.prefix)];
      } else {
        unsigned free_bits = static_cast<unsigned>(t.prefix) - len;
        for (unsigned ext = 0; ext < (1U << free_bits); ++ext) acc &= t.g[(x << free_bits) | ext];
      }
      out[(1U << len) - 1 + x] = acc;
    }
  }
  return out;
}

bool fun(const std::array<std::uint64_t, 7>& lam_q, unsigned cylinder, unsigned b) {
  // cylinder is a two-bit coin prefix; its prefixes are e, one bit, two bits.
  std::uint64_t reach = lam_q[0] | lam_q[1 + (cylinder >> 1)] | lam_q[3 + cylinder];
  return (reach & subset_masks()[b]) != 0;
}

bool holds(const Table& t, unsigned cylinder, unsigned b) {
  return ((t.g[cylinder >> (2 - t.prefix)] >> b) & 1U) != 0;
}

}  // namespace slice

namespace {

// The 64-bit slice masks of every monotone predicate over the given token
// indices.
std::vector<std::uint64_t> monotone_slices(const std::vector<unsigned>& args) {
  std::size_t k = args.size();
  std::size_t points = std::size_t{1} << k;
  std::vector<std::uint64_t> out;
  for (std::uint64_t h = 0; h < (std::uint64_t{1} << points); ++h) {
    bool monotone = true;
    for (std::size_t m = 0; m < points && monotone; ++m) {
      for (std::size_t i = 0; i < k; ++i) {
        if (((h >> m) & 1U) != 0 && ((h >> (m | (std::size_t{1} << i))) & 1U) == 0) {
          monotone = false;
          break;
        }
      }
    }
    if (!monotone) continue;
    std::uint64_t g = 0;
    for (unsigned c = 0; c < 64; ++c) {
      std::size_t m = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if ((c >> args[i]) & 1U) m |= std::size_t{1} << i;
      }
      if ((h >> m) & 1U) g |= std::uint64_t{1} << c;
    }
    out.push_back(g);
  }
  return out;
}

}  // namespace

std::vector<SliceFamily> slice_families(std::size_t max_prefix, std::size_t max_args) {
  std::size_t k = std::min<std::size_t>(max_args, 6);
  std::vector<SliceFamily> out;
  for (std::size_t p = 0; p <= std::min<std::size_t>(max_prefix, 2); ++p) {
    for (unsigned a = 0; a < 64; ++a) {
      if (static_cast<std::size_t>(std::popcount(a)) != k) continue;
      std::vector<unsigned> args;
      for (unsigned i = 0; i < 6; ++i) {
        if ((a >> i) & 1U) args.push_back(i);
      }
      SliceFamily fam;
      fam.prefix = p;
      fam.choices = monotone_slices(args);
      fam.tables = 1;
      for (std::size_t c = 0; c < (std::size_t{1} << p); ++c) fam.tables *= fam.choices.size();
      out.push_back(std::move(fam));
    }
  }
  return out;
}

void check_slice_range(const SliceFamily& fam, std::uint64_t begin, std::uint64_t end, FunLamReport& report) {
  std::size_t n = fam.choices.size();
  std::size_t cyls = std::size_t{1} << fam.prefix;
  for (std::uint64_t i = begin; i < end; ++i) {
    slice::Table t;
    t.prefix = fam.prefix;
    std::uint64_t rest = i;
    for (std::size_t c = 0; c < cyls; ++c) {
      t.g[c] = fam.choices[rest % n];
      rest /= n;
    }
    auto l = slice::lam(t);
    ++report.tables;
    for (unsigned cyl = 0; cyl < 4; ++cyl) {
      for (unsigned b = 0; b < 64; ++b) {
        ++report.points;
        if (slice::fun(l, cyl, b) != slice::holds(t, cyl, b)) {
          if (report.failures++ == 0) {
            report.first_failure = "prefix " + std::to_string(fam.prefix) + " table " + std::to_string(i) +
                                   " cylinder " + std::to_string(cyl) + " input " + std::to_string(b);
          }
        }
      }
    }
  }
}

std::vector<std::uint64_t> monotone_predicates(unsigned n) {
  if (n > 6) throw std::invalid_argument("at most 6 tokens");
  if (n == 0) return {0, 1};
  std::vector<std::uint64_t> smaller = monotone_predicates(n - 1);
  unsigned half = 1U << (n - 1);
  std::vector<std::uint64_t> out;
  // f = (f without token n-1, f with it), the first below the second.
  for (std::uint64_t hi : smaller) {
    for (std::uint64_t lo : smaller) {
      if ((lo & ~hi) == 0) out.push_back(lo | (hi << half));
    }
  }
  return out;
}

SliceFamily full_universe_family() {
  SliceFamily fam;
  fam.prefix = 0;
  fam.choices = monotone_predicates(6);
  fam.tables = fam.choices.size();
  return fam;
}

void merge(FunLamReport& a, const FunLamReport& b) {
  if (a.failures == 0 && b.failures != 0) a.first_failure = b.first_failure;
  a.tables += b.tables;
  a.points += b.points;
  a.failures += b.failures;
}

FunLamReport funlam_exhaustive(std::size_t max_prefix, std::size_t max_args) {
  FunLamReport report;
  for (const auto& fam : slice_families(max_prefix, max_args)) check_slice_range(fam, 0, fam.tables, report);
  return report;
}

FunLamReport funlam_random_tables(std::size_t count, std::uint64_t seed, std::size_t max_prefix) {
  FunLamReport report;
  std::mt19937_64 rng(seed);
  const auto& u = finite_universe();
  std::size_t p = std::min<std::size_t>(max_prefix, 2);
  for (std::size_t n = 0; n < count; ++n) {
    std::vector<std::vector<TokenSet>> table(std::size_t{1} << p, std::vector<TokenSet>(64));
    for (auto& row : table) {
      for (const auto& q : u) {
        // q is produced on every input containing one of a few random
        // generator sets: an arbitrary monotone predicate.
        std::vector<unsigned> gens(rng() % 4);
        for (auto& g : gens) g = static_cast<unsigned>(rng() % 64);
        for (unsigned c = 0; c < 64; ++c) {
          bool on = std::any_of(gens.begin(), gens.end(), [c](unsigned g) { return (g & ~c) == 0; });
          if (on) row[c].insert(q);
        }
      }
    }
    FiniteFun f(p, u, std::move(table));
    ++report.tables;
    report.points += (std::size_t{1} << std::max<std::size_t>(p, max_prefix)) * 64;
    std::string why;
    if (!funlam_identity(f, max_prefix, &why)) {
      if (report.failures++ == 0) report.first_failure = why;
    }
  }
  return report;
}

}  // namespace stochalc
