#include "stochalc/coins.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace stochalc {

bool is_prefix(const Word& prefix, const Word& w) {
  return prefix.size() <= w.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

bool prefix_comparable(const Word& a, const Word& b) { return is_prefix(a, b) || is_prefix(b, a); }

std::vector<Word> words_of_length(std::size_t n) {
  std::vector<Word> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
    Word w(n, '0');
    for (std::size_t i = 0; i < n; ++i) {
      if ((k >> (n - 1 - i)) & 1U) w[i] = '1';
    }
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<Word> words_up_to(std::size_t n) {
  std::vector<Word> out;
  for (std::size_t len = 0; len <= n; ++len) {
    auto ws = words_of_length(len);
    out.insert(out.end(), ws.begin(), ws.end());
  }
  return out;
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool seeded_bit(std::uint64_t seed, const CoinIndex& i) {
  std::uint64_t h = mix64(seed);
  if (i <= std::numeric_limits<std::uint64_t>::max()) {
    h = mix64(h ^ i.convert_to<std::uint64_t>());
  } else {
    static_assert(sizeof(boost::multiprecision::limb_type) == sizeof(std::uint64_t));
    const auto& be = i.backend();
    std::uint64_t limbs = be.size();
    for (std::uint64_t k = 0; k < limbs; ++k) h = mix64(h ^ static_cast<std::uint64_t>(be.limbs()[k]));
    h = mix64(h ^ limbs);
  }
  return (h >> 63) != 0;
}

}  // namespace

CoinGenerator CoinGenerator::seeded(std::uint64_t seed) {
  CoinGenerator g;
  g.kind_ = Kind::Seeded;
  g.seed_ = seed;
  return g;
}

CoinGenerator CoinGenerator::word(Word bits, bool zero_tail) {
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("coin word must be binary: " + bits);
  }
  CoinGenerator g;
  g.kind_ = Kind::Word;
  g.word_ = std::move(bits);
  g.tail_ = zero_tail;
  return g;
}

CoinGenerator CoinGenerator::constant(bool bit) {
  CoinGenerator g;
  g.kind_ = Kind::Constant;
  g.tail_ = bit;
  return g;
}

CoinGenerator CoinGenerator::parse(std::string_view spec) {
  if (spec == "zeros") return constant(false);
  if (spec == "ones") return constant(true);
  if (spec.starts_with("seed:")) {
    auto digits = spec.substr(5);
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw std::invalid_argument("bad seed in coin spec: " + std::string(spec));
    }
    return seeded(seed);
  }
  if (spec.starts_with("word:")) {
    auto body = spec.substr(5);
    bool tail = false;
    if (body.ends_with("+zeros")) {
      tail = true;
      body.remove_suffix(6);
    }
    return word(std::string(body), tail);
  }
  throw std::invalid_argument("unrecognized coin spec: " + std::string(spec));
}

std::optional<bool> CoinGenerator::bit(const CoinIndex& i) const {
  std::optional<bool> b;
  switch (kind_) {
    case Kind::Seeded:
      b = seeded_bit(seed_, i);
      break;
    case Kind::Word:
      if (i < word_.size()) {
        b = word_[i.convert_to<std::size_t>()] == '1';
      } else if (tail_) {
        b = false;
      }
      break;
    case Kind::Constant:
      b = tail_;
      break;
  }
  if (b && flips_ && flips_->count(i) != 0) b = !*b;
  return b;
}

std::string CoinGenerator::describe() const {
  std::string out;
  switch (kind_) {
    case Kind::Seeded:
      out = "seed:" + std::to_string(seed_);
      break;
    case Kind::Word:
      out = "word:" + word_ + (tail_ ? "+zeros" : "");
      break;
    case Kind::Constant:
      out = tail_ ? "ones" : "zeros";
      break;
  }
  if (flips_ && !flips_->empty()) {
    out += " flips:";
    bool first = true;
    for (const auto& i : *flips_) {
      if (!first) out += ',';
      first = false;
      out += i.str();
    }
  }
  return out;
}

CoinGenerator CoinGenerator::with_flips(std::set<CoinIndex> flips) const {
  CoinGenerator g = *this;
  if (flips_) flips.insert(flips_->begin(), flips_->end());
  g.flips_ = std::make_shared<const std::set<CoinIndex>>(std::move(flips));
  return g;
}

std::optional<bool> CoinSource::consume(const CoinIndex& i) {
  auto b = gen_.bit(i);
  if (!b) return b;
  if (!seen_.insert(i).second) duplicate_ = true;
  order_.push_back(i);
  return b;
}

// The view parent.tail^parent_tails.proj(i).
struct CoinView::Step {
  std::shared_ptr<const Step> parent;
  std::uint64_t parent_tails;
  unsigned i;
  mutable bool ready = false;
  mutable CoinIndex scale;
  mutable CoinIndex offset;

  Step(std::shared_ptr<const Step> p, std::uint64_t t, unsigned idx) : parent(std::move(p)), parent_tails(t), i(idx) {}
  Step(const Step&) = delete;
  Step& operator=(const Step&) = delete;
  // Long chains would otherwise unwind recursively.
  ~Step() {
    std::shared_ptr<const Step> p = std::move(parent);
    while (p && p.use_count() == 1) {
      std::shared_ptr<const Step> next = std::move(const_cast<Step&>(*p).parent);
      p = std::move(next);
    }
  }
};

namespace {

// parent m -> ps * (m + t) + po, then n -> parent(3n + i).
void compose(const CoinIndex& ps, const CoinIndex& po, std::uint64_t t, unsigned i, CoinIndex& scale,
             CoinIndex& offset) {
  scale = ps * 3;
  offset = ps * (t + i) + po;
}

}  // namespace

CoinIndex CoinView::at(std::uint64_t n) const {
  if (!step_) return CoinIndex(n + tails_);
  if (!step_->ready) {
    std::vector<const Step*> pending;
    for (const Step* s = step_.get(); s != nullptr && !s->ready; s = s->parent.get()) pending.push_back(s);
    for (auto it = pending.rbegin(); it != pending.rend(); ++it) {
      const Step* s = *it;
      if (s->parent) {
        compose(s->parent->scale, s->parent->offset, s->parent_tails, s->i, s->scale, s->offset);
      } else {
        compose(1, 0, s->parent_tails, s->i, s->scale, s->offset);
      }
      s->ready = true;
    }
  }
  return step_->scale * (n + tails_) + step_->offset;
}

CoinView CoinView::proj(unsigned i) const {
  return CoinView(std::make_shared<const Step>(step_, tails_, i), 0);
}

CoinView CoinView::tail() const { return CoinView(step_, tails_ + 1); }

Word TossingProcess::run(const Word& input) const {
  auto c = start();
  for (char b : input) c->feed(b == '1');
  return c->output();
}

ProcessOutput TossingProcess::trace(const Word& input) const {
  auto c = start();
  for (char b : input) c->feed(b == '1');
  return {c->output(), c->examined()};
}

namespace {

// Emits input bit i for every i with i >= skip and (i - skip) % stride ==
// phase; covers tl, evens, odds and the three-way projections.
class StrideCursor final : public ProcessCursor {
 public:
  StrideCursor(std::size_t stride, std::size_t phase) : stride_(stride), phase_(phase) {}

  void feed(bool bit) override {
    std::size_t i = consumed_++;
    if (i % stride_ == phase_) {
      out_.push_back(bit ? '1' : '0');
      examined_.push_back(i);
    }
  }
  const Word& output() const override { return out_; }
  const std::vector<std::size_t>& examined() const override { return examined_; }
  std::unique_ptr<ProcessCursor> clone() const override { return std::make_unique<StrideCursor>(*this); }

 private:
  std::size_t stride_;
  std::size_t phase_;
  std::size_t consumed_ = 0;
  Word out_;
  std::vector<std::size_t> examined_;
};

class TailCursor final : public ProcessCursor {
 public:
  void feed(bool bit) override {
    std::size_t i = consumed_++;
    if (i >= 1) {
      out_.push_back(bit ? '1' : '0');
      examined_.push_back(i);
    }
  }
  const Word& output() const override { return out_; }
  const std::vector<std::size_t>& examined() const override { return examined_; }
  std::unique_ptr<ProcessCursor> clone() const override { return std::make_unique<TailCursor>(*this); }

 private:
  std::size_t consumed_ = 0;
  Word out_;
  std::vector<std::size_t> examined_;
};

class FunctionCursor final : public ProcessCursor {
 public:
  explicit FunctionCursor(std::shared_ptr<const std::function<Word(const Word&)>> f) : f_(std::move(f)) {}

  void feed(bool bit) override {
    examined_.push_back(input_.size());
    input_.push_back(bit ? '1' : '0');
    Word next = (*f_)(input_);
    if (!is_prefix(out_, next)) throw std::logic_error("tossing process retracted output");
    out_ = std::move(next);
  }
  const Word& output() const override { return out_; }
  const std::vector<std::size_t>& examined() const override { return examined_; }
  std::unique_ptr<ProcessCursor> clone() const override { return std::make_unique<FunctionCursor>(*this); }

 private:
  std::shared_ptr<const std::function<Word(const Word&)>> f_;
  Word input_;
  Word out_;
  std::vector<std::size_t> examined_;
};

class TreeCursor final : public ProcessCursor {
 public:
  explicit TreeCursor(std::shared_ptr<const TreeLabeling> t) : t_(std::move(t)) { advance(); }

  void feed(bool bit) override {
    input_.push_back(bit ? '1' : '0');
    advance();
  }
  const Word& output() const override { return out_; }
  const std::vector<std::size_t>& examined() const override { return examined_; }
  std::unique_ptr<ProcessCursor> clone() const override { return std::make_unique<TreeCursor>(*this); }

 private:
  std::shared_ptr<const TreeLabeling> t_;
  Word input_;
  Word out_;
  std::vector<std::size_t> examined_;
  std::optional<CoinIndex> pending_;
  bool stuck_ = false;

  void advance() {
    while (!stuck_) {
      if (!pending_) {
        pending_ = t_->label(out_);
        if (!pending_) {
          stuck_ = true;
          return;
        }
        for (std::size_t seen : examined_) {
          if (*pending_ == seen) {
            throw LabelRepetition("label " + pending_->str() + " repeats along path '" + out_ + "'");
          }
        }
      }
      if (*pending_ >= input_.size()) return;
      auto i = pending_->convert_to<std::size_t>();
      out_.push_back(input_[i]);
      examined_.push_back(i);
      pending_.reset();
    }
  }
};

class SkipZerosCursor final : public ProcessCursor {
 public:
  void feed(bool bit) override {
    std::size_t i = consumed_++;
    examined_.push_back(i);
    if (armed_) {
      out_.push_back(bit ? '1' : '0');
      armed_ = false;
    } else if (bit) {
      armed_ = true;
    }
  }
  const Word& output() const override { return out_; }
  const std::vector<std::size_t>& examined() const override { return examined_; }
  std::unique_ptr<ProcessCursor> clone() const override { return std::make_unique<SkipZerosCursor>(*this); }

 private:
  std::size_t consumed_ = 0;
  bool armed_ = false;
  Word out_;
  std::vector<std::size_t> examined_;
};

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"tl", "evens", "odds", "proj0", "proj1", "proj2"};
  return names;
}

TossingProcess builtin(std::string_view name) {
  if (name == "tl") return {"tl", [] { return std::make_unique<TailCursor>(); }};
  if (name == "evens") return {"evens", [] { return std::make_unique<StrideCursor>(2, 0); }};
  if (name == "odds") return {"odds", [] { return std::make_unique<StrideCursor>(2, 1); }};
  if (name == "proj0") return {"proj0", [] { return std::make_unique<StrideCursor>(3, 0); }};
  if (name == "proj1") return {"proj1", [] { return std::make_unique<StrideCursor>(3, 1); }};
  if (name == "proj2") return {"proj2", [] { return std::make_unique<StrideCursor>(3, 2); }};
  throw UnknownName("unknown tossing process: " + std::string(name));
}

TossingProcess process_from_function(std::string name, std::function<Word(const Word&)> f) {
  auto shared = std::make_shared<const std::function<Word(const Word&)>>(std::move(f));
  return {std::move(name), [shared] { return std::make_unique<FunctionCursor>(shared); }};
}

TreeLabeling TreeLabeling::table(std::map<Word, std::uint64_t> entries) {
  auto shared = std::make_shared<const std::map<Word, std::uint64_t>>(std::move(entries));
  TreeLabeling t([shared](const Word& w) -> std::optional<CoinIndex> {
    auto it = shared->find(w);
    if (it == shared->end()) return std::nullopt;
    return CoinIndex(it->second);
  });
  t.entries_ = shared;
  return t;
}

TreeLabeling TreeLabeling::rule(Rule r) { return TreeLabeling(std::move(r)); }

TreeLabeling TreeLabeling::identity() {
  return TreeLabeling([](const Word& w) -> std::optional<CoinIndex> { return CoinIndex(w.size()); });
}

TossingProcess tree_process(TreeLabeling t, std::string name) {
  auto shared = std::make_shared<const TreeLabeling>(std::move(t));
  return {std::move(name), [shared] { return std::make_unique<TreeCursor>(shared); }};
}

TossingProcess skip_zeros_process() {
  return {"skip-zeros", [] { return std::make_unique<SkipZerosCursor>(); }};
}

bool is_prefix_code(const PrefixCode& p) {
  if (p.empty()) return false;
  // In lexicographic order a word's extensions follow it immediately.
  const Word* prev = nullptr;
  for (const auto& w : p) {
    if (prev != nullptr && is_prefix(*prev, w)) return false;
    prev = &w;
  }
  return true;
}

bool code_refines(const PrefixCode& p, const PrefixCode& q) {
  for (const auto& y : q) {
    bool covered = false;
    for (const auto& x : p) {
      if (is_prefix(x, y)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

namespace {

enum class NodeState { Full, Partial };

// Walks the input tree below `word`. A node is full when every input through
// it yields output extending x; the minimal full nodes are reported.
template <typename Record>
NodeState explore(ProcessCursor& cursor, Word& word, const Word& x, std::size_t depth, Record& record) {
  const Word& out = cursor.output();
  std::size_t common = std::min(out.size(), x.size());
  if (!std::equal(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(common), x.begin())) {
    return NodeState::Partial;
  }
  if (out.size() >= x.size()) return NodeState::Full;
  if (word.size() >= depth) {
    throw DepthInsufficient("input depth " + std::to_string(depth) + " leaves output '" + out +
                            "' shorter than '" + x + "'");
  }
  auto zero = cursor.clone();
  zero->feed(false);
  word.push_back('0');
  NodeState s0 = explore(*zero, word, x, depth, record);
  word.back() = '1';
  cursor.feed(true);
  NodeState s1 = explore(cursor, word, x, depth, record);
  if (s0 == NodeState::Full && s1 == NodeState::Full) {
    word.pop_back();
    return NodeState::Full;
  }
  if (s0 == NodeState::Full) {
    word.back() = '0';
    record(word);
  }
  if (s1 == NodeState::Full) {
    word.back() = '1';
    record(word);
  }
  word.pop_back();
  return NodeState::Partial;
}

}  // namespace

PrefixCode extract_prefix_code(const TossingProcess& t, const Word& x, std::size_t input_depth) {
  PrefixCode out;
  auto record = [&](const Word& y) { out.insert(y); };
  auto cursor = t.start();
  Word word;
  if (explore(*cursor, word, x, input_depth, record) == NodeState::Full) out.insert(Word());
  return out;
}

Dyadic prefix_code_mass(const TossingProcess& t, const Word& x, std::size_t input_depth) {
  std::vector<std::uint64_t> by_length(input_depth + 1, 0);
  auto record = [&](const Word& y) { ++by_length[y.size()]; };
  auto cursor = t.start();
  Word word;
  if (explore(*cursor, word, x, input_depth, record) == NodeState::Full) ++by_length[0];
  Dyadic sum;
  for (std::size_t len = 0; len < by_length.size(); ++len) {
    if (by_length[len] != 0) sum += Dyadic(BigNat(by_length[len]), len);
  }
  return sum;
}

bool MeasureReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const MeasureEntry& e) { return e.pass; });
}

MeasureReport verify_measure(const TossingProcess& t, std::size_t max_len, std::size_t input_depth) {
  MeasureReport report{t.name(), {}};
  for (const auto& x : words_up_to(max_len)) {
    Dyadic sum = prefix_code_mass(t, x, input_depth);
    Dyadic expected = Dyadic::pow2_neg(x.size());
    report.entries.push_back({x, sum, expected, sum == expected});
  }
  return report;
}

Dyadic tree_cylinder_mass(const TreeLabeling& t, const Word& x) {
  std::map<CoinIndex, char> fixed;
  Dyadic mass = Dyadic::one();
  for (std::size_t k = 0; k < x.size(); ++k) {
    auto l = t.label(x.substr(0, k));
    if (!l) return Dyadic::zero();
    auto [it, fresh] = fixed.emplace(*l, x[k]);
    if (!fresh) {
      if (it->second != x[k]) return Dyadic::zero();
      continue;
    }
    mass = mass.half();
  }
  return mass;
}

MeasureReport verify_tree_measure(const TreeLabeling& t, std::size_t max_len, std::string name) {
  MeasureReport report{std::move(name), {}};
  for (const auto& x : words_up_to(max_len)) {
    Dyadic sum = tree_cylinder_mass(t, x);
    Dyadic expected = Dyadic::pow2_neg(x.size());
    report.entries.push_back({x, sum, expected, sum == expected});
  }
  return report;
}

bool coding_function_check(const std::map<Word, PrefixCode>& p, std::size_t max_len) {
  auto eps = p.find(Word());
  if (eps == p.end() || eps->second != PrefixCode{Word()}) return false;
  auto words = words_up_to(max_len);
  for (const auto& x : words) {
    if (p.find(x) == p.end()) return false;
  }
  for (const auto& x : words) {
    const PrefixCode& px = p.at(x);
    if (!px.empty() && !is_prefix_code(px)) return false;
    for (const auto& y : words) {
      const PrefixCode& py = p.at(y);
      if (!prefix_comparable(x, y)) {
        for (const auto& w : px) {
          if (py.count(w) != 0) return false;
        }
      } else if (is_prefix(x, y) && !code_refines(px, py)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace stochalc
