#include "stochalc/opsem.hpp"

namespace stochalc {

SplitOffsets split_offsets(Split s) {
  if (s == Split::BigstepLiteral) return {0, 1, 2};
  return {0, 2, 1};
}

Split parse_split(std::string_view name) {
  if (name == "adequacy") return Split::Adequacy;
  if (name == "bigstep-literal") return Split::BigstepLiteral;
  throw std::invalid_argument("unknown split convention: " + std::string(name));
}

std::string_view to_string(Split s) { return s == Split::Adequacy ? "adequacy" : "bigstep-literal"; }

bool same_outcome(const Outcome& a, const Outcome& b) {
  if (a.kind != b.kind || a.steps != b.steps || a.consumed != b.consumed) return false;
  if (a.is_value()) return a.canonical == b.canonical;
  return a.fuel_exhausted == b.fuel_exhausted;
}

std::string describe(const Outcome& o) {
  if (o.is_value()) return "value " + o.canonical->key();
  return o.fuel_exhausted ? "diverged (fuel exhausted)" : "diverged (coins exhausted)";
}

namespace {

void finish_value(Outcome& out, Capsule c) {
  out.kind = Outcome::Kind::Value;
  out.canonical = canonicalize(c);
  out.value = std::move(c);
}

}  // namespace

BigStepMachine::BigStepMachine(const Capsule& c, Fuel fuel, Split split)
    : cur_(c.term), env_(c.env), fresh_(c), offsets_(split_offsets(split)), max_steps_(fuel.max_steps) {
  if (!well_formed(c)) throw IllFormedCapsule("capsule is not well formed: " + to_string(c));
}

BigStepMachine::Status BigStepMachine::run() {
  if (exhausted_) return Status::FuelExhausted;
  for (;;) {
    if (!returning_) {
      switch (cur_.kind()) {
        case Term::Kind::Var:
          if (steps_ >= max_steps_) {
            exhausted_ = true;
            return Status::FuelExhausted;
          }
          ++steps_;
          cur_ = *env_.find(cur_.name());
          returning_ = true;
          break;
        case Term::Kind::Lam:
          returning_ = true;
          break;
        case Term::Kind::App:
          stack_.push_back({false, cur_.arg(), view_});
          view_ = view_.proj(offsets_.fn);
          cur_ = Term(cur_.fn());
          break;
        case Term::Kind::Choice:
          if (steps_ >= max_steps_) {
            exhausted_ = true;
            return Status::FuelExhausted;
          }
          return Status::NeedBit;
      }
      continue;
    }
    if (stack_.empty()) return Status::Done;
    Frame frame = std::move(stack_.back());
    stack_.pop_back();
    if (!frame.after_arg) {
      view_ = frame.view.proj(offsets_.arg);
      stack_.push_back({true, cur_, std::move(frame.view)});
      cur_ = std::move(frame.term);
      returning_ = false;
      continue;
    }
    if (steps_ >= max_steps_) {
      exhausted_ = true;
      return Status::FuelExhausted;
    }
    ++steps_;
    Var y = fresh_.next();
    env_ = env_.insert(y, cur_);
    cur_ = rename_free(frame.term.body(), frame.term.name(), y);
    view_ = frame.view.proj(offsets_.body);
    returning_ = false;
  }
}

void BigStepMachine::supply(bool bit) {
  ++steps_;
  cur_ = Term(bit ? cur_.right() : cur_.left());
  view_ = view_.tail();
}

Outcome big_step(const Capsule& c, CoinSource& alpha, Fuel fuel, Split split) {
  BigStepMachine m(c, fuel, split);
  Outcome out;
  std::size_t before = alpha.consumed().size();
  for (;;) {
    auto status = m.run();
    if (status == BigStepMachine::Status::Done) {
      finish_value(out, m.result());
      break;
    }
    if (status == BigStepMachine::Status::FuelExhausted) {
      out.fuel_exhausted = true;
      break;
    }
    auto bit = alpha.consume(m.view().at(0));
    if (!bit) break;
    m.supply(*bit);
  }
  out.steps = m.steps();
  out.consumed.assign(alpha.consumed().begin() + static_cast<std::ptrdiff_t>(before), alpha.consumed().end());
  return out;
}

SmallStepMachine::SmallStepMachine(const Capsule& c) : focus_(c.term), env_(c.env), fresh_(c) {
  if (!well_formed(c)) throw IllFormedCapsule("capsule is not well formed: " + to_string(c));
}

SmallStepMachine::Redex SmallStepMachine::next_redex() {
  for (;;) {
    switch (focus_.kind()) {
      case Term::Kind::Var:
        return Redex::Var;
      case Term::Kind::Choice:
        return Redex::Choice;
      case Term::Kind::App:
        frames_.push_back({false, focus_.arg()});
        focus_ = Term(focus_.fn());
        continue;
      case Term::Kind::Lam:
        break;
    }
    if (frames_.empty()) return Redex::None;
    Frame& top = frames_.back();
    if (top.right) return Redex::Beta;
    top.right = true;
    std::swap(top.term, focus_);
  }
}

void SmallStepMachine::fire(bool bit) {
  switch (next_redex()) {
    case Redex::None:
      throw AlreadyReduced("capsule is already reduced");
    case Redex::Var:
      focus_ = *env_.find(focus_.name());
      return;
    case Redex::Choice:
      focus_ = Term(bit ? focus_.right() : focus_.left());
      return;
    case Redex::Beta: {
      Term fn = std::move(frames_.back().term);
      frames_.pop_back();
      Var y = fresh_.next();
      env_ = env_.insert(y, focus_);
      focus_ = rename_free(fn.body(), fn.name(), y);
      return;
    }
  }
}

Capsule SmallStepMachine::capsule() const {
  Term t = focus_;
  for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
    t = it->right ? Term::app(it->term, t) : Term::app(t, it->term);
  }
  return {t, env_};
}

std::pair<Capsule, Word> small_step(const Capsule& c, CoinSource& coins) {
  SmallStepMachine m(c);
  auto redex = m.next_redex();
  if (redex == SmallStepMachine::Redex::None) throw AlreadyReduced("capsule is already reduced");
  Word w;
  bool bit = false;
  if (redex == SmallStepMachine::Redex::Choice) {
    auto b = coins.consume(CoinIndex(coins.consumed().size()));
    if (!b) throw std::out_of_range("coin source exhausted");
    bit = *b;
    w.push_back(bit ? '1' : '0');
  }
  m.fire(bit);
  return {m.capsule(), w};
}

namespace {

// Shared driver for reduce and trace; `log` sees each fired rule.
template <typename Log>
Outcome drive(const Capsule& c, CoinSource& coins, Fuel fuel, Log&& log) {
  SmallStepMachine m(c);
  Outcome out;
  for (;;) {
    auto redex = m.next_redex();
    if (redex == SmallStepMachine::Redex::None) {
      finish_value(out, m.capsule());
      break;
    }
    if (out.steps >= fuel.max_steps) {
      out.fuel_exhausted = true;
      break;
    }
    std::optional<bool> bit;
    if (redex == SmallStepMachine::Redex::Choice) {
      CoinIndex i(out.word.size());
      bit = coins.consume(i);
      if (!bit) break;
      out.consumed.push_back(i);
      out.word.push_back(*bit ? '1' : '0');
    }
    m.fire(bit.value_or(false));
    ++out.steps;
    log(m, redex, bit);
  }
  return out;
}

}  // namespace

Outcome reduce(const Capsule& c, CoinSource& coins, Fuel fuel) {
  return drive(c, coins, fuel, [](const SmallStepMachine&, SmallStepMachine::Redex, std::optional<bool>) {});
}

Trace trace(const Capsule& c, CoinSource& coins, Fuel fuel) {
  Trace t;
  t.outcome = drive(c, coins, fuel, [&](const SmallStepMachine& m, SmallStepMachine::Redex r, std::optional<bool> bit) {
    std::string rule;
    switch (r) {
      case SmallStepMachine::Redex::Var:
        rule = "variable-lookup";
        break;
      case SmallStepMachine::Redex::Beta:
        rule = "beta";
        break;
      case SmallStepMachine::Redex::Choice:
        rule = *bit ? "choice-1" : "choice-0";
        break;
      case SmallStepMachine::Redex::None:
        break;
    }
    t.entries.push_back({std::move(rule), bit, to_string(m.capsule())});
  });
  return t;
}

}  // namespace stochalc
