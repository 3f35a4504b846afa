#include "stochalc/syntax.hpp"

#include <cctype>
#include <charconv>
#include <deque>
#include <map>
#include <vector>

namespace stochalc {

Term Term::var(Var name) {
  return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), Term(), Term()}));
}

Term Term::lam(Var binder, Term body) {
  return Term(std::make_shared<const Node>(Node{Kind::Lam, std::move(binder), std::move(body), Term()}));
}

Term Term::app(Term fn, Term arg) {
  return Term(std::make_shared<const Node>(Node{Kind::App, Var(), std::move(fn), std::move(arg)}));
}

Term Term::choice(Term left, Term right) {
  return Term(std::make_shared<const Node>(Node{Kind::Choice, Var(), std::move(left), std::move(right)}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var:
      return a.name() == b.name();
    case Term::Kind::Lam:
      return a.name() == b.name() && a.body() == b.body();
    case Term::Kind::App:
    case Term::Kind::Choice:
      return a.node_->first == b.node_->first && a.node_->second == b.node_->second;
  }
  return false;
}

SyntaxError::SyntaxError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at offset " + std::to_string(position)), position_(position) {}

namespace {

enum class Tok { Ident, Lambda, Dot, LParen, RParen, Choice, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++i;
    } else if (c == '\\') {
      out.push_back({Tok::Lambda, "\\", i++});
    } else if (s.substr(i, 2) == "\xCE\xBB") {  // λ
      out.push_back({Tok::Lambda, "\\", i});
      i += 2;
    } else if (s.substr(i, 3) == "\xE2\x8A\x95") {  // ⊕
      out.push_back({Tok::Choice, "(+)", i});
      i += 3;
    } else if (s.substr(i, 3) == "(+)") {
      out.push_back({Tok::Choice, "(+)", i});
      i += 3;
    } else if (c == '.') {
      out.push_back({Tok::Dot, ".", i++});
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", i++});
    } else if (ident_char(c)) {
      std::size_t start = i;
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Term parse_all() {
    Term t = parse_choice();
    if (peek().kind != Tok::End) {
      throw SyntaxError("unexpected '" + peek().text + "'", peek().pos);
    }
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;

  const Token& peek() const { return toks_[at_]; }
  const Token& advance() { return toks_[at_++]; }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      throw SyntaxError(std::string("expected ") + what, peek().pos);
    }
    ++at_;
  }

  Term parse_choice() {
    Term left = parse_app();
    if (peek().kind == Tok::Choice) {
      advance();
      Term right = parse_choice();
      return Term::choice(std::move(left), std::move(right));
    }
    return left;
  }

  static bool starts_atom(Tok k) { return k == Tok::Ident || k == Tok::LParen || k == Tok::Lambda; }

  Term parse_app() {
    if (!starts_atom(peek().kind)) {
      throw SyntaxError(peek().kind == Tok::End ? "unexpected end of input" : "unexpected '" + peek().text + "'",
                        peek().pos);
    }
    Term t = parse_atom();
    while (starts_atom(peek().kind)) {
      bool last = peek().kind == Tok::Lambda;
      t = Term::app(std::move(t), parse_atom());
      if (last) break;
    }
    return t;
  }

  Term parse_atom() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::Ident:
        advance();
        return Term::var(tok.text);
      case Tok::LParen: {
        advance();
        Term t = parse_choice();
        expect(Tok::RParen, "')'");
        return t;
      }
      case Tok::Lambda: {
        advance();
        std::vector<Var> binders;
        while (peek().kind == Tok::Ident) binders.push_back(advance().text);
        if (binders.empty()) throw SyntaxError("expected binder after lambda", peek().pos);
        expect(Tok::Dot, "'.'");
        Term body = parse_choice();
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = Term::lam(*it, std::move(body));
        return body;
      }
      default:
        throw SyntaxError("unexpected '" + tok.text + "'", tok.pos);
    }
  }
};

enum class Ctx { Top, ChoiceLeft, AppFn, AppArg };

void print(const Term& t, Ctx ctx, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.name();
      return;
    case Term::Kind::Lam: {
      bool parens = ctx != Ctx::Top;
      if (parens) out += '(';
      out += '\\';
      out += t.name();
      out += ". ";
      print(t.body(), Ctx::Top, out);
      if (parens) out += ')';
      return;
    }
    case Term::Kind::App: {
      bool parens = ctx == Ctx::AppArg;
      if (parens) out += '(';
      print(t.fn(), Ctx::AppFn, out);
      out += ' ';
      print(t.arg(), Ctx::AppArg, out);
      if (parens) out += ')';
      return;
    }
    case Term::Kind::Choice: {
      bool parens = ctx != Ctx::Top;
      if (parens) out += '(';
      print(t.left(), Ctx::ChoiceLeft, out);
      out += " (+) ";
      print(t.right(), Ctx::Top, out);
      if (parens) out += ')';
      return;
    }
  }
}

void free_vars_into(const Term& t, std::vector<Var>& bound, std::set<Var>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      for (const auto& b : bound) {
        if (b == t.name()) return;
      }
      out.insert(t.name());
      return;
    case Term::Kind::Lam:
      bound.push_back(t.name());
      free_vars_into(t.body(), bound, out);
      bound.pop_back();
      return;
    case Term::Kind::App:
    case Term::Kind::Choice:
      free_vars_into(t.left(), bound, out);
      free_vars_into(t.right(), bound, out);
      return;
  }
}

}  // namespace

Term parse(std::string_view text) { return Parser(lex(text)).parse_all(); }

std::string to_string(const Term& t) {
  std::string out;
  print(t, Ctx::Top, out);
  return out;
}

std::set<Var> free_vars(const Term& t) {
  std::set<Var> out;
  std::vector<Var> bound;
  free_vars_into(t, bound, out);
  return out;
}

bool occurs_free(const Term& t, const Var& x) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name() == x;
    case Term::Kind::Lam:
      return t.name() != x && occurs_free(t.body(), x);
    default:
      return occurs_free(t.left(), x) || occurs_free(t.right(), x);
  }
}

void collect_names(const Term& t, std::set<Var>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out.insert(t.name());
      return;
    case Term::Kind::Lam:
      out.insert(t.name());
      collect_names(t.body(), out);
      return;
    default:
      collect_names(t.left(), out);
      collect_names(t.right(), out);
      return;
  }
}

Term rename_free(const Term& t, const Var& from, const Var& to) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name() == from ? Term::var(to) : t;
    case Term::Kind::Lam:
      if (t.name() == from) return t;
      return Term::lam(t.name(), rename_free(t.body(), from, to));
    case Term::Kind::App:
      return Term::app(rename_free(t.fn(), from, to), rename_free(t.arg(), from, to));
    case Term::Kind::Choice:
      return Term::choice(rename_free(t.left(), from, to), rename_free(t.right(), from, to));
  }
  return t;
}

bool is_reduced(const Capsule& c) { return c.term.is_lam(); }

bool well_formed(const Capsule& c) {
  for (const auto& x : free_vars(c.term)) {
    if (!c.env.contains(x)) return false;
  }
  bool ok = true;
  c.env.for_each([&](const Var&, const Term& v) {
    if (!ok) return;
    if (!v.is_lam()) {
      ok = false;
      return;
    }
    for (const auto& x : free_vars(v)) {
      if (!c.env.contains(x)) {
        ok = false;
        return;
      }
    }
  });
  return ok;
}

std::string to_string(const Env& env) {
  std::string out = "{";
  bool first = true;
  env.for_each([&](const Var& x, const Term& v) {
    if (!first) out += "; ";
    first = false;
    out += x;
    out += " = ";
    out += to_string(v);
  });
  out += "}";
  return out;
}

std::string to_string(const Capsule& c) { return "<" + to_string(c.term) + " | " + to_string(c.env) + ">"; }

Capsule collect_garbage(const Capsule& c) {
  Env kept;
  std::deque<Var> work;
  for (const auto& x : free_vars(c.term)) work.push_back(x);
  while (!work.empty()) {
    Var x = work.front();
    work.pop_front();
    if (kept.contains(x)) continue;
    const Term* v = c.env.find(x);
    if (v == nullptr) throw IllFormedCapsule("unbound variable " + x);
    kept = kept.insert(x, *v);
    for (const auto& y : free_vars(*v)) {
      if (!kept.contains(y)) work.push_back(y);
    }
  }
  return Capsule{c.term, kept};
}

namespace {

// Renames binders and environment variables in leftmost-outermost order.
class Canonicalizer {
 public:
  explicit Canonicalizer(const Env& env) : env_(env) {}

  Term visit(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Var: {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
          if (it->first == t.name()) return Term::var(it->second);
        }
        return Term::var(env_name(t.name()));
      }
      case Term::Kind::Lam: {
        Var fresh = next_name();
        scope_.emplace_back(t.name(), fresh);
        Term body = visit(t.body());
        scope_.pop_back();
        return Term::lam(fresh, std::move(body));
      }
      case Term::Kind::App: {
        Term fn = visit(t.fn());
        Term arg = visit(t.arg());
        return Term::app(std::move(fn), std::move(arg));
      }
      case Term::Kind::Choice: {
        Term l = visit(t.left());
        Term r = visit(t.right());
        return Term::choice(std::move(l), std::move(r));
      }
    }
    return t;
  }

  Env drain() {
    Env out;
    while (!pending_.empty()) {
      auto [old_name, new_name] = pending_.front();
      pending_.pop_front();
      const Term* v = env_.find(old_name);
      if (v == nullptr) throw IllFormedCapsule("unbound variable " + old_name);
      out = out.insert(new_name, visit(*v));
    }
    return out;
  }

 private:
  const Env& env_;
  std::vector<std::pair<Var, Var>> scope_;
  std::map<Var, Var> env_names_;
  std::deque<std::pair<Var, Var>> pending_;
  std::uint64_t counter_ = 0;

  Var next_name() { return "v" + std::to_string(counter_++); }

  const Var& env_name(const Var& x) {
    auto it = env_names_.find(x);
    if (it != env_names_.end()) return it->second;
    Var fresh = next_name();
    pending_.emplace_back(x, fresh);
    return env_names_.emplace(x, fresh).first->second;
  }
};

}  // namespace

CanonicalCapsule canonicalize(const Capsule& c) {
  if (!well_formed(c)) throw IllFormedCapsule("capsule is not well formed: " + to_string(c));
  Canonicalizer canon(c.env);
  Term term = canon.visit(c.term);
  Env env = canon.drain();
  Capsule out{std::move(term), std::move(env)};
  std::string key = to_string(out);
  return CanonicalCapsule(std::move(out), std::move(key));
}

namespace {

std::optional<std::uint64_t> reserved_index(const Var& x) {
  if (x.size() < 2 || x[0] != 'v') return std::nullopt;
  std::uint64_t k = 0;
  auto [ptr, ec] = std::from_chars(x.data() + 1, x.data() + x.size(), k);
  if (ec != std::errc() || ptr != x.data() + x.size()) return std::nullopt;
  return k;
}

}  // namespace

Var fresh_var(const std::set<Var>& avoid) {
  for (std::uint64_t k = 0;; ++k) {
    Var v = "v" + std::to_string(k);
    if (avoid.count(v) == 0) return v;
  }
}

FreshSupply::FreshSupply(const Capsule& c) {
  std::set<Var> names;
  collect_names(c.term, names);
  c.env.for_each([&](const Var& x, const Term& v) {
    names.insert(x);
    collect_names(v, names);
  });
  for (const auto& x : names) {
    if (auto k = reserved_index(x); k && *k + 1 > next_) next_ = *k + 1;
  }
}

Var FreshSupply::next() { return "v" + std::to_string(next_++); }

}  // namespace stochalc
