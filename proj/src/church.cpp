#include "stochalc/church.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace stochalc {

Term church_numeral(std::uint64_t n) {
  Term body = Term::var("x");
  for (std::uint64_t i = 0; i < n; ++i) body = Term::app(Term::var("f"), body);
  return Term::lam("f", Term::lam("x", body));
}

const std::map<Var, Term>& prelude() {
  static const std::map<Var, Term> p = {
      {"I", parse("\\x. x")},
      {"K", parse("\\x y. x")},
      {"KI", parse("\\x y. y")},
      {"TRUE", parse("\\x y. x")},
      {"FALSE", parse("\\x y. y")},
      {"OMEGA", parse("(\\x. x x) (\\x. x x)")},
      {"SUCC", parse("\\n f x. f (n f x)")},
      {"PLUS", parse("\\m n f x. m f (n f x)")},
  };
  return p;
}

namespace {

bool all_digits(const Var& x) {
  return !x.empty() && std::all_of(x.begin(), x.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

Term expand(const Term& t, const std::map<Var, Term>& macros, std::vector<Var>& bound) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      if (std::find(bound.begin(), bound.end(), t.name()) != bound.end()) return t;
      auto it = macros.find(t.name());
      if (it != macros.end()) return it->second;
      if (all_digits(t.name())) return church_numeral(std::stoull(t.name()));
      return t;
    }
    case Term::Kind::Lam: {
      bound.push_back(t.name());
      Term body = expand(t.body(), macros, bound);
      bound.pop_back();
      return Term::lam(t.name(), body);
    }
    case Term::Kind::App:
      return Term::app(expand(t.fn(), macros, bound), expand(t.arg(), macros, bound));
    case Term::Kind::Choice:
      return Term::choice(expand(t.left(), macros, bound), expand(t.right(), macros, bound));
  }
  return t;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// "NAME = TERM" after the keyword.
std::pair<Var, std::string> split_definition(const std::string& rest, std::size_t line_no) {
  auto eq = rest.find('=');
  if (eq == std::string::npos) throw SyntaxError("line " + std::to_string(line_no) + ": expected NAME = TERM", 0);
  Var name = trim(std::string_view(rest).substr(0, eq));
  if (name.empty() || name.find_first_of(" \t") != std::string::npos) {
    throw SyntaxError("line " + std::to_string(line_no) + ": bad definition name", 0);
  }
  return {name, rest.substr(eq + 1)};
}

}  // namespace

Term expand_macros(const Term& t, const std::map<Var, Term>& macros) {
  std::vector<Var> bound;
  return expand(t, macros, bound);
}

Capsule parse_program(std::string_view text) {
  std::map<Var, Term> macros = prelude();
  std::vector<std::pair<Var, Term>> recs;
  std::string main;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("let ", 0) == 0 || t.rfind("rec ", 0) == 0) {
      auto [name, body_text] = split_definition(t.substr(4), line_no);
      Term body = parse(body_text);
      if (t[0] == 'l') {
        Term expanded = expand_macros(body, macros);
        if (!free_vars(expanded).empty()) {
          throw SyntaxError("line " + std::to_string(line_no) + ": macro " + name + " is not closed", 0);
        }
        macros.insert_or_assign(name, expanded);
      } else {
        recs.emplace_back(name, body);
      }
      continue;
    }
    main += t;
    main += '\n';
  }
  if (trim(main).empty()) throw SyntaxError("program has no main term", 0);

  // Environment names shadow macros of the same name.
  for (const auto& [name, body] : recs) macros.erase(name);
  Env env;
  for (const auto& [name, body] : recs) {
    Term v = expand_macros(body, macros);
    if (!v.is_lam()) throw SyntaxError("rec binding " + name + " must be an abstraction", 0);
    env = env.insert(name, v);
  }
  Capsule c{expand_macros(parse(main), macros), env};
  if (!well_formed(c)) {
    std::string missing;
    for (const auto& x : free_vars(c.term)) {
      if (!env.contains(x)) missing += " " + x;
    }
    throw IllFormedCapsule("program has unbound names:" + (missing.empty() ? std::string(" (in a binding)") : missing));
  }
  return c;
}

namespace {

Term marker() { return parse("\\m. (\\x. x x) (\\x. x x)"); }

}  // namespace

std::optional<ChurchValue> decode_church(const CanonicalCapsule& v, Fuel fuel) {
  const Capsule& value = v.capsule();
  if (!value.term.is_lam()) return std::nullopt;
  // Canonical names are all v<k>, so these cannot collide.
  Term a = marker();
  Term b = marker();
  Env env = value.env.insert("P", value.term).insert("A", a).insert("B", b);
  ChurchValue out;

  {
    CoinSource zeros(CoinGenerator::constant(false));
    Capsule probe{parse("P A B"), env};
    Outcome o = big_step(probe, zeros, fuel);
    if (o.is_value()) {
      if (o.value->term.same_node(a)) out.boolean = true;
      if (o.value->term.same_node(b)) out.boolean = false;
    }
  }
  {
    CoinSource zeros(CoinGenerator::constant(false));
    Capsule probe{parse("P F A"), env.insert("F", parse("\\z. \\w. w z"))};
    Outcome o = big_step(probe, zeros, fuel);
    if (o.is_value()) {
      Term t = o.value->term;
      const Env& e = o.value->env;
      std::uint64_t n = 0;
      for (;;) {
        if (t.same_node(a)) {
          out.numeral = n;
          break;
        }
        // F applied to z returns \w. w z with z bound in the environment.
        if (!t.is_lam() || !t.body().is_app()) break;
        const Term& fn = t.body().fn();
        const Term& arg = t.body().arg();
        if (!fn.is_var() || fn.name() != t.name() || !arg.is_var() || arg.name() == t.name()) break;
        const Term* next = e.find(arg.name());
        if (next == nullptr) break;
        t = *next;
        ++n;
      }
    }
  }
  if (!out.boolean && !out.numeral) return std::nullopt;
  return out;
}

std::string to_string(const ChurchValue& v) {
  std::string out;
  if (v.boolean) out += *v.boolean ? "true" : "false";
  if (v.numeral) {
    if (!out.empty()) out += "/";
    out += std::to_string(*v.numeral);
  }
  return out;
}

}  // namespace stochalc
