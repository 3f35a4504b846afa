#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "stochalc/persistent_map.hpp"

namespace stochalc {

using Var = std::string;

// Untyped lambda terms with binary probabilistic choice. Immutable and
// structurally shared; copying a Term copies a pointer.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Lam, App, Choice };

  static Term var(Var name);
  static Term lam(Var binder, Term body);
  static Term app(Term fn, Term arg);
  static Term choice(Term left, Term right);

  [[nodiscard]] Kind kind() const;
  [[nodiscard]] bool is_var() const { return kind() == Kind::Var; }
  [[nodiscard]] bool is_lam() const { return kind() == Kind::Lam; }
  [[nodiscard]] bool is_app() const { return kind() == Kind::App; }
  [[nodiscard]] bool is_choice() const { return kind() == Kind::Choice; }

  // Variable name, or the binder of an abstraction.
  [[nodiscard]] const Var& name() const;
  [[nodiscard]] const Term& body() const;
  [[nodiscard]] const Term& fn() const;
  [[nodiscard]] const Term& arg() const;
  [[nodiscard]] const Term& left() const;
  [[nodiscard]] const Term& right() const;
  [[nodiscard]] const void* identity() const { return node_.get(); }

  [[nodiscard]] bool same_node(const Term& other) const { return node_ == other.node_; }

  // Syntactic equality (not modulo alpha).
  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  Term() = default;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  Var name;
  // Lam: first = body. App: first = fn, second = arg. Choice: left, right.
  Term first;
  Term second;
};

inline Term::Kind Term::kind() const { return node_->kind; }
inline const Var& Term::name() const { return node_->name; }
inline const Term& Term::body() const { return node_->first; }
inline const Term& Term::fn() const { return node_->first; }
inline const Term& Term::arg() const { return node_->second; }
inline const Term& Term::left() const { return node_->first; }
inline const Term& Term::right() const { return node_->second; }

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t position);
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// T ::= ident | \ident. T | T T | T (+) T | (T)
// Application is left-associative; (+) binds weakest and associates to the
// right; an abstraction body extends as far right as possible. `λ` and `⊕` are
// accepted as spellings of `\` and `(+)`, and `\x y. M` abbreviates
// `\x. \y. M`.
Term parse(std::string_view text);

std::string to_string(const Term& t);

std::set<Var> free_vars(const Term& t);
bool occurs_free(const Term& t, const Var& x);
// Every name occurring in t, bound or free.
void collect_names(const Term& t, std::set<Var>& out);
// t[to/from] for a variable `to` that occurs nowhere in t.
Term rename_free(const Term& t, const Var& from, const Var& to);

using Env = PersistentMap<Var, Term>;

// A term together with an environment of abstractions, closed under free
// variables.
struct Capsule {
  Term term;
  Env env;
};

bool is_reduced(const Capsule& c);
bool well_formed(const Capsule& c);
std::string to_string(const Capsule& c);
std::string to_string(const Env& env);

class IllFormedCapsule : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A capsule after garbage collection and deterministic renaming. Equal
// canonical capsules are exactly the alpha/GC-equivalent ones.
class CanonicalCapsule {
 public:
  [[nodiscard]] const Capsule& capsule() const { return capsule_; }
  [[nodiscard]] const std::string& key() const { return key_; }

  friend bool operator==(const CanonicalCapsule& a, const CanonicalCapsule& b) {
    return a.key_ == b.key_;
  }
  friend auto operator<=>(const CanonicalCapsule& a, const CanonicalCapsule& b) {
    return a.key_ <=> b.key_;
  }

 private:
  friend CanonicalCapsule canonicalize(const Capsule& c);
  CanonicalCapsule(Capsule c, std::string key) : capsule_(std::move(c)), key_(std::move(key)) {}
  Capsule capsule_;
  std::string key_;
};

CanonicalCapsule canonicalize(const Capsule& c);

// Removes bindings unreachable from the term.
Capsule collect_garbage(const Capsule& c);

// Smallest v<k> not in `avoid`.
Var fresh_var(const std::set<Var>& avoid);

// Monotone counter over the reserved namespace v<k>, started above every
// v<k> name already present in a capsule. Names it hands out are fresh for the
// capsule and everything the evaluators derive from it.
class FreshSupply {
 public:
  FreshSupply() = default;
  explicit FreshSupply(const Capsule& c);
  Var next();
  [[nodiscard]] std::uint64_t peek() const { return next_; }

 private:
  std::uint64_t next_ = 0;
};

}  // namespace stochalc
