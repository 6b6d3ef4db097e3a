// First-order terms, formulas and sequents; substitution and unification.

#ifndef OOTP_LOGIC_HPP_
#define OOTP_LOGIC_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ootp {

// Identity of a metavariable or parameter: (name, serial).
struct Symbol {
  std::string name;
  std::size_t serial = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

enum class TermKind { Meta, Param, Bound, App };

class Term {
 public:
  static Term meta(std::string name, std::size_t serial);
  static Term param(std::string name, std::size_t serial);
  static Term bound(std::size_t index);
  static Term app(std::string fn, std::vector<Term> args = {});

  TermKind kind() const noexcept;
  bool is_meta() const noexcept { return kind() == TermKind::Meta; }
  bool is_param() const noexcept { return kind() == TermKind::Param; }
  bool is_bound() const noexcept { return kind() == TermKind::Bound; }
  bool is_app() const noexcept { return kind() == TermKind::App; }

  // Meta/Param name or App function symbol.
  const std::string& name() const noexcept;
  std::size_t serial() const noexcept;
  std::size_t index() const noexcept;
  const std::vector<Term>& args() const noexcept;
  Symbol symbol() const { return {name(), serial()}; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator<(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

enum class FormulaKind { Pred, Conn, Quant };
enum class Connective { Not, And, Or, Imp, Iff };
enum class Quantifier { All, Ex };

class Formula {
 public:
  static Formula pred(std::string name, std::vector<Term> args = {});
  static Formula conn(Connective op, std::vector<Formula> args);
  static Formula quant(Quantifier q, std::string var, Formula body);

  static Formula neg(Formula a) { return conn(Connective::Not, {std::move(a)}); }
  static Formula conj(Formula a, Formula b) { return conn(Connective::And, {std::move(a), std::move(b)}); }
  static Formula disj(Formula a, Formula b) { return conn(Connective::Or, {std::move(a), std::move(b)}); }
  static Formula imp(Formula a, Formula b) { return conn(Connective::Imp, {std::move(a), std::move(b)}); }
  static Formula iff(Formula a, Formula b) { return conn(Connective::Iff, {std::move(a), std::move(b)}); }
  static Formula forall(std::string var, Formula body) { return quant(Quantifier::All, std::move(var), std::move(body)); }
  static Formula exists(std::string var, Formula body) { return quant(Quantifier::Ex, std::move(var), std::move(body)); }

  FormulaKind kind() const noexcept;
  bool is_pred() const noexcept { return kind() == FormulaKind::Pred; }
  bool is_conn(Connective op) const noexcept;
  bool is_quant(Quantifier q) const noexcept;
  bool is_quant() const noexcept { return kind() == FormulaKind::Quant; }

  // Predicate name (Pred) or bound variable hint (Quant).
  const std::string& name() const noexcept;
  const std::vector<Term>& terms() const noexcept;
  Connective op() const noexcept;
  Quantifier quantifier() const noexcept;
  const std::vector<Formula>& parts() const noexcept;
  const Formula& body() const noexcept { return parts().front(); }
  const Formula& lhs() const noexcept { return parts().front(); }
  const Formula& rhs() const noexcept { return parts().back(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Sequent {
  std::vector<Formula> left;
  std::vector<Formula> right;

  friend bool operator==(const Sequent&, const Sequent&) = default;
};

// Same formulas on each side, ignoring order.
bool same_multiset(const Sequent& a, const Sequent& b);

class Substitution {
 public:
  Substitution() = default;

  bool empty() const noexcept { return bindings_.empty(); }
  std::size_t size() const noexcept { return bindings_.size(); }
  const Term* lookup(const Symbol& meta) const;
  const std::map<Symbol, Term>& bindings() const noexcept { return bindings_; }

  // Adds meta := t and renormalizes. Throws std::invalid_argument when t mentions meta
  // after resolution (occurs check) or meta is already bound.
  Substitution bind(const Symbol& meta, const Term& t) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<Symbol, Term> bindings_;
};

Term apply_subst(const Substitution& s, const Term& t);
Formula apply_subst(const Substitution& s, const Formula& f);
Sequent apply_subst(const Substitution& s, const Sequent& q);

// Binding-by-binding composition: apply_subst(compose(a, b), x) == apply_subst(b, apply_subst(a, x)).
Substitution compose(const Substitution& first, const Substitution& second);

// Most general unifier extending s; std::nullopt on clash or occurs-check failure.
std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& s);
std::optional<Substitution> unify(const Formula& a, const Formula& b, const Substitution& s);

// One-way matching: binds metas of pattern only, so that apply(result, pattern) == target.
std::optional<Substitution> match(const Term& pattern, const Term& target, const Substitution& s = {});

// Body of a quantified formula with the outermost bound variable replaced by t.
Formula instantiate_quant(const Formula& quantified, const Term& t);
// Replaces every occurrence of `what` in f by the variable bound by a new enclosing quantifier.
Formula abstract_over(const Formula& f, const Term& what);
// Term u with instantiate_quant(quantified, u) == instance, if one exists.
std::optional<Term> find_instance(const Formula& quantified, const Formula& instance);

bool occurs_in(const Term& needle, const Term& hay);
bool occurs_in(const Term& needle, const Formula& hay);
bool occurs_in(const Term& needle, const Sequent& hay);

void collect_metas(const Formula& f, std::set<Symbol>& out);
void collect_params(const Formula& f, std::set<Symbol>& out);
void collect_metas(const Sequent& q, std::set<Symbol>& out);
void collect_params(const Sequent& q, std::set<Symbol>& out);
// Every function, predicate, parameter and metavariable name used in f.
void collect_names(const Formula& f, std::set<std::string>& out);
// No dangling Bound indices. A term on its own is closed when it has no Bound node at all.
bool is_closed(const Formula& f);
bool is_closed(const Term& t);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Name resolution for the parser. `?x` resolves to an existing meta named x when present,
// otherwise to a fresh one; bare identifiers used as terms resolve to registered params.
struct ParseScope {
  std::map<std::string, Term> metas;
  std::map<std::string, Term> params;
  std::size_t next_serial = 1;
};

Formula parse_formula(std::string_view text);
Formula parse_formula(std::string_view text, ParseScope& scope);
Term parse_term(std::string_view text, ParseScope& scope);
// `A, B |- C, D`; text without a turnstile is read as `|- text`.
Sequent parse_sequent(std::string_view text);
Sequent parse_sequent(std::string_view text, ParseScope& scope);

std::string print_term(const Term& t);
std::string print_formula(const Formula& f);
std::string print_sequent(const Sequent& q);

// Session-global serial supply; thread safe.
std::size_t fresh_serial();

}  // namespace ootp

#endif  // OOTP_LOGIC_HPP_
