#include <algorithm>
#include <atomic>

#include "ootp/logic.hpp"

namespace ootp {

struct Term::Node {
  TermKind kind;
  std::string name;
  std::size_t serial = 0;
  std::size_t index = 0;
  std::vector<Term> args;
};

Term Term::meta(std::string name, std::size_t serial) {
  return Term(std::make_shared<const Node>(Node{TermKind::Meta, std::move(name), serial, 0, {}}));
}

Term Term::param(std::string name, std::size_t serial) {
  return Term(std::make_shared<const Node>(Node{TermKind::Param, std::move(name), serial, 0, {}}));
}

Term Term::bound(std::size_t index) {
  return Term(std::make_shared<const Node>(Node{TermKind::Bound, {}, 0, index, {}}));
}

Term Term::app(std::string fn, std::vector<Term> args) {
  return Term(std::make_shared<const Node>(Node{TermKind::App, std::move(fn), 0, 0, std::move(args)}));
}

TermKind Term::kind() const noexcept { return node_->kind; }
const std::string& Term::name() const noexcept { return node_->name; }
std::size_t Term::serial() const noexcept { return node_->serial; }
std::size_t Term::index() const noexcept { return node_->index; }
const std::vector<Term>& Term::args() const noexcept { return node_->args; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.serial == y.serial && x.index == y.index &&
         x.args == y.args;
}

bool operator<(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return x.kind < y.kind;
  if (x.name != y.name) return x.name < y.name;
  if (x.serial != y.serial) return x.serial < y.serial;
  if (x.index != y.index) return x.index < y.index;
  return std::lexicographical_compare(x.args.begin(), x.args.end(), y.args.begin(), y.args.end());
}

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  std::vector<Term> terms;
  Connective op = Connective::Not;
  Quantifier q = Quantifier::All;
  std::vector<Formula> parts;
};

Formula Formula::pred(std::string name, std::vector<Term> args) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Pred, std::move(name), std::move(args), Connective::Not, Quantifier::All, {}}));
}

Formula Formula::conn(Connective op, std::vector<Formula> args) {
  const std::size_t want = op == Connective::Not ? 1 : 2;
  if (args.size() != want) throw std::invalid_argument("connective arity mismatch");
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Conn, {}, {}, op, Quantifier::All, std::move(args)}));
}

Formula Formula::quant(Quantifier q, std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Quant, std::move(var), {}, Connective::Not, q, {std::move(body)}}));
}

FormulaKind Formula::kind() const noexcept { return node_->kind; }
bool Formula::is_conn(Connective op) const noexcept {
  return node_->kind == FormulaKind::Conn && node_->op == op;
}
bool Formula::is_quant(Quantifier q) const noexcept {
  return node_->kind == FormulaKind::Quant && node_->q == q;
}
const std::string& Formula::name() const noexcept { return node_->name; }
const std::vector<Term>& Formula::terms() const noexcept { return node_->terms; }
Connective Formula::op() const noexcept { return node_->op; }
Quantifier Formula::quantifier() const noexcept { return node_->q; }
const std::vector<Formula>& Formula::parts() const noexcept { return node_->parts; }

// The bound variable hint is display-only and does not take part in equality.
bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case FormulaKind::Pred: return x.name == y.name && x.terms == y.terms;
    case FormulaKind::Conn: return x.op == y.op && x.parts == y.parts;
    case FormulaKind::Quant: return x.q == y.q && x.parts == y.parts;
  }
  return false;
}

bool operator<(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return x.kind < y.kind;
  switch (x.kind) {
    case FormulaKind::Pred:
      if (x.name != y.name) return x.name < y.name;
      return std::lexicographical_compare(x.terms.begin(), x.terms.end(), y.terms.begin(), y.terms.end());
    case FormulaKind::Conn:
      if (x.op != y.op) return x.op < y.op;
      break;
    case FormulaKind::Quant:
      if (x.q != y.q) return x.q < y.q;
      break;
  }
  return std::lexicographical_compare(x.parts.begin(), x.parts.end(), y.parts.begin(), y.parts.end());
}

namespace {

bool same_side(std::vector<Formula> a, std::vector<Formula> b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

bool same_multiset(const Sequent& a, const Sequent& b) {
  return same_side(a.left, b.left) && same_side(a.right, b.right);
}

std::size_t fresh_serial() {
  static std::atomic<std::size_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

// ---------------------------------------------------------------------------
// Traversals

namespace {

template <class F>
void walk_terms(const Formula& f, F&& visit) {
  switch (f.kind()) {
    case FormulaKind::Pred:
      for (const auto& t : f.terms()) visit(t);
      break;
    default:
      for (const auto& p : f.parts()) walk_terms(p, visit);
  }
}

template <class F>
void walk_subterms(const Term& t, F&& visit) {
  visit(t);
  for (const auto& a : t.args()) walk_subterms(a, visit);
}

Term map_term(const Term& t, std::size_t depth, const auto& leaf) {
  if (t.is_app()) {
    if (t.args().empty()) return leaf(t, depth);
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (const auto& a : t.args()) {
      args.push_back(map_term(a, depth, leaf));
      changed = changed || !(args.back() == a);
    }
    return changed ? Term::app(t.name(), std::move(args)) : t;
  }
  return leaf(t, depth);
}

// Rebuilds f with every term mapped; `leaf(term, binder_depth)` sees Metas, Params, Bounds
// and constants.
Formula map_formula(const Formula& f, std::size_t depth, const auto& leaf) {
  switch (f.kind()) {
    case FormulaKind::Pred: {
      std::vector<Term> ts;
      ts.reserve(f.terms().size());
      for (const auto& t : f.terms()) ts.push_back(map_term(t, depth, leaf));
      return Formula::pred(f.name(), std::move(ts));
    }
    case FormulaKind::Conn: {
      std::vector<Formula> ps;
      for (const auto& p : f.parts()) ps.push_back(map_formula(p, depth, leaf));
      return Formula::conn(f.op(), std::move(ps));
    }
    case FormulaKind::Quant:
      return Formula::quant(f.quantifier(), f.name(), map_formula(f.body(), depth + 1, leaf));
  }
  return f;
}

bool has_metas(const Term& t) {
  bool found = false;
  walk_subterms(t, [&](const Term& s) { found = found || s.is_meta(); });
  return found;
}

bool has_metas(const Formula& f) {
  bool found = false;
  walk_terms(f, [&](const Term& t) { found = found || has_metas(t); });
  return found;
}

}  // namespace

bool occurs_in(const Term& needle, const Term& hay) {
  if (needle == hay) return true;
  for (const auto& a : hay.args())
    if (occurs_in(needle, a)) return true;
  return false;
}

bool occurs_in(const Term& needle, const Formula& hay) {
  bool found = false;
  walk_terms(hay, [&](const Term& t) { found = found || occurs_in(needle, t); });
  return found;
}

bool occurs_in(const Term& needle, const Sequent& hay) {
  for (const auto& f : hay.left)
    if (occurs_in(needle, f)) return true;
  for (const auto& f : hay.right)
    if (occurs_in(needle, f)) return true;
  return false;
}

void collect_metas(const Formula& f, std::set<Symbol>& out) {
  walk_terms(f, [&](const Term& t) {
    walk_subterms(t, [&](const Term& s) {
      if (s.is_meta()) out.insert(s.symbol());
    });
  });
}

void collect_params(const Formula& f, std::set<Symbol>& out) {
  walk_terms(f, [&](const Term& t) {
    walk_subterms(t, [&](const Term& s) {
      if (s.is_param()) out.insert(s.symbol());
    });
  });
}

void collect_metas(const Sequent& q, std::set<Symbol>& out) {
  for (const auto& f : q.left) collect_metas(f, out);
  for (const auto& f : q.right) collect_metas(f, out);
}

void collect_params(const Sequent& q, std::set<Symbol>& out) {
  for (const auto& f : q.left) collect_params(f, out);
  for (const auto& f : q.right) collect_params(f, out);
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  if (f.is_pred()) out.insert(f.name());
  for (const auto& p : f.parts()) collect_names(p, out);
  walk_terms(f, [&](const Term& t) {
    walk_subterms(t, [&](const Term& s) {
      if (!s.is_bound()) out.insert(s.name());
    });
  });
}

namespace {

bool closed_at(const Formula& f, std::size_t depth) {
  switch (f.kind()) {
    case FormulaKind::Pred: {
      bool ok = true;
      for (const auto& t : f.terms())
        walk_subterms(t, [&](const Term& s) { ok = ok && !(s.is_bound() && s.index() >= depth); });
      return ok;
    }
    case FormulaKind::Conn:
      return std::all_of(f.parts().begin(), f.parts().end(),
                         [&](const Formula& p) { return closed_at(p, depth); });
    case FormulaKind::Quant:
      return closed_at(f.body(), depth + 1);
  }
  return true;
}

}  // namespace

bool is_closed(const Formula& f) { return closed_at(f, 0); }

bool is_closed(const Term& t) {
  bool ok = true;
  walk_subterms(t, [&](const Term& s) { ok = ok && !s.is_bound(); });
  return ok;
}

// ---------------------------------------------------------------------------
// Substitution

const Term* Substitution::lookup(const Symbol& meta) const {
  auto it = bindings_.find(meta);
  return it == bindings_.end() ? nullptr : &it->second;
}

Substitution Substitution::bind(const Symbol& meta, const Term& t) const {
  if (bindings_.count(meta)) throw std::invalid_argument("metavariable ?" + meta.name + " already bound");
  if (!is_closed(t)) throw std::invalid_argument("?" + meta.name + " cannot stand for a bound variable");
  Term value = apply_subst(*this, t);
  const Term self = Term::meta(meta.name, meta.serial);
  if (occurs_in(self, value)) throw std::invalid_argument("occurs check: ?" + meta.name);
  Substitution single;
  single.bindings_.emplace(meta, value);
  Substitution out;
  for (const auto& [m, rhs] : bindings_) out.bindings_.emplace(m, apply_subst(single, rhs));
  out.bindings_.emplace(meta, std::move(value));
  return out;
}

Term apply_subst(const Substitution& s, const Term& t) {
  if (s.empty()) return t;
  return map_term(t, 0, [&](const Term& leaf, std::size_t) {
    if (leaf.is_meta())
      if (const Term* v = s.lookup(leaf.symbol())) return *v;
    return leaf;
  });
}

Formula apply_subst(const Substitution& s, const Formula& f) {
  if (s.empty() || !has_metas(f)) return f;
  return map_formula(f, 0, [&](const Term& leaf, std::size_t) {
    if (leaf.is_meta())
      if (const Term* v = s.lookup(leaf.symbol())) return *v;
    return leaf;
  });
}

Sequent apply_subst(const Substitution& s, const Sequent& q) {
  Sequent out;
  for (const auto& f : q.left) out.left.push_back(apply_subst(s, f));
  for (const auto& f : q.right) out.right.push_back(apply_subst(s, f));
  return out;
}

Substitution compose(const Substitution& first, const Substitution& second) {
  // first's bindings pushed through second, then second's bindings outside dom(first).
  Substitution result;
  std::map<Symbol, Term> raw;
  for (const auto& [m, t] : first.bindings()) raw.emplace(m, apply_subst(second, t));
  for (const auto& [m, t] : second.bindings()) raw.emplace(m, t);
  for (const auto& [m, t] : raw) {
    std::set<Symbol> ms;
    walk_subterms(t, [&](const Term& s) {
      if (s.is_meta()) ms.insert(s.symbol());
    });
    for (const auto& used : ms)
      if (raw.count(used))
        throw std::invalid_argument("compose: result would not be idempotent");
  }
  for (const auto& [m, t] : raw) result = result.bind(m, t);
  return result;
}

// ---------------------------------------------------------------------------
// Unification

namespace {

Term resolve(const Term& t, const Substitution& s) {
  if (t.is_meta())
    if (const Term* v = s.lookup(t.symbol())) return *v;
  return t;
}

std::optional<Substitution> unify_terms(const Term& a0, const Term& b0, Substitution s) {
  const Term a = resolve(a0, s);
  const Term b = resolve(b0, s);
  if (a == b) return s;
  if (a.is_meta() || b.is_meta()) {
    const Term& m = a.is_meta() ? a : b;
    const Term& other = a.is_meta() ? b : a;
    const Term value = apply_subst(s, other);
    // A metavariable never denotes a variable bound inside the formulas being unified.
    if (occurs_in(m, value) || !is_closed(value)) return std::nullopt;
    return s.bind(m.symbol(), value);
  }
  if (!a.is_app() || !b.is_app()) return std::nullopt;
  if (a.name() != b.name() || a.args().size() != b.args().size()) return std::nullopt;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    auto next = unify_terms(a.args()[i], b.args()[i], std::move(s));
    if (!next) return std::nullopt;
    s = std::move(*next);
  }
  return s;
}

std::optional<Substitution> unify_formulas(const Formula& a, const Formula& b, Substitution s) {
  if (a.kind() != b.kind()) return std::nullopt;
  switch (a.kind()) {
    case FormulaKind::Pred:
      if (a.name() != b.name() || a.terms().size() != b.terms().size()) return std::nullopt;
      for (std::size_t i = 0; i < a.terms().size(); ++i) {
        auto next = unify_terms(a.terms()[i], b.terms()[i], std::move(s));
        if (!next) return std::nullopt;
        s = std::move(*next);
      }
      return s;
    case FormulaKind::Conn:
      if (a.op() != b.op()) return std::nullopt;
      break;
    case FormulaKind::Quant:
      if (a.quantifier() != b.quantifier()) return std::nullopt;
      break;
  }
  for (std::size_t i = 0; i < a.parts().size(); ++i) {
    auto next = unify_formulas(a.parts()[i], b.parts()[i], std::move(s));
    if (!next) return std::nullopt;
    s = std::move(*next);
  }
  return s;
}

std::optional<Substitution> match_terms(const Term& p, const Term& t, Substitution s) {
  if (p.is_meta()) {
    if (const Term* v = s.lookup(p.symbol())) {
      if (*v == t) return s;
      return std::nullopt;
    }
    if (occurs_in(p, t) || !is_closed(t)) return std::nullopt;
    return s.bind(p.symbol(), t);
  }
  if (!p.is_app() || !t.is_app()) {
    if (p == t) return s;
    return std::nullopt;
  }
  if (p.name() != t.name() || p.args().size() != t.args().size()) return std::nullopt;
  for (std::size_t i = 0; i < p.args().size(); ++i) {
    auto next = match_terms(p.args()[i], t.args()[i], std::move(s));
    if (!next) return std::nullopt;
    s = std::move(*next);
  }
  return s;
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& s) {
  return unify_terms(a, b, s);
}

std::optional<Substitution> unify(const Formula& a, const Formula& b, const Substitution& s) {
  return unify_formulas(a, b, s);
}

std::optional<Substitution> match(const Term& pattern, const Term& target, const Substitution& s) {
  return match_terms(pattern, target, s);
}

// ---------------------------------------------------------------------------
// Quantifier instantiation

Formula instantiate_quant(const Formula& quantified, const Term& t) {
  if (!quantified.is_quant()) throw std::invalid_argument("instantiate_quant: not a quantified formula");
  return map_formula(quantified.body(), 0, [&](const Term& leaf, std::size_t depth) {
    if (!leaf.is_bound()) return leaf;
    if (leaf.index() == depth) return t;
    if (leaf.index() > depth) return Term::bound(leaf.index() - 1);
    return leaf;
  });
}

namespace {

Term abstract_term(const Term& t, const Term& what, std::size_t depth) {
  if (t == what) return Term::bound(depth);
  if (t.is_bound()) return t.index() >= depth ? Term::bound(t.index() + 1) : t;
  if (!t.is_app() || t.args().empty()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(abstract_term(a, what, depth));
  return Term::app(t.name(), std::move(args));
}

Formula abstract_formula(const Formula& f, const Term& what, std::size_t depth) {
  switch (f.kind()) {
    case FormulaKind::Pred: {
      std::vector<Term> ts;
      for (const auto& t : f.terms()) ts.push_back(abstract_term(t, what, depth));
      return Formula::pred(f.name(), std::move(ts));
    }
    case FormulaKind::Conn: {
      std::vector<Formula> ps;
      for (const auto& p : f.parts()) ps.push_back(abstract_formula(p, what, depth));
      return Formula::conn(f.op(), std::move(ps));
    }
    case FormulaKind::Quant:
      return Formula::quant(f.quantifier(), f.name(), abstract_formula(f.body(), what, depth + 1));
  }
  return f;
}

// Collects the term standing where Bound(depth) stands in `pattern`; false on mismatch.
bool find_term(const Term& pattern, const Term& inst, std::size_t depth, std::optional<Term>& found) {
  if (pattern.is_bound() && pattern.index() == depth) {
    if (found && !(*found == inst)) return false;
    found = inst;
    return true;
  }
  if (pattern.is_bound()) {
    const std::size_t want = pattern.index() > depth ? pattern.index() - 1 : pattern.index();
    return inst.is_bound() && inst.index() == want;
  }
  if (!pattern.is_app()) return pattern == inst;
  if (!inst.is_app() || pattern.name() != inst.name() || pattern.args().size() != inst.args().size())
    return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!find_term(pattern.args()[i], inst.args()[i], depth, found)) return false;
  return true;
}

bool find_formula(const Formula& pattern, const Formula& inst, std::size_t depth, std::optional<Term>& found) {
  if (pattern.kind() != inst.kind()) return false;
  switch (pattern.kind()) {
    case FormulaKind::Pred:
      if (pattern.name() != inst.name() || pattern.terms().size() != inst.terms().size()) return false;
      for (std::size_t i = 0; i < pattern.terms().size(); ++i)
        if (!find_term(pattern.terms()[i], inst.terms()[i], depth, found)) return false;
      return true;
    case FormulaKind::Conn:
      if (pattern.op() != inst.op()) return false;
      for (std::size_t i = 0; i < pattern.parts().size(); ++i)
        if (!find_formula(pattern.parts()[i], inst.parts()[i], depth, found)) return false;
      return true;
    case FormulaKind::Quant:
      if (pattern.quantifier() != inst.quantifier()) return false;
      return find_formula(pattern.body(), inst.body(), depth + 1, found);
  }
  return false;
}

}  // namespace

Formula abstract_over(const Formula& f, const Term& what) { return abstract_formula(f, what, 0); }

std::optional<Term> find_instance(const Formula& quantified, const Formula& instance) {
  if (!quantified.is_quant()) return std::nullopt;
  std::optional<Term> found;
  if (!find_formula(quantified.body(), instance, 0, found)) return std::nullopt;
  // Vacuous quantifier: any witness works.
  Term u = found ? *found : Term::app("c");
  if (!(instantiate_quant(quantified, u) == instance)) return std::nullopt;
  return u;
}

}  // namespace ootp
