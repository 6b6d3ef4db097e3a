#include "oracle.hpp"

#include <map>
#include <string>
#include <vector>

namespace oracle {

using namespace ootp;

namespace {

void atoms_of(const Formula& f, std::map<std::string, int>& atoms, bool& ok) {
  switch (f.kind()) {
    case FormulaKind::Pred:
      if (!f.terms().empty()) ok = false;
      atoms.emplace(f.name(), static_cast<int>(atoms.size()));
      break;
    case FormulaKind::Conn:
      for (const auto& p : f.parts()) atoms_of(p, atoms, ok);
      break;
    case FormulaKind::Quant:
      ok = false;
      break;
  }
}

bool eval_prop(const Formula& f, const std::map<std::string, int>& atoms, unsigned bits) {
  switch (f.kind()) {
    case FormulaKind::Pred: return (bits >> atoms.at(f.name())) & 1U;
    case FormulaKind::Conn: {
      const bool a = eval_prop(f.lhs(), atoms, bits);
      switch (f.op()) {
        case Connective::Not: return !a;
        case Connective::And: return a && eval_prop(f.rhs(), atoms, bits);
        case Connective::Or: return a || eval_prop(f.rhs(), atoms, bits);
        case Connective::Imp: return !a || eval_prop(f.rhs(), atoms, bits);
        case Connective::Iff: return a == eval_prop(f.rhs(), atoms, bits);
      }
      break;
    }
    case FormulaKind::Quant: break;
  }
  return false;
}

// Symbol key for interpretation tables.
std::string key_of(const Term& t) {
  switch (t.kind()) {
    case TermKind::Meta: return "?" + t.name() + "#" + std::to_string(t.serial());
    case TermKind::Param: return "!" + t.name() + "#" + std::to_string(t.serial());
    default: return t.name();
  }
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

// Integer-indexed copy of a formula; symbols are positions in the signature.
struct CTerm {
  int bound = -1;  // de Bruijn index, or -1 for an application
  int fn = -1;
  std::vector<CTerm> args;
};

struct CFormula {
  int kind = 0;  // 0 pred, 1 not, 2 and, 3 or, 4 imp, 5 iff, 6 all, 7 ex
  int pred = -1;
  std::vector<CTerm> terms;
  std::vector<CFormula> parts;
};

struct Signature {
  std::map<std::string, int> fn_ids, pred_ids;
  std::vector<std::size_t> fn_arity, pred_arity;

  int fn(const std::string& k, std::size_t arity) {
    auto [it, fresh] = fn_ids.emplace(k, static_cast<int>(fn_arity.size()));
    if (fresh) fn_arity.push_back(arity);
    return it->second;
  }
  int pred(const std::string& k, std::size_t arity) {
    // Same name with different arities are different symbols.
    auto [it, fresh] = pred_ids.emplace(k + "/" + std::to_string(arity), static_cast<int>(pred_arity.size()));
    if (fresh) pred_arity.push_back(arity);
    return it->second;
  }
};

CTerm compile(const Term& t, Signature& sig) {
  CTerm c;
  if (t.is_bound()) {
    c.bound = static_cast<int>(t.index());
    return c;
  }
  c.fn = sig.fn(key_of(t), t.args().size());
  for (const auto& a : t.args()) c.args.push_back(compile(a, sig));
  return c;
}

CFormula compile(const Formula& f, Signature& sig) {
  CFormula c;
  switch (f.kind()) {
    case FormulaKind::Pred:
      c.pred = sig.pred(f.name(), f.terms().size());
      for (const auto& t : f.terms()) c.terms.push_back(compile(t, sig));
      return c;
    case FormulaKind::Conn:
      c.kind = 1 + static_cast<int>(f.op());
      break;
    case FormulaKind::Quant:
      c.kind = f.is_quant(Quantifier::All) ? 6 : 7;
      break;
  }
  for (const auto& p : f.parts()) c.parts.push_back(compile(p, sig));
  return c;
}

// Table cells hold -1 until the search assigns them.
struct Model {
  int n;
  std::vector<std::vector<int>> fns;    // values in [0, n)
  std::vector<std::vector<int>> preds;  // 0/1
};

// Thrown when evaluation reads an unassigned cell.
struct NeedCell {
  bool pred;
  std::size_t table, index;
};

int read_cell(const Model& m, bool pred, std::size_t table, std::size_t index) {
  const int v = (pred ? m.preds : m.fns)[table][index];
  if (v < 0) throw NeedCell{pred, table, index};
  return v;
}

int eval_term(const CTerm& t, const Model& m, const std::vector<int>& env) {
  if (t.bound >= 0) return env[env.size() - 1 - static_cast<std::size_t>(t.bound)];
  std::size_t idx = 0;
  for (const auto& a : t.args) idx = idx * static_cast<std::size_t>(m.n) + static_cast<std::size_t>(eval_term(a, m, env));
  return read_cell(m, false, static_cast<std::size_t>(t.fn), idx);
}

bool eval(const CFormula& f, const Model& m, std::vector<int>& env) {
  switch (f.kind) {
    case 0: {
      std::size_t idx = 0;
      for (const auto& t : f.terms) idx = idx * static_cast<std::size_t>(m.n) + static_cast<std::size_t>(eval_term(t, m, env));
      return read_cell(m, true, static_cast<std::size_t>(f.pred), idx) != 0;
    }
    case 1: return !eval(f.parts[0], m, env);
    case 2: return eval(f.parts[0], m, env) && eval(f.parts[1], m, env);
    case 3: return eval(f.parts[0], m, env) || eval(f.parts[1], m, env);
    case 4: return !eval(f.parts[0], m, env) || eval(f.parts[1], m, env);
    case 5: return eval(f.parts[0], m, env) == eval(f.parts[1], m, env);
    default: {
      const bool all = f.kind == 6;
      for (int v = 0; v < m.n; ++v) {
        env.push_back(v);
        const bool b = eval(f.parts[0], m, env);
        env.pop_back();
        if (all && !b) return false;
        if (!all && b) return true;
      }
      return all;
    }
  }
}

bool sequent_holds(const std::vector<CFormula>& left, const std::vector<CFormula>& right, const Model& m) {
  std::vector<int> env;
  for (const auto& f : left)
    if (!eval(f, m, env)) return true;
  for (const auto& f : right)
    if (eval(f, m, env)) return true;
  return false;
}

}  // namespace

bool is_propositional(const Sequent& s) {
  std::map<std::string, int> atoms;
  bool ok = true;
  for (const auto& f : s.left) atoms_of(f, atoms, ok);
  for (const auto& f : s.right) atoms_of(f, atoms, ok);
  return ok && atoms.size() <= 20;
}

bool truth_table_valid(const Sequent& s) {
  std::map<std::string, int> atoms;
  bool ok = true;
  for (const auto& f : s.left) atoms_of(f, atoms, ok);
  for (const auto& f : s.right) atoms_of(f, atoms, ok);
  const unsigned rows = 1U << atoms.size();
  for (unsigned bits = 0; bits < rows; ++bits) {
    bool lhs = true;
    for (const auto& f : s.left) lhs = lhs && eval_prop(f, atoms, bits);
    bool rhs = false;
    for (const auto& f : s.right) rhs = rhs || eval_prop(f, atoms, bits);
    if (lhs && !rhs) return false;
  }
  return true;
}

namespace {

enum class Search { Holds, Fails, Budget };

// Assigns cells in the order evaluation reads them. A falsifying partial model extends to a
// total one, so cells never read are never enumerated.
Search search(const std::vector<CFormula>& left, const std::vector<CFormula>& right, Model& m, std::size_t& evals,
              std::size_t budget) {
  if (++evals > budget) return Search::Budget;
  try {
    return sequent_holds(left, right, m) ? Search::Holds : Search::Fails;
  } catch (const NeedCell& need) {
    int& cell = (need.pred ? m.preds : m.fns)[need.table][need.index];
    const int radix = need.pred ? 2 : m.n;
    for (int v = 0; v < radix; ++v) {
      cell = v;
      const Search r = search(left, right, m, evals, budget);
      if (r != Search::Holds) {
        cell = -1;
        return r;
      }
    }
    cell = -1;
    return Search::Holds;
  }
}

}  // namespace

Verdict finite_model_check(const Sequent& s, int max_domain, std::size_t budget) {
  Signature sig;
  std::vector<CFormula> left, right;
  for (const auto& f : s.left) left.push_back(compile(f, sig));
  for (const auto& f : s.right) right.push_back(compile(f, sig));

  for (int n = 1; n <= max_domain; ++n) {
    const auto un = static_cast<std::size_t>(n);
    Model m{n, {}, {}};
    for (std::size_t arity : sig.fn_arity) m.fns.emplace_back(ipow(un, arity), -1);
    for (std::size_t arity : sig.pred_arity) m.preds.emplace_back(ipow(un, arity), -1);
    std::size_t evals = 0;
    switch (search(left, right, m, evals, budget)) {
      case Search::Fails: return Verdict::Invalid;
      case Search::Budget: return Verdict::TooLarge;
      case Search::Holds: break;
    }
  }
  return Verdict::Valid;
}

std::size_t predicate_symbols(const Sequent& s) {
  Signature sig;
  for (const auto& f : s.left) compile(f, sig);
  for (const auto& f : s.right) compile(f, sig);
  return sig.pred_arity.size();
}

Verdict check(const Sequent& s) {
  if (is_propositional(s)) return truth_table_valid(s) ? Verdict::Valid : Verdict::Invalid;
  return finite_model_check(s);
}

}  // namespace oracle
