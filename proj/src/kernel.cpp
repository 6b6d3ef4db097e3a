#include "ootp/kernel.hpp"

#include <algorithm>
#include <mutex>
#include <optional>

namespace ootp {

struct KernelAccess {
  static Theorem mint(Sequent s, std::string provenance);
};

Theorem::Theorem(Sequent s, std::string provenance)
    : sequent_(std::make_shared<const Sequent>(std::move(s))), provenance_(std::move(provenance)) {}

namespace {

std::mutex observer_mutex;
std::function<void(const Theorem&)> observer;

using Side = std::vector<Formula>;

std::optional<std::size_t> find_in(const Side& side, const Formula& f, std::optional<std::size_t> skip = {}) {
  for (std::size_t i = 0; i < side.size(); ++i)
    if (i != skip && side[i] == f) return i;
  return std::nullopt;
}

std::size_t require(const Side& side, const Formula& f, const char* rule, const char* what,
                    std::optional<std::size_t> skip = {}) {
  auto i = find_in(side, f, skip);
  if (!i) throw RuleError(std::string(rule) + ": " + what + " formula " + print_formula(f) + " not found");
  return *i;
}

Side erase_at(Side side, std::size_t i) {
  side.erase(side.begin() + static_cast<std::ptrdiff_t>(i));
  return side;
}

void require_conn(const Formula& f, Connective op, const char* rule) {
  if (!f.is_conn(op)) throw RuleError(std::string(rule) + ": wrong principal connective in " + print_formula(f));
}

void require_quant(const Formula& f, Quantifier q, const char* rule) {
  if (!f.is_quant(q)) throw RuleError(std::string(rule) + ": wrong principal quantifier in " + print_formula(f));
}

void require_same_context(const Sequent& a, const Sequent& b, const char* rule) {
  if (!same_multiset(a, b))
    throw RuleError(std::string(rule) + ": premises disagree on context: " + print_sequent(a) + " vs " +
                    print_sequent(b));
}

}  // namespace

Theorem KernelAccess::mint(Sequent s, std::string provenance) {
  // Every theorem is a sequent of closed formulas.
  for (const Side* side : {&s.left, &s.right})
    for (const auto& f : *side)
      if (!is_closed(f)) throw RuleError(provenance + ": formula " + print_formula(f) + " has a dangling bound variable");
  Theorem t(std::move(s), std::move(provenance));
  std::function<void(const Theorem&)> obs;
  {
    std::lock_guard lock(observer_mutex);
    obs = observer;
  }
  if (obs) obs(t);
  return t;
}

namespace kernel {

std::function<void(const Theorem&)> set_theorem_observer(std::function<void(const Theorem&)> obs) {
  std::lock_guard lock(observer_mutex);
  std::swap(observer, obs);
  return obs;
}

Theorem basic(std::vector<Formula> gamma, const Formula& a, std::vector<Formula> delta) {
  gamma.push_back(a);
  delta.insert(delta.begin(), a);
  return KernelAccess::mint({std::move(gamma), std::move(delta)}, "basic");
}

Theorem conj_r(const Theorem& t1, const Theorem& t2, const Formula& conj) {
  require_conn(conj, Connective::And, "conj_r");
  const Sequent& s1 = t1.sequent();
  const Sequent& s2 = t2.sequent();
  const std::size_t i = require(s1.right, conj.lhs(), "conj_r", "left conjunct");
  const std::size_t j = require(s2.right, conj.rhs(), "conj_r", "right conjunct");
  require_same_context({s1.left, erase_at(s1.right, i)}, {s2.left, erase_at(s2.right, j)}, "conj_r");
  Sequent out = s1;
  out.right[i] = conj;
  return KernelAccess::mint(std::move(out), "conj_r");
}

Theorem conj_l(const Theorem& t, const Formula& conj) {
  require_conn(conj, Connective::And, "conj_l");
  const Sequent& s = t.sequent();
  const std::size_t i = require(s.left, conj.lhs(), "conj_l", "left conjunct");
  const std::size_t j = require(s.left, conj.rhs(), "conj_l", "right conjunct", i);
  Sequent out = s;
  out.left[i] = conj;
  out.left = erase_at(std::move(out.left), j);
  return KernelAccess::mint(std::move(out), "conj_l");
}

Theorem disj_r(const Theorem& t, const Formula& disj) {
  require_conn(disj, Connective::Or, "disj_r");
  const Sequent& s = t.sequent();
  const std::size_t i = require(s.right, disj.lhs(), "disj_r", "left disjunct");
  const std::size_t j = require(s.right, disj.rhs(), "disj_r", "right disjunct", i);
  Sequent out = s;
  out.right[i] = disj;
  out.right = erase_at(std::move(out.right), j);
  return KernelAccess::mint(std::move(out), "disj_r");
}

Theorem disj_l(const Theorem& t1, const Theorem& t2, const Formula& disj) {
  require_conn(disj, Connective::Or, "disj_l");
  const Sequent& s1 = t1.sequent();
  const Sequent& s2 = t2.sequent();
  const std::size_t i = require(s1.left, disj.lhs(), "disj_l", "left disjunct");
  const std::size_t j = require(s2.left, disj.rhs(), "disj_l", "right disjunct");
  require_same_context({erase_at(s1.left, i), s1.right}, {erase_at(s2.left, j), s2.right}, "disj_l");
  Sequent out = s1;
  out.left[i] = disj;
  return KernelAccess::mint(std::move(out), "disj_l");
}

Theorem imp_r(const Theorem& t, const Formula& imp) {
  require_conn(imp, Connective::Imp, "imp_r");
  const Sequent& s = t.sequent();
  const std::size_t i = require(s.left, imp.lhs(), "imp_r", "antecedent");
  const std::size_t j = require(s.right, imp.rhs(), "imp_r", "consequent");
  Sequent out{erase_at(s.left, i), s.right};
  out.right[j] = imp;
  return KernelAccess::mint(std::move(out), "imp_r");
}

Theorem imp_l(const Theorem& t1, const Theorem& t2, const Formula& imp) {
  require_conn(imp, Connective::Imp, "imp_l");
  const Sequent& s1 = t1.sequent();
  const Sequent& s2 = t2.sequent();
  const std::size_t i = require(s1.right, imp.lhs(), "imp_l", "antecedent");
  const std::size_t j = require(s2.left, imp.rhs(), "imp_l", "consequent");
  Sequent out{s1.left, erase_at(s1.right, i)};
  require_same_context(out, {erase_at(s2.left, j), s2.right}, "imp_l");
  out.left.push_back(imp);
  return KernelAccess::mint(std::move(out), "imp_l");
}

Theorem neg_r(const Theorem& t, const Formula& neg) {
  require_conn(neg, Connective::Not, "neg_r");
  const Sequent& s = t.sequent();
  const std::size_t i = require(s.left, neg.body(), "neg_r", "negated");
  Sequent out{erase_at(s.left, i), s.right};
  out.right.insert(out.right.begin(), neg);
  return KernelAccess::mint(std::move(out), "neg_r");
}

Theorem neg_l(const Theorem& t, const Formula& neg) {
  require_conn(neg, Connective::Not, "neg_l");
  const Sequent& s = t.sequent();
  const std::size_t i = require(s.right, neg.body(), "neg_l", "negated");
  Sequent out{s.left, erase_at(s.right, i)};
  out.left.push_back(neg);
  return KernelAccess::mint(std::move(out), "neg_l");
}

Theorem iff_r(const Theorem& t1, const Theorem& t2, const Formula& iff) {
  require_conn(iff, Connective::Iff, "iff_r");
  const Sequent& s1 = t1.sequent();
  const Sequent& s2 = t2.sequent();
  const std::size_t a1 = require(s1.left, iff.lhs(), "iff_r", "left side");
  const std::size_t b1 = require(s1.right, iff.rhs(), "iff_r", "right side");
  const std::size_t b2 = require(s2.left, iff.rhs(), "iff_r", "right side");
  const std::size_t a2 = require(s2.right, iff.lhs(), "iff_r", "left side");
  Sequent out{erase_at(s1.left, a1), s1.right};
  require_same_context({out.left, erase_at(s1.right, b1)}, {erase_at(s2.left, b2), erase_at(s2.right, a2)},
                       "iff_r");
  out.right[b1] = iff;
  return KernelAccess::mint(std::move(out), "iff_r");
}

Theorem iff_l(const Theorem& t1, const Theorem& t2, const Formula& iff) {
  require_conn(iff, Connective::Iff, "iff_l");
  const Sequent& s1 = t1.sequent();
  const Sequent& s2 = t2.sequent();
  const std::size_t a1 = require(s1.left, iff.lhs(), "iff_l", "left side");
  const std::size_t b1 = require(s1.left, iff.rhs(), "iff_l", "right side", a1);
  const std::size_t a2 = require(s2.right, iff.lhs(), "iff_l", "left side");
  const std::size_t b2 = require(s2.right, iff.rhs(), "iff_l", "right side", a2);
  Sequent out = s1;
  out.left[a1] = iff;
  out.left = erase_at(std::move(out.left), b1);
  Side rest2 = s2.right;
  rest2.erase(rest2.begin() + static_cast<std::ptrdiff_t>(std::max(a2, b2)));
  rest2.erase(rest2.begin() + static_cast<std::ptrdiff_t>(std::min(a2, b2)));
  Side rest1 = s1.left;
  rest1.erase(rest1.begin() + static_cast<std::ptrdiff_t>(std::max(a1, b1)));
  rest1.erase(rest1.begin() + static_cast<std::ptrdiff_t>(std::min(a1, b1)));
  require_same_context({rest1, s1.right}, {s2.left, rest2}, "iff_l");
  return KernelAccess::mint(std::move(out), "iff_l");
}

namespace {

Theorem eigen_rule(const Theorem& t, const Formula& q, const Term& p, bool on_right, const char* rule) {
  if (!p.is_param()) throw RuleError(std::string(rule) + ": eigenvariable must be a parameter");
  const Formula inst = instantiate_quant(q, p);
  Sequent out = t.sequent();
  Side& side = on_right ? out.right : out.left;
  const std::size_t i = require(side, inst, rule, "instance");
  side[i] = q;
  if (occurs_in(p, out))
    throw RuleError(std::string(rule) + ": parameter " + p.name() + " is not fresh in " + print_sequent(out));
  return KernelAccess::mint(std::move(out), rule);
}

Theorem instance_rule(const Theorem& t, const Formula& q, const Term& u, bool on_right, const char* rule) {
  if (!is_closed(u)) throw RuleError(std::string(rule) + ": instance term " + print_term(u) + " is not closed");
  const Formula inst = instantiate_quant(q, u);
  Sequent out = t.sequent();
  Side& side = on_right ? out.right : out.left;
  const std::size_t i = require(side, inst, rule, "instance");
  side[i] = q;
  if (auto dup = find_in(side, q, i)) side = erase_at(std::move(side), *dup);
  return KernelAccess::mint(std::move(out), rule);
}

}  // namespace

Theorem all_r(const Theorem& t, const Formula& all, const Term& p) {
  require_quant(all, Quantifier::All, "all_r");
  return eigen_rule(t, all, p, true, "all_r");
}

Theorem ex_l(const Theorem& t, const Formula& ex, const Term& p) {
  require_quant(ex, Quantifier::Ex, "ex_l");
  return eigen_rule(t, ex, p, false, "ex_l");
}

Theorem all_l(const Theorem& t, const Formula& all, const Term& u) {
  require_quant(all, Quantifier::All, "all_l");
  return instance_rule(t, all, u, false, "all_l");
}

Theorem ex_r(const Theorem& t, const Formula& ex, const Term& u) {
  require_quant(ex, Quantifier::Ex, "ex_r");
  return instance_rule(t, ex, u, true, "ex_r");
}

Theorem weaken(const Theorem& t, const std::vector<Formula>& left, const std::vector<Formula>& right) {
  Sequent out = t.sequent();
  out.left.insert(out.left.end(), left.begin(), left.end());
  out.right.insert(out.right.end(), right.begin(), right.end());
  return KernelAccess::mint(std::move(out), "weaken");
}

Theorem contract(const Theorem& t, const Formula& f, bool on_left) {
  Sequent out = t.sequent();
  Side& side = on_left ? out.left : out.right;
  const std::size_t i = require(side, f, "contract", "formula");
  const std::size_t j = require(side, f, "contract", "second copy", i);
  side = erase_at(std::move(side), j);
  return KernelAccess::mint(std::move(out), "contract");
}

Theorem exchange(const Theorem& t, const Sequent& target) {
  if (!same_multiset(t.sequent(), target))
    throw RuleError("exchange: " + print_sequent(target) + " is not a permutation of " +
                    print_sequent(t.sequent()));
  return KernelAccess::mint(target, "exchange");
}

Theorem instantiate_thm(const Theorem& t, const Substitution& s) {
  return KernelAccess::mint(apply_subst(s, t.sequent()), "instantiate");
}

}  // namespace kernel

// ---------------------------------------------------------------------------
// Simultaneous theorems and rule objects

const Theorem& SimulTheorem::project(const std::string& name) const {
  auto it = parts_.find(name);
  if (it == parts_.end()) throw RuleError("simultaneous theorem has no component '" + name + "'");
  return it->second;
}

SimulTheorem simul_pack(std::map<std::string, Theorem> parts) {
  if (parts.empty()) throw std::invalid_argument("simul_pack: empty bundle");
  return SimulTheorem(std::move(parts));
}

const Theorem& simul_project(const SimulTheorem& bundle, const std::string& name) {
  return bundle.project(name);
}

CallFrame CallFrame::next() const {
  if (fuel_ == 0) throw FuelExhausted("rule object fuel exhausted");
  return CallFrame(fuel_ - 1, instantiation_);
}

std::vector<std::string> RuleObject::method_names() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : *methods_) out.push_back(k);
  return out;
}

SimulTheorem RuleObject::dispatch(const std::string& method, const SimulTheorem& args,
                                  const CallFrame& frame) const {
  auto it = methods_->find(method);
  if (it == methods_->end()) throw RuleError("rule object '" + name_ + "' has no method '" + method + "'");
  return it->second(*this, args, frame);
}

SimulTheorem RuleObject::call(const std::string& method, const SimulTheorem& args, const CallFrame& frame) const {
  return dispatch(method, args, frame.next());
}

RuleObject RuleObject::with_method(const std::string& method, RuleMethod body) const {
  auto table = *methods_;
  table[method] = std::move(body);
  return RuleObject(name_, std::make_shared<const std::map<std::string, RuleMethod>>(std::move(table)));
}

RuleObject make_rule_object(std::string name, std::map<std::string, RuleMethod> methods) {
  if (methods.empty()) throw std::invalid_argument("make_rule_object: no methods");
  return RuleObject(std::move(name), std::make_shared<const std::map<std::string, RuleMethod>>(std::move(methods)));
}

SimulTheorem apply_rule_object(const RuleObject& r, const std::string& method, const SimulTheorem& args,
                               const CallFrame& frame) {
  return r.dispatch(method, args, frame);
}

}  // namespace ootp
