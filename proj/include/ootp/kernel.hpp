// The trusted core. A Theorem can only be obtained from the rule functions declared here;
// simultaneous theorems bundle them and rule objects map bundles to bundles.

#ifndef OOTP_KERNEL_HPP_
#define OOTP_KERNEL_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ootp/logic.hpp"

namespace ootp {

// A rule's preconditions did not hold.
class RuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FuelExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Theorem {
 public:
  const Sequent& sequent() const noexcept { return *sequent_; }
  // Name of the rule that produced this theorem.
  const std::string& provenance() const noexcept { return provenance_; }

 private:
  Theorem(Sequent s, std::string provenance);

  std::shared_ptr<const Sequent> sequent_;
  std::string provenance_;

  friend struct KernelAccess;
};

namespace kernel {

// `gamma, a |- a, delta`
Theorem basic(std::vector<Formula> gamma, const Formula& a, std::vector<Formula> delta);

// Each rule takes its principal formula explicitly. Side formulas are located by leftmost
// search; the principal formula takes the place of the first side formula removed.
Theorem conj_r(const Theorem& t1, const Theorem& t2, const Formula& conj);
Theorem conj_l(const Theorem& t, const Formula& conj);
Theorem disj_r(const Theorem& t, const Formula& disj);
Theorem disj_l(const Theorem& t1, const Theorem& t2, const Formula& disj);
Theorem imp_r(const Theorem& t, const Formula& imp);
Theorem imp_l(const Theorem& t1, const Theorem& t2, const Formula& imp);
Theorem neg_r(const Theorem& t, const Formula& neg);
Theorem neg_l(const Theorem& t, const Formula& neg);
// t1: Γ,A |- B,Δ  t2: Γ,B |- A,Δ
Theorem iff_r(const Theorem& t1, const Theorem& t2, const Formula& iff);
// t1: Γ,A,B |- Δ  t2: Γ |- A,B,Δ
Theorem iff_l(const Theorem& t1, const Theorem& t2, const Formula& iff);

// Eigenvariable rules: p must be a Param not occurring in the conclusion.
Theorem all_r(const Theorem& t, const Formula& all, const Term& p);
Theorem ex_l(const Theorem& t, const Formula& ex, const Term& p);
// Instance rules: A[u] is replaced by the quantified formula; a duplicate copy is contracted.
Theorem all_l(const Theorem& t, const Formula& all, const Term& u);
Theorem ex_r(const Theorem& t, const Formula& ex, const Term& u);

// Structural rules.
Theorem weaken(const Theorem& t, const std::vector<Formula>& left, const std::vector<Formula>& right);
// Removes one of two copies of f from the left (or right) side.
Theorem contract(const Theorem& t, const Formula& f, bool on_left);
// Reorders (and only reorders) the sides of t into `target`.
Theorem exchange(const Theorem& t, const Sequent& target);
Theorem instantiate_thm(const Theorem& t, const Substitution& s);

// Installs a callback that sees every theorem the kernel mints (audit hook for oracles).
// Pass an empty function to remove it. Returns the observer it replaces.
std::function<void(const Theorem&)> set_theorem_observer(std::function<void(const Theorem&)> observer);

}  // namespace kernel

class SimulTheorem {
 public:
  const Theorem& project(const std::string& name) const;
  bool contains(const std::string& name) const { return parts_.count(name) != 0; }
  bool empty() const noexcept { return parts_.empty(); }
  std::size_t size() const noexcept { return parts_.size(); }
  const std::map<std::string, Theorem>& components() const noexcept { return parts_; }

  // The bundle of a fully discharged goal set; the only empty SimulTheorem.
  static SimulTheorem discharged() { return SimulTheorem({}); }

 private:
  explicit SimulTheorem(std::map<std::string, Theorem> parts) : parts_(std::move(parts)) {}
  std::map<std::string, Theorem> parts_;

  friend SimulTheorem simul_pack(std::map<std::string, Theorem> parts);
};

// Throws std::invalid_argument on an empty map.
SimulTheorem simul_pack(std::map<std::string, Theorem> parts);
const Theorem& simul_project(const SimulTheorem& bundle, const std::string& name);

inline constexpr std::size_t kDefaultFuel = 10000;

// Per-call environment of a rule method.
class CallFrame {
 public:
  explicit CallFrame(std::size_t fuel, Substitution instantiation = {})
      : fuel_(fuel), instantiation_(std::make_shared<const Substitution>(std::move(instantiation))) {}

  std::size_t fuel() const noexcept { return fuel_; }
  // Metavariable bindings committed by the caller; validations apply them to what they mint.
  const Substitution& instantiation() const noexcept { return *instantiation_; }
  // The frame for a nested call; throws FuelExhausted at zero.
  CallFrame next() const;

 private:
  CallFrame(std::size_t fuel, std::shared_ptr<const Substitution> inst)
      : fuel_(fuel), instantiation_(std::move(inst)) {}
  std::size_t fuel_;
  std::shared_ptr<const Substitution> instantiation_;
};

class RuleObject;
using RuleMethod =
    std::function<SimulTheorem(const RuleObject& self, const SimulTheorem& args, const CallFrame& frame)>;

class RuleObject {
 public:
  const std::string& name() const noexcept { return name_; }
  bool has_method(const std::string& method) const { return methods_->count(method) != 0; }
  std::vector<std::string> method_names() const;

  // Invokes a method of this object with *this as self, spending one unit of fuel.
  SimulTheorem call(const std::string& method, const SimulTheorem& args, const CallFrame& frame) const;
  // Same object with one method replaced or added; siblings reach the new method through self.
  RuleObject with_method(const std::string& method, RuleMethod body) const;

 private:
  RuleObject(std::string name, std::shared_ptr<const std::map<std::string, RuleMethod>> methods)
      : name_(std::move(name)), methods_(std::move(methods)) {}
  SimulTheorem dispatch(const std::string& method, const SimulTheorem& args, const CallFrame& frame) const;

  std::string name_;
  std::shared_ptr<const std::map<std::string, RuleMethod>> methods_;

  friend RuleObject make_rule_object(std::string name, std::map<std::string, RuleMethod> methods);
  friend SimulTheorem apply_rule_object(const RuleObject& r, const std::string& method,
                                        const SimulTheorem& args, const CallFrame& frame);
};

// Throws std::invalid_argument on an empty method map.
RuleObject make_rule_object(std::string name, std::map<std::string, RuleMethod> methods);

// Entry call; does not itself consume fuel. Throws RuleError for an unknown method.
SimulTheorem apply_rule_object(const RuleObject& r, const std::string& method, const SimulTheorem& args,
                               const CallFrame& frame);
inline SimulTheorem apply_rule_object(const RuleObject& r, const std::string& method,
                                      const SimulTheorem& args, std::size_t fuel = kDefaultFuel) {
  return apply_rule_object(r, method, args, CallFrame(fuel));
}

}  // namespace ootp

#endif  // OOTP_KERNEL_HPP_
