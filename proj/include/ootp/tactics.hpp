// Backward proof: goal bundles, tactic objects whose outcomes carry rule-object validations,
// tacticals, an automatic depth-first prover, and interactive proof states.

#ifndef OOTP_TACTICS_HPP_
#define OOTP_TACTICS_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ootp/kernel.hpp"
#include "ootp/logic.hpp"
#include "ootp/stream.hpp"

namespace ootp {

class ProofError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultReuseCap = 3;

struct Goal {
  Sequent sequent;
  // Instantiation count per quantified formula (keyed by its printed form).
  std::map<std::string, int> reuse;
};

// Goals that share one metavariable store. Goal names are `g<N>`, kept in creation order.
class GoalBundle {
 public:
  static GoalBundle initial(const Sequent& main);

  const std::vector<std::pair<std::string, Goal>>& goals() const noexcept { return goals_; }
  bool discharged() const noexcept { return goals_.empty(); }
  std::vector<std::string> names() const;
  const Goal* find(std::string_view name) const;
  const Substitution& store() const noexcept { return store_; }
  const std::set<Symbol>& params() const noexcept { return params_; }

  // Goal a tactic should act on: `requested` if given, else the focus, else the lowest-numbered.
  std::optional<std::string> resolve(std::string_view requested) const;
  const std::string& focus() const noexcept { return focus_; }
  GoalBundle with_focus(std::string name) const;

  Term fresh_meta();
  Term fresh_param();
  // Replaces goal `name` by new goals (appended, freshly numbered); returns their names.
  std::vector<std::string> replace(const std::string& name, std::vector<Goal> subgoals);
  // Merges bindings into the store and applies the result to every goal.
  void instantiate(const Substitution& store);

  // One line per goal (`g<N>: sequent`), then bound metavariables, or `no goals`.
  std::string render() const;

 private:
  std::string fresh_name(const char* prefix);

  std::vector<std::pair<std::string, Goal>> goals_;
  Substitution store_;
  std::set<Symbol> params_;
  std::set<std::string> used_names_;
  std::size_t next_goal_ = 1;
  std::size_t next_serial_ = 1;
  std::string focus_;
};

struct TacticOutcome {
  GoalBundle bundle;
  // Maps theorems of `bundle`'s goals back to theorems of the input bundle's goals.
  RuleObject validation;
  std::string method = "validate";
};

using OutcomeStream = Stream<TacticOutcome>;

class TacticObject {
 public:
  using Method = std::function<OutcomeStream(const TacticObject& self, const GoalBundle& bundle)>;

  TacticObject(std::string name, std::map<std::string, Method> methods);

  const std::string& name() const noexcept { return name_; }
  // Calls the entry method "apply". An empty stream means the tactic failed.
  OutcomeStream apply(const GoalBundle& bundle) const { return call("apply", bundle); }
  OutcomeStream call(const std::string& method, const GoalBundle& bundle) const;
  TacticObject with_method(const std::string& method, Method body) const;

 private:
  std::string name_;
  std::shared_ptr<const std::map<std::string, Method>> methods_;
};

enum class RuleId { ConjR, ConjL, DisjR, DisjL, ImpR, ImpL, NegR, NegL, IffR, IffL, AllR, AllL, ExR, ExL };

std::optional<RuleId> rule_from_name(std::string_view name);
std::string rule_name(RuleId id);
const std::vector<RuleId>& all_rules();

// Backward application of a kernel rule on one goal. Without a position hint every applicable
// formula is an alternative, leftmost first.
TacticObject rule_tac(RuleId rule, std::string goal = {}, std::optional<std::size_t> position = {},
                      int reuse_cap = kDefaultReuseCap);
// Closes a goal by unifying a left formula with a right formula; one outcome per unifiable pair.
TacticObject basic_tac(std::string goal = {});
inline TacticObject all_r_tac(std::string goal = {}) { return rule_tac(RuleId::AllR, std::move(goal)); }
inline TacticObject all_l_tac(std::string goal = {}) { return rule_tac(RuleId::AllL, std::move(goal)); }
inline TacticObject ex_r_tac(std::string goal = {}) { return rule_tac(RuleId::ExR, std::move(goal)); }
inline TacticObject ex_l_tac(std::string goal = {}) { return rule_tac(RuleId::ExL, std::move(goal)); }

TacticObject id_tac();
TacticObject fail_tac();
TacticObject then_(TacticObject first, TacticObject second);
TacticObject orelse(TacticObject first, TacticObject second);
TacticObject try_(TacticObject t);
// Applies t until it fails; throws FuelExhausted after `fuel` nested applications.
TacticObject repeat(TacticObject t, std::size_t fuel = kDefaultFuel);
// Applies t once to each goal present in the input bundle.
TacticObject all_goals(TacticObject t);
// Depth-first search: basic, then the first safe rule, then quantifier instantiation.
// Every rule application spends one unit of the per-branch depth budget.
TacticObject depth_tac(int max_depth);

// Validation of the identity step on `bundle`.
RuleObject identity_validation();
// Validation of running `first` and then `second`.
RuleObject compose_validations(const RuleObject& first, const std::string& first_method,
                               const RuleObject& second, const std::string& second_method);

// Replays an outcome's validation over theorems of its subgoals, with the final metavariable
// bindings; yields theorems of the input goals.
SimulTheorem replay(const TacticOutcome& outcome, const SimulTheorem& subgoal_theorems,
                    const Substitution& final_store, std::size_t fuel = kDefaultFuel);

// Runs t backward from `goal` and rebuilds the theorem forward through the kernel.
Theorem prove(const Sequent& goal, const TacticObject& t, std::size_t fuel = kDefaultFuel);

class ProofState {
 public:
  static ProofState start(const Sequent& main_goal);

  const Sequent& main_goal() const noexcept { return main_goal_; }
  const GoalBundle& current() const { return history_.back(); }
  std::size_t depth() const noexcept { return history_.size() - 1; }
  const std::vector<std::pair<RuleObject, std::string>>& validations() const noexcept { return validations_; }

 private:
  Sequent main_goal_;
  std::vector<GoalBundle> history_;
  std::vector<std::pair<RuleObject, std::string>> validations_;

  friend ProofState proof_state_apply(const ProofState&, const TacticObject&);
  friend ProofState proof_state_undo(const ProofState&);
};

// Takes the first outcome of t; throws ProofError if there is none.
ProofState proof_state_apply(const ProofState& ps, const TacticObject& t);
// Throws ProofError at the root.
ProofState proof_state_undo(const ProofState& ps);
// Throws ProofError while goals remain open.
Theorem qed(const ProofState& ps, std::size_t fuel = kDefaultFuel);

class TacticSyntaxError : public std::runtime_error {
 public:
  TacticSyntaxError(std::string message, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// `basic | rule <name> [<goal>] | all_r | all_l | ex_r | ex_l | t THEN t | t ORELSE t | REPEAT t |
//  TRY t | ALLGOALS t | DEPTH <n> | ID | FAIL`, THEN binding tighter than ORELSE.
TacticObject parse_tactic(std::string_view text);

// Primitive tactic names with at least one outcome on the bundle's default goal.
std::vector<std::string> applicable_tactics(const GoalBundle& bundle);

}  // namespace ootp

#endif  // OOTP_TACTICS_HPP_
