// Shared pieces of the tactic implementation.

#ifndef OOTP_TACTICS_INTERNAL_HPP_
#define OOTP_TACTICS_INTERNAL_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ootp/tactics.hpp"

namespace ootp::detail {

// Forward step of a validation: subgoal theorems (in subgoal order) to the goal's theorem.
using StepFn = std::function<Theorem(const std::vector<Theorem>& subgoals, const CallFrame& frame)>;

struct Expansion {
  std::vector<Goal> subgoals;
  StepFn step;
};

// Rule object with methods "validate" (whole bundle; passes untouched goals through) and
// "step" (the target goal only), the former reaching the latter through self.
RuleObject step_validation(std::string label, std::vector<std::string> inputs, std::string target,
                           std::vector<std::string> subgoals, StepFn step);

// A metavariable may only be bound to parameters created after it.
bool respects_eigenvariables(const Substitution& s);

std::optional<Expansion> expand(RuleId rule, const Goal& goal, std::size_t pos, GoalBundle& bundle, int reuse_cap);

std::vector<TacticOutcome> rule_outcomes(RuleId rule, const GoalBundle& bundle, const std::string& target,
                                         std::optional<std::size_t> position, int reuse_cap);
std::vector<TacticOutcome> basic_outcomes(const GoalBundle& bundle, const std::string& target);

}  // namespace ootp::detail

#endif  // OOTP_TACTICS_INTERNAL_HPP_
