#include <algorithm>

#include "ootp/tactics.hpp"
#include "tactics/internal.hpp"

namespace ootp {

namespace {

// Invertible rules, non-branching first. None of them creates metavariables.
constexpr RuleId kSafeOrder[] = {RuleId::ConjL, RuleId::DisjR, RuleId::ImpR, RuleId::NegL, RuleId::NegR, RuleId::AllR,
                                 RuleId::ExL,   RuleId::ConjR, RuleId::DisjL, RuleId::ImpL, RuleId::IffR, RuleId::IffL};

TacticOutcome chain(const TacticOutcome& a, const TacticOutcome& b) {
  return {b.bundle, compose_validations(a.validation, a.method, b.validation, b.method), "validate"};
}

std::vector<std::string> new_goals(const GoalBundle& before, const GoalBundle& after) {
  std::vector<std::string> out;
  for (const auto& [n, _] : after.goals())
    if (!before.find(n)) out.push_back(n);
  return out;
}

OutcomeStream solve_goal(const TacticObject& self, const GoalBundle& b, const std::string& goal, int depth);

OutcomeStream solve_all(const TacticObject& self, const GoalBundle& b, std::vector<std::string> names,
                        std::size_t next, int depth) {
  while (next < names.size() && !b.find(names[next])) ++next;
  if (next == names.size()) return OutcomeStream::of({b, identity_validation(), "validate"});
  const std::string goal = names[next];
  return solve_goal(self, b, goal, depth).flat_map([self, names, next, depth](const TacticOutcome& a) {
    return solve_all(self, a.bundle, names, next + 1, depth).map([a](const TacticOutcome& c) { return chain(a, c); });
  });
}

OutcomeStream expand_then_solve(const TacticObject& self, const GoalBundle& b, const OutcomeStream& steps, int depth) {
  return steps.flat_map([self, b, depth](const TacticOutcome& step) {
    TacticOutcome a{step.bundle.with_focus({}), step.validation, step.method};
    return solve_all(self, a.bundle, new_goals(b, a.bundle), 0, depth - 1).map([a](const TacticOutcome& c) {
      return chain(a, c);
    });
  });
}

OutcomeStream solve_goal(const TacticObject& self, const GoalBundle& b, const std::string& goal, int depth) {
  const GoalBundle focused = b.with_focus(goal);
  OutcomeStream closes = self.call("close", focused).map([](const TacticOutcome& o) {
    return TacticOutcome{o.bundle.with_focus({}), o.validation, o.method};
  });
  for (std::size_t i = 0; auto o = closes.at(i); ++i)
    if (o->bundle.store() == b.store()) return OutcomeStream::of(*o);
  return closes.concat([self, b, focused, depth]() {
    if (depth <= 0) return OutcomeStream::empty();
    OutcomeStream safe = self.call("safe", focused);
    if (safe.has_any()) return expand_then_solve(self, b, OutcomeStream::of(*safe.at(0)), depth);
    return expand_then_solve(self, b, self.call("unsafe", focused), depth);
  });
}

}  // namespace

TacticObject depth_tac(int max_depth) {
  std::map<std::string, TacticObject::Method> methods;
  methods["close"] = [](const TacticObject&, const GoalBundle& b) { return basic_tac().apply(b); };
  methods["safe"] = [](const TacticObject&, const GoalBundle& b) {
    auto target = b.resolve({});
    if (!target) return OutcomeStream::empty();
    for (RuleId r : kSafeOrder) {
      auto outs = detail::rule_outcomes(r, b, *target, std::nullopt, kDefaultReuseCap);
      if (!outs.empty()) return OutcomeStream::of(outs.front());
    }
    return OutcomeStream::empty();
  };
  methods["unsafe"] = [](const TacticObject&, const GoalBundle& b) {
    auto target = b.resolve({});
    if (!target) return OutcomeStream::empty();
    auto outs = detail::rule_outcomes(RuleId::AllL, b, *target, std::nullopt, kDefaultReuseCap);
    auto more = detail::rule_outcomes(RuleId::ExR, b, *target, std::nullopt, kDefaultReuseCap);
    outs.insert(outs.end(), more.begin(), more.end());
    return OutcomeStream::from(std::move(outs));
  };
  methods["apply"] = [max_depth](const TacticObject& self, const GoalBundle& b) {
    return solve_all(self, b.with_focus({}), b.names(), 0, max_depth);
  };
  return TacticObject("DEPTH " + std::to_string(max_depth), std::move(methods));
}

}  // namespace ootp
