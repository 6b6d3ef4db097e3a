#include "ootp/tactics.hpp"
#include "tactics/internal.hpp"

namespace ootp {

RuleObject identity_validation() {
  static const RuleObject id = make_rule_object(
      "id", {{"validate", [](const RuleObject&, const SimulTheorem& args, const CallFrame&) { return args; }}});
  return id;
}

RuleObject compose_validations(const RuleObject& first, const std::string& first_method, const RuleObject& second,
                               const std::string& second_method) {
  // Theorems flow backwards through the tactic order: the second step's validation runs first.
  std::map<std::string, RuleMethod> methods;
  methods["validate"] = [](const RuleObject& self, const SimulTheorem& args, const CallFrame& frame) {
    return self.call("first", self.call("second", args, frame), frame);
  };
  methods["first"] = [first, first_method](const RuleObject&, const SimulTheorem& args, const CallFrame& frame) {
    return apply_rule_object(first, first_method, args, frame);
  };
  methods["second"] = [second, second_method](const RuleObject&, const SimulTheorem& args, const CallFrame& frame) {
    return apply_rule_object(second, second_method, args, frame);
  };
  return make_rule_object("then", std::move(methods));
}

namespace {

TacticOutcome identity_outcome(const GoalBundle& b) { return {b, identity_validation(), "validate"}; }

TacticOutcome chain(const TacticOutcome& a, const TacticOutcome& b) {
  return {b.bundle, compose_validations(a.validation, a.method, b.validation, b.method), "validate"};
}

OutcomeStream then_stream(const OutcomeStream& firsts, const std::function<OutcomeStream(const GoalBundle&)>& next) {
  return firsts.flat_map([next](const TacticOutcome& a) {
    return next(a.bundle).map([a](const TacticOutcome& b) { return chain(a, b); });
  });
}

OutcomeStream repeat_from(const TacticObject& t, const GoalBundle& b, std::size_t fuel) {
  OutcomeStream s = t.apply(b);
  if (!s.has_any()) return OutcomeStream::of(identity_outcome(b));
  if (fuel == 0) throw FuelExhausted("REPEAT: fuel exhausted");
  return s.flat_map([t, fuel](const TacticOutcome& a) {
    return repeat_from(t, a.bundle, fuel - 1).map([a](const TacticOutcome& b) { return chain(a, b); });
  });
}

OutcomeStream all_goals_from(const TacticObject& t, const GoalBundle& b, std::vector<std::string> names,
                             std::size_t next) {
  while (next < names.size() && !b.find(names[next])) ++next;
  if (next == names.size()) return OutcomeStream::of(identity_outcome(b.with_focus({})));
  const std::string name = names[next];
  return t.apply(b.with_focus(name)).flat_map([t, names, next](const TacticOutcome& a) {
    return all_goals_from(t, a.bundle.with_focus({}), names, next + 1).map([a](const TacticOutcome& c) {
      return chain(a, c);
    });
  });
}

}  // namespace

TacticObject id_tac() {
  return TacticObject("ID", {{"apply", [](const TacticObject&, const GoalBundle& b) {
                                return OutcomeStream::of(identity_outcome(b));
                              }}});
}

TacticObject fail_tac() {
  return TacticObject("FAIL", {{"apply", [](const TacticObject&, const GoalBundle&) { return OutcomeStream::empty(); }}});
}

TacticObject then_(TacticObject first, TacticObject second) {
  std::map<std::string, TacticObject::Method> methods;
  methods["first"] = [first](const TacticObject&, const GoalBundle& b) { return first.apply(b); };
  methods["second"] = [second](const TacticObject&, const GoalBundle& b) { return second.apply(b); };
  methods["apply"] = [](const TacticObject& self, const GoalBundle& b) {
    return then_stream(self.call("first", b), [self](const GoalBundle& nb) { return self.call("second", nb); });
  };
  return TacticObject("THEN", std::move(methods));
}

TacticObject orelse(TacticObject first, TacticObject second) {
  std::map<std::string, TacticObject::Method> methods;
  methods["first"] = [first](const TacticObject&, const GoalBundle& b) { return first.apply(b); };
  methods["second"] = [second](const TacticObject&, const GoalBundle& b) { return second.apply(b); };
  methods["apply"] = [](const TacticObject& self, const GoalBundle& b) {
    OutcomeStream s = self.call("first", b);
    return s.has_any() ? s : self.call("second", b);
  };
  return TacticObject("ORELSE", std::move(methods));
}

TacticObject try_(TacticObject t) { return orelse(std::move(t), id_tac()); }

TacticObject repeat(TacticObject t, std::size_t fuel) {
  return TacticObject("REPEAT", {{"apply", [t, fuel](const TacticObject&, const GoalBundle& b) {
                                    return repeat_from(t, b, fuel);
                                  }}});
}

TacticObject all_goals(TacticObject t) {
  return TacticObject("ALLGOALS", {{"apply", [t](const TacticObject&, const GoalBundle& b) {
                                      return all_goals_from(t, b, b.names(), 0);
                                    }}});
}

SimulTheorem replay(const TacticOutcome& outcome, const SimulTheorem& subgoal_theorems,
                    const Substitution& final_store, std::size_t fuel) {
  return apply_rule_object(outcome.validation, outcome.method, subgoal_theorems, CallFrame(fuel, final_store));
}

}  // namespace ootp
