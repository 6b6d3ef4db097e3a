#include "ootp/tactics.hpp"

namespace ootp {

namespace {

Theorem finish(const Sequent& main_goal, const SimulTheorem& rebuilt, const Substitution& store) {
  const Theorem& thm = rebuilt.project("g1");
  const Sequent want = apply_subst(store, main_goal);
  std::set<Symbol> residual;
  collect_metas(want, residual);
  if (!residual.empty()) throw ProofError("residual metavariable ?" + residual.begin()->name + " in " + print_sequent(want));
  if (!(thm.sequent() == want))
    throw ProofError("validation rebuilt " + print_sequent(thm.sequent()) + " instead of " + print_sequent(want));
  return thm;
}

}  // namespace

Theorem prove(const Sequent& goal, const TacticObject& t, std::size_t fuel) {
  OutcomeStream outs = t.apply(GoalBundle::initial(goal));
  for (std::size_t i = 0; auto o = outs.at(i); ++i) {
    if (!o->bundle.discharged()) continue;
    const SimulTheorem rebuilt = replay(*o, SimulTheorem::discharged(), o->bundle.store(), fuel);
    return finish(goal, rebuilt, o->bundle.store());
  }
  throw ProofError("tactic failed to prove " + print_sequent(goal));
}

ProofState ProofState::start(const Sequent& main_goal) {
  ProofState ps;
  ps.main_goal_ = main_goal;
  ps.history_.push_back(GoalBundle::initial(main_goal));
  return ps;
}

ProofState proof_state_apply(const ProofState& ps, const TacticObject& t) {
  auto first = t.apply(ps.current()).at(0);
  if (!first) throw ProofError("tactic " + t.name() + " failed");
  ProofState next = ps;
  next.history_.push_back(first->bundle.with_focus({}));
  next.validations_.emplace_back(first->validation, first->method);
  return next;
}

ProofState proof_state_undo(const ProofState& ps) {
  if (ps.history_.size() <= 1) throw ProofError("nothing to undo");
  ProofState next = ps;
  next.history_.pop_back();
  next.validations_.pop_back();
  return next;
}

Theorem qed(const ProofState& ps, std::size_t fuel) {
  const GoalBundle& done = ps.current();
  if (!done.discharged()) throw ProofError(std::to_string(done.goals().size()) + " goal(s) still open");
  const CallFrame frame(fuel, done.store());
  SimulTheorem thms = SimulTheorem::discharged();
  const auto& vs = ps.validations();
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) thms = apply_rule_object(it->first, it->second, thms, frame);
  return finish(ps.main_goal(), thms, done.store());
}

}  // namespace ootp
