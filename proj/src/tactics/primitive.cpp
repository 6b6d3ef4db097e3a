#include <array>

#include "ootp/tactics.hpp"
#include "tactics/internal.hpp"

namespace ootp {

namespace {

using Side = std::vector<Formula>;

Side erase_at(Side s, std::size_t i) {
  s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
  return s;
}

Side insert_at(Side s, std::size_t i, Formula f) {
  s.insert(s.begin() + static_cast<std::ptrdiff_t>(i), std::move(f));
  return s;
}

Side append(Side s, Formula f) {
  s.push_back(std::move(f));
  return s;
}

Formula quant_like(const Formula& q, Formula body) { return Formula::quant(q.quantifier(), q.name(), std::move(body)); }

constexpr std::array<std::pair<RuleId, const char*>, 14> kRuleNames{{
    {RuleId::ConjR, "conj_r"},
    {RuleId::ConjL, "conj_l"},
    {RuleId::DisjR, "disj_r"},
    {RuleId::DisjL, "disj_l"},
    {RuleId::ImpR, "imp_r"},
    {RuleId::ImpL, "imp_l"},
    {RuleId::NegR, "neg_r"},
    {RuleId::NegL, "neg_l"},
    {RuleId::IffR, "iff_r"},
    {RuleId::IffL, "iff_l"},
    {RuleId::AllR, "all_r"},
    {RuleId::AllL, "all_l"},
    {RuleId::ExR, "ex_r"},
    {RuleId::ExL, "ex_l"},
}};

bool on_right(RuleId r) {
  switch (r) {
    case RuleId::ConjR:
    case RuleId::DisjR:
    case RuleId::ImpR:
    case RuleId::NegR:
    case RuleId::IffR:
    case RuleId::AllR:
    case RuleId::ExR:
      return true;
    default:
      return false;
  }
}

bool principal_shape(RuleId r, const Formula& f) {
  switch (r) {
    case RuleId::ConjR:
    case RuleId::ConjL: return f.is_conn(Connective::And);
    case RuleId::DisjR:
    case RuleId::DisjL: return f.is_conn(Connective::Or);
    case RuleId::ImpR:
    case RuleId::ImpL: return f.is_conn(Connective::Imp);
    case RuleId::NegR:
    case RuleId::NegL: return f.is_conn(Connective::Not);
    case RuleId::IffR:
    case RuleId::IffL: return f.is_conn(Connective::Iff);
    case RuleId::AllR:
    case RuleId::AllL: return f.is_quant(Quantifier::All);
    case RuleId::ExR:
    case RuleId::ExL: return f.is_quant(Quantifier::Ex);
  }
  return false;
}

SimulTheorem restrict(const SimulTheorem& args, const std::vector<std::string>& names) {
  if (names.empty()) return SimulTheorem::discharged();
  std::map<std::string, Theorem> parts;
  for (const auto& n : names) parts.emplace(n, args.project(n));
  return simul_pack(std::move(parts));
}

}  // namespace

std::optional<RuleId> rule_from_name(std::string_view name) {
  for (const auto& [id, n] : kRuleNames)
    if (name == n) return id;
  return std::nullopt;
}

std::string rule_name(RuleId id) {
  for (const auto& [r, n] : kRuleNames)
    if (r == id) return n;
  return "?";
}

const std::vector<RuleId>& all_rules() {
  static const std::vector<RuleId> rules = [] {
    std::vector<RuleId> out;
    for (const auto& [id, _] : kRuleNames) out.push_back(id);
    return out;
  }();
  return rules;
}

namespace detail {

RuleObject step_validation(std::string label, std::vector<std::string> inputs, std::string target,
                           std::vector<std::string> subgoals, StepFn step) {
  std::map<std::string, RuleMethod> methods;
  methods["validate"] = [inputs, target, subgoals](const RuleObject& self, const SimulTheorem& args,
                                                    const CallFrame& frame) {
    const SimulTheorem stepped = self.call("step", restrict(args, subgoals), frame);
    std::map<std::string, Theorem> out;
    for (const auto& n : inputs) out.emplace(n, n == target ? stepped.project(target) : args.project(n));
    return simul_pack(std::move(out));
  };
  methods["step"] = [target, subgoals, step](const RuleObject&, const SimulTheorem& args, const CallFrame& frame) {
    std::vector<Theorem> subs;
    for (const auto& n : subgoals) subs.push_back(args.project(n));
    return simul_pack({{target, step(subs, frame)}});
  };
  return make_rule_object(std::move(label), std::move(methods));
}

bool respects_eigenvariables(const Substitution& s) {
  for (const auto& [m, t] : s.bindings()) {
    bool ok = true;
    std::function<void(const Term&)> walk = [&](const Term& u) {
      if (u.is_param() && u.serial() > m.serial) ok = false;
      for (const auto& a : u.args()) walk(a);
    };
    walk(t);
    if (!ok) return false;
  }
  return true;
}

std::optional<Expansion> expand(RuleId rule, const Goal& goal, std::size_t pos, GoalBundle& bundle, int reuse_cap) {
  const Sequent& q = goal.sequent;
  const Side& side = on_right(rule) ? q.right : q.left;
  if (pos >= side.size() || !principal_shape(rule, side[pos])) return std::nullopt;
  const Formula f = side[pos];
  const std::size_t i = pos;
  auto sub = [&](Side left, Side right) { return Goal{{std::move(left), std::move(right)}, goal.reuse}; };
  Expansion e;
  switch (rule) {
    case RuleId::ConjR: {
      Side r1 = q.right, r2 = q.right;
      r1[i] = f.lhs();
      r2[i] = f.rhs();
      e.subgoals = {sub(q.left, r1), sub(q.left, r2)};
      e.step = [i](const std::vector<Theorem>& t, const CallFrame&) {
        const Formula conj = Formula::conj(t[0].sequent().right[i], t[1].sequent().right[i]);
        Sequent want = t[0].sequent();
        want.right[i] = conj;
        return kernel::exchange(kernel::conj_r(t[0], t[1], conj), want);
      };
      break;
    }
    case RuleId::ConjL: {
      Side l = q.left;
      l[i] = f.lhs();
      l = insert_at(l, i + 1, f.rhs());
      e.subgoals = {sub(l, q.right)};
      e.step = [i](const std::vector<Theorem>& t, const CallFrame&) {
        const Sequent& s = t[0].sequent();
        const Formula conj = Formula::conj(s.left[i], s.left[i + 1]);
        Sequent want = s;
        want.left[i] = conj;
        want.left = erase_at(want.left, i + 1);
        return kernel::exchange(kernel::conj_l(t[0], conj), want);
      };
      break;
    }
    case RuleId::DisjR: {
      Side r = q.right;
      r[i] = f.lhs();
      r = insert_at(r, i + 1, f.rhs());
      e.subgoals = {sub(q.left, r)};
      e.step = [i](const std::vector<Theorem>& t, const CallFrame&) {
        const Sequent& s = t[0].sequent();
        const Formula disj = Formula::disj(s.right[i], s.right[i + 1]);
        Sequent want = s;
        want.right[i] = disj;
        want.right = erase_at(want.right, i + 1);
        return kernel::exchange(kernel::disj_r(t[0], disj), want);
      };
      break;
    }
    case RuleId::DisjL: {
      Side l1 = q.left, l2 = q.left;
      l1[i] = f.lhs();
      l2[i] = f.rhs();
      e.subgoals = {sub(l1, q.right), sub(l2, q.right)};
      e.step = [i](const std::vector<Theorem>& t, const CallFrame&) {
        const Formula disj = Formula::disj(t[0].sequent().left[i], t[1].sequent().left[i]);
        Sequent want = t[0].sequent();
        want.left[i] = disj;
        return kernel::exchange(kernel::disj_l(t[0], t[1], disj), want);
      };
      break;
    }
    case RuleId::ImpR: {
      Side r = q.right;
      r[i] = f.rhs();
      e.subgoals = {sub(append(q.left, f.lhs()), r)};
      e.step = [i](const std::vector<Theorem>& t, const CallFrame&) {
        const Sequent& s = t[0].sequent();
        const Formula imp = Formula::imp(s.left.back(), s.right[i]);
        Sequent want = s;
        want.left.pop_back();
        want.right[i] = imp;
        return kernel::exchange(kernel::imp_r(t[0], imp), want);
      };
      break;
    }
    case RuleId::ImpL: {
      Side l2 = q.left;
      l2[i] = f.rhs();
      e.subgoals = {sub(erase_at(q.left, i), append(q.right, f.lhs())), sub(l2, q.right)};
      e.step = [i](const std::vector<Theorem>& t, const CallFrame&) {
        const Formula imp = Formula::imp(t[0].sequent().right.back(), t[1].sequent().left[i]);
        Sequent want = t[1].sequent();
        want.left[i] = imp;
        return kernel::exchange(kernel::imp_l(t[0], t[1], imp), want);
      };
      break;
    }
    case RuleId::NegR: {
      e.subgoals = {sub(append(q.left, f.body()), erase_at(q.right, i))};
      e.step = [i](const std::vector<Theorem>& t, const CallFrame&) {
        const Sequent& s = t[0].sequent();
        const Formula neg = Formula::neg(s.left.back());
        Sequent want = s;
        want.left.pop_back();
        want.right = insert_at(want.right, i, neg);
        return kernel::exchange(kernel::neg_r(t[0], neg), want);
      };
      break;
    }
    case RuleId::NegL: {
      e.subgoals = {sub(erase_at(q.left, i), append(q.right, f.body()))};
      e.step = [i](const std::vector<Theorem>& t, const CallFrame&) {
        const Sequent& s = t[0].sequent();
        const Formula neg = Formula::neg(s.right.back());
        Sequent want = s;
        want.right.pop_back();
        want.left = insert_at(want.left, i, neg);
        return kernel::exchange(kernel::neg_l(t[0], neg), want);
      };
      break;
    }
    case RuleId::IffR: {
      Side r1 = q.right, r2 = q.right;
      r1[i] = f.rhs();
      r2[i] = f.lhs();
      e.subgoals = {sub(append(q.left, f.lhs()), r1), sub(append(q.left, f.rhs()), r2)};
      e.step = [i](const std::vector<Theorem>& t, const CallFrame&) {
        const Sequent& s = t[0].sequent();
        const Formula iff = Formula::iff(s.left.back(), s.right[i]);
        Sequent want = s;
        want.left.pop_back();
        want.right[i] = iff;
        return kernel::exchange(kernel::iff_r(t[0], t[1], iff), want);
      };
      break;
    }
    case RuleId::IffL: {
      Side l1 = q.left;
      l1[i] = f.lhs();
      l1 = insert_at(l1, i + 1, f.rhs());
      Side r2 = append(append(q.right, f.lhs()), f.rhs());
      e.subgoals = {sub(l1, q.right), sub(erase_at(q.left, i), r2)};
      e.step = [i](const std::vector<Theorem>& t, const CallFrame&) {
        const Sequent& s = t[0].sequent();
        const Formula iff = Formula::iff(s.left[i], s.left[i + 1]);
        Sequent want = s;
        want.left[i] = iff;
        want.left = erase_at(want.left, i + 1);
        return kernel::exchange(kernel::iff_l(t[0], t[1], iff), want);
      };
      break;
    }
    case RuleId::AllR:
    case RuleId::ExL: {
      const bool right = rule == RuleId::AllR;
      const Term p = bundle.fresh_param();
      Sequent s = q;
      (right ? s.right : s.left)[i] = instantiate_quant(f, p);
      e.subgoals = {Goal{s, goal.reuse}};
      e.step = [i, p, f, right](const std::vector<Theorem>& t, const CallFrame&) {
        const Sequent& th = t[0].sequent();
        const Formula& inst = (right ? th.right : th.left)[i];
        const Formula quant = quant_like(f, abstract_over(inst, p));
        Sequent want = th;
        (right ? want.right : want.left)[i] = quant;
        const Theorem out = right ? kernel::all_r(t[0], quant, p) : kernel::ex_l(t[0], quant, p);
        return kernel::exchange(out, want);
      };
      break;
    }
    case RuleId::AllL:
    case RuleId::ExR: {
      const bool right = rule == RuleId::ExR;
      const std::string key = print_formula(f);
      auto used = goal.reuse.find(key);
      if (used != goal.reuse.end() && used->second >= reuse_cap) return std::nullopt;
      const Term m = bundle.fresh_meta();
      Sequent s = q;
      Side& sd = right ? s.right : s.left;
      sd[i] = instantiate_quant(f, m);
      sd = insert_at(sd, i + 1, f);
      Goal g{s, goal.reuse};
      ++g.reuse[key];
      e.subgoals = {std::move(g)};
      e.step = [i, right](const std::vector<Theorem>& t, const CallFrame&) {
        const Sequent& th = t[0].sequent();
        const Side& sd = right ? th.right : th.left;
        const Formula& inst = sd[i];
        const Formula& quant = sd[i + 1];
        auto u = find_instance(quant, inst);
        if (!u) throw RuleError("validation: " + print_formula(inst) + " is not an instance of " + print_formula(quant));
        Sequent want = th;
        Side& wd = right ? want.right : want.left;
        wd = erase_at(wd, i);
        const Theorem out = right ? kernel::ex_r(t[0], quant, *u) : kernel::all_l(t[0], quant, *u);
        return kernel::exchange(out, want);
      };
      break;
    }
  }
  return e;
}

std::vector<TacticOutcome> rule_outcomes(RuleId rule, const GoalBundle& bundle, const std::string& target,
                                         std::optional<std::size_t> position, int reuse_cap) {
  std::vector<TacticOutcome> out;
  const Goal* goal = bundle.find(target);
  if (!goal) return out;
  const Side& side = on_right(rule) ? goal->sequent.right : goal->sequent.left;
  for (std::size_t pos = 0; pos < side.size(); ++pos) {
    if (position && *position != pos) continue;
    GoalBundle next = bundle;
    auto e = expand(rule, *goal, pos, next, reuse_cap);
    if (!e) continue;
    const auto inputs = bundle.names();
    auto subgoals = next.replace(target, std::move(e->subgoals));
    out.push_back({std::move(next), step_validation(rule_name(rule), inputs, target, std::move(subgoals), std::move(e->step))});
  }
  return out;
}

std::vector<TacticOutcome> basic_outcomes(const GoalBundle& bundle, const std::string& target) {
  std::vector<TacticOutcome> out;
  const Goal* goal = bundle.find(target);
  if (!goal) return out;
  const Sequent& q = goal->sequent;
  for (std::size_t i = 0; i < q.left.size(); ++i) {
    for (std::size_t j = 0; j < q.right.size(); ++j) {
      auto theta = unify(q.left[i], q.right[j], bundle.store());
      if (!theta || !respects_eigenvariables(*theta)) continue;
      GoalBundle next = bundle;
      next.instantiate(*theta);
      next.replace(target, {});
      const Substitution store = *theta;
      StepFn step = [q, i, j, store](const std::vector<Theorem>&, const CallFrame& frame) {
        const Sequent s = apply_subst(frame.instantiation(), apply_subst(store, q));
        Side left = s.left;
        Side right = s.right;
        const Formula a = left[i];
        return kernel::exchange(kernel::basic(erase_at(left, i), a, erase_at(right, j)), s);
      };
      out.push_back({std::move(next), step_validation("basic", bundle.names(), target, {}, std::move(step))});
    }
  }
  return out;
}

}  // namespace detail

TacticObject rule_tac(RuleId rule, std::string goal, std::optional<std::size_t> position, int reuse_cap) {
  std::map<std::string, TacticObject::Method> methods;
  methods["apply"] = [rule, goal, position, reuse_cap](const TacticObject&, const GoalBundle& b) {
    auto target = b.resolve(goal);
    if (!target) return OutcomeStream::empty();
    return OutcomeStream::from(detail::rule_outcomes(rule, b, *target, position, reuse_cap));
  };
  return TacticObject(rule_name(rule), std::move(methods));
}

TacticObject basic_tac(std::string goal) {
  std::map<std::string, TacticObject::Method> methods;
  methods["apply"] = [goal](const TacticObject&, const GoalBundle& b) {
    auto target = b.resolve(goal);
    if (!target) return OutcomeStream::empty();
    return OutcomeStream::from(detail::basic_outcomes(b, *target));
  };
  return TacticObject("basic", std::move(methods));
}

std::vector<std::string> applicable_tactics(const GoalBundle& bundle) {
  std::vector<std::string> out;
  if (basic_tac().apply(bundle).has_any()) out.push_back("basic");
  for (RuleId r : all_rules())
    if (rule_tac(r).apply(bundle).has_any()) out.push_back(rule_name(r));
  return out;
}

}  // namespace ootp
