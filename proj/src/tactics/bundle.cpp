#include <algorithm>

#include "ootp/tactics.hpp"

namespace ootp {

GoalBundle GoalBundle::initial(const Sequent& main) {
  GoalBundle b;
  std::set<Symbol> syms;
  collect_metas(main, syms);
  collect_params(main, syms);
  for (const auto& s : syms) b.next_serial_ = std::max(b.next_serial_, s.serial + 1);
  collect_params(main, b.params_);
  for (const auto& f : main.left) collect_names(f, b.used_names_);
  for (const auto& f : main.right) collect_names(f, b.used_names_);
  b.goals_.emplace_back("g1", Goal{main, {}});
  b.next_goal_ = 2;
  return b;
}

std::vector<std::string> GoalBundle::names() const {
  std::vector<std::string> out;
  for (const auto& [n, _] : goals_) out.push_back(n);
  return out;
}

const Goal* GoalBundle::find(std::string_view name) const {
  for (const auto& [n, g] : goals_)
    if (n == name) return &g;
  return nullptr;
}

std::optional<std::string> GoalBundle::resolve(std::string_view requested) const {
  if (!requested.empty()) {
    if (find(requested)) return std::string(requested);
    return std::nullopt;
  }
  if (!focus_.empty() && find(focus_)) return focus_;
  if (goals_.empty()) return std::nullopt;
  return goals_.front().first;
}

GoalBundle GoalBundle::with_focus(std::string name) const {
  GoalBundle b = *this;
  b.focus_ = std::move(name);
  return b;
}

std::string GoalBundle::fresh_name(const char* prefix) {
  for (;;) {
    const std::size_t serial = next_serial_++;
    std::string name = prefix + std::to_string(serial);
    if (used_names_.insert(name).second) return name;
  }
}

Term GoalBundle::fresh_meta() {
  std::string name = fresh_name("m");
  return Term::meta(name, next_serial_ - 1);
}

Term GoalBundle::fresh_param() {
  std::string name = fresh_name("p");
  Term p = Term::param(name, next_serial_ - 1);
  params_.insert(p.symbol());
  return p;
}

std::vector<std::string> GoalBundle::replace(const std::string& name, std::vector<Goal> subgoals) {
  auto it = std::find_if(goals_.begin(), goals_.end(), [&](const auto& e) { return e.first == name; });
  if (it == goals_.end()) throw ProofError("no goal named " + name);
  goals_.erase(it);
  std::vector<std::string> out;
  for (auto& g : subgoals) {
    std::string n = "g" + std::to_string(next_goal_++);
    goals_.emplace_back(n, std::move(g));
    out.push_back(std::move(n));
  }
  return out;
}

void GoalBundle::instantiate(const Substitution& store) {
  store_ = store;
  for (auto& [_, g] : goals_) g.sequent = apply_subst(store_, g.sequent);
}

std::string GoalBundle::render() const {
  std::string out;
  if (goals_.empty()) out += "no goals\n";
  for (const auto& [n, g] : goals_) out += n + ": " + print_sequent(g.sequent) + "\n";
  for (const auto& [m, t] : store_.bindings()) out += "?" + m.name + " := " + print_term(t) + "\n";
  return out;
}

// ---------------------------------------------------------------------------

TacticObject::TacticObject(std::string name, std::map<std::string, Method> methods)
    : name_(std::move(name)), methods_(std::make_shared<const std::map<std::string, Method>>(std::move(methods))) {}

OutcomeStream TacticObject::call(const std::string& method, const GoalBundle& bundle) const {
  auto it = methods_->find(method);
  if (it == methods_->end()) throw ProofError("tactic '" + name_ + "' has no method '" + method + "'");
  return it->second(*this, bundle);
}

TacticObject TacticObject::with_method(const std::string& method, Method body) const {
  auto table = *methods_;
  table[method] = std::move(body);
  return TacticObject(name_, std::move(table));
}

}  // namespace ootp
