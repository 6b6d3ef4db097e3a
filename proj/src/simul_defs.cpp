#include "ootp/simul_defs.hpp"

#include <cctype>
#include <map>
#include <memory>

namespace ootp {

namespace {

// No clause chain derives the requested atom.
class NoDerivation : public RuleError {
 public:
  using RuleError::RuleError;
};

void term_vars(const Term& t, std::vector<Term>& out) {
  if (t.is_meta()) {
    for (const auto& v : out)
      if (v == t) return;
    out.push_back(t);
  }
  for (const auto& a : t.args()) term_vars(a, out);
}

// Variables in order of first occurrence, head first.
std::vector<Term> clause_vars(const ClauseDef& c) {
  std::vector<Term> out;
  for (const auto& t : c.head.terms()) term_vars(t, out);
  for (const auto& b : c.body)
    for (const auto& t : b.terms()) term_vars(t, out);
  return out;
}

Formula conjoin(const std::vector<Formula>& parts) {
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conj(acc, parts[i]);
  return acc;
}

Formula fold(const ClauseDef& c) {
  Formula f = c.body.empty() ? c.head : Formula::imp(conjoin(c.body), c.head);
  const std::vector<Term> vars = clause_vars(c);
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = Formula::forall(it->name(), abstract_over(f, *it));
  return f;
}

struct GroupData {
  std::vector<ClauseDef> clauses;
  std::vector<std::vector<Term>> vars;
  std::vector<Formula> axioms;
};

std::size_t count_of(const std::vector<Formula>& side, const Formula& f) {
  std::size_t n = 0;
  for (const auto& g : side) n += g == f;
  return n;
}

// `Ax |- goal` from the premises `Ax |- b_i` of clause ci under sigma.
Theorem conclude(const GroupData& d, std::size_t ci, const Substitution& sigma, const std::vector<Theorem>& premises,
                 const Formula& goal) {
  const ClauseDef& c = d.clauses[ci];
  const std::vector<Formula>& ax = d.axioms;
  std::vector<Term> vals;
  std::vector<Formula> inst{ax[ci]};
  for (const auto& v : d.vars[ci]) {
    vals.push_back(apply_subst(sigma, v));
    inst.push_back(instantiate_quant(inst.back(), vals.back()));
  }

  Theorem t = kernel::basic(ax, goal, {});
  if (!c.body.empty()) {
    Theorem acc = premises.front();
    Formula acc_f = apply_subst(sigma, c.body.front());
    for (std::size_t i = 1; i < premises.size(); ++i) {
      acc_f = Formula::conj(acc_f, apply_subst(sigma, c.body[i]));
      acc = kernel::conj_r(acc, premises[i], acc_f);
    }
    t = kernel::imp_l(kernel::weaken(acc, {}, {goal}), t, Formula::imp(acc_f, goal));
  }
  for (std::size_t j = vals.size(); j-- > 0;) t = kernel::all_l(t, inst[j], vals[j]);

  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& f : t.sequent().left) {
      if (count_of(t.sequent().left, f) > count_of(ax, f)) {
        t = kernel::contract(t, f, true);
        changed = true;
        break;
      }
    }
  }
  return kernel::exchange(t, Sequent{ax, {goal}});
}

RuleMethod derive_method(std::shared_ptr<const GroupData> d, std::string pred) {
  return [d, pred](const RuleObject& self, const SimulTheorem& args, const CallFrame& frame) {
    const Sequent& q = args.project("goal").sequent();
    if (q.right.size() != 1 || !q.right.front().is_pred() || q.right.front().name() != pred)
      throw RuleError("derive " + pred + ": goal is not a " + pred + " atom");
    const Formula goal = q.right.front();
    bool starved = false;
    for (std::size_t ci = 0; ci < d->clauses.size(); ++ci) {
      const ClauseDef& c = d->clauses[ci];
      if (c.head.name() != pred || c.head.terms().size() != goal.terms().size()) continue;
      std::optional<Substitution> sigma = Substitution{};
      for (std::size_t i = 0; sigma && i < goal.terms().size(); ++i)
        sigma = match(c.head.terms()[i], goal.terms()[i], *sigma);
      if (!sigma) continue;
      try {
        std::vector<Theorem> premises;
        for (const auto& b : c.body) {
          const Formula sub = apply_subst(*sigma, b);
          premises.push_back(
              self.call(sub.name(), simul_pack({{"goal", kernel::basic({}, sub, {})}}), frame).project("result"));
        }
        return simul_pack({{"result", conclude(*d, ci, *sigma, premises, goal)}});
      } catch (const FuelExhausted&) {
        starved = true;
      } catch (const NoDerivation&) {
      }
    }
    if (starved) throw FuelExhausted("fuel exhausted deriving " + print_formula(goal));
    throw NoDerivation("no clause derives " + print_formula(goal));
  };
}

bool ground(const Term& t) {
  if (!t.is_app()) return false;
  for (const auto& a : t.args())
    if (!ground(a)) return false;
  return true;
}

}  // namespace

Term clause_var(const std::string& name) { return Term::meta(name, 0); }

DefGroup declare_group(std::string name, std::vector<ClauseDef> clauses) {
  std::set<std::string> preds;
  for (const auto& c : clauses) preds.insert(c.head.name());
  return declare_group(std::move(name), preds, std::move(clauses));
}

DefGroup declare_group(std::string name, const std::set<std::string>& predicates, std::vector<ClauseDef> clauses) {
  if (clauses.empty()) throw DefinitionError("group " + name + ": no clauses");
  auto d = std::make_shared<GroupData>();
  std::map<std::string, Theorem> parts;
  std::map<std::string, int> per_pred;
  for (const auto& c : clauses) {
    if (!c.head.is_pred()) throw DefinitionError("group " + name + ": clause head is not an atom");
    if (!predicates.count(c.head.name()))
      throw DefinitionError("group " + name + ": clause head for undeclared predicate " + c.head.name());
    std::vector<Term> head_vars;
    for (const auto& t : c.head.terms()) term_vars(t, head_vars);
    for (const auto& b : c.body) {
      if (!b.is_pred()) throw DefinitionError("group " + name + ": clause body holds a non-atom");
      if (!predicates.count(b.name()))
        throw DefinitionError("group " + name + ": body predicate " + b.name() + " is not defined in the group");
      std::vector<Term> vs = head_vars;
      for (const auto& t : b.terms()) term_vars(t, vs);
      if (vs.size() != head_vars.size())
        throw DefinitionError("group " + name + ": variable " + vs.back().name() + " in the body of a " +
                              c.head.name() + " clause does not occur in its head");
    }
    d->clauses.push_back(c);
    d->vars.push_back(clause_vars(c));
    d->axioms.push_back(fold(c));
    const std::string component = c.head.name() + "_" + std::to_string(++per_pred[c.head.name()]);
    parts.emplace(component, kernel::basic({}, d->axioms.back(), {}));
  }
  std::map<std::string, RuleMethod> methods;
  for (const auto& p : predicates) methods.emplace(p, derive_method(d, p));
  return DefGroup{std::move(name), predicates, d->clauses, d->axioms, simul_pack(std::move(parts)),
                  make_rule_object("derive", std::move(methods))};
}

std::optional<Theorem> derive_ground(const DefGroup& g, const std::string& pred, const std::vector<Term>& args,
                                     std::size_t fuel) {
  if (!g.predicates.count(pred)) throw std::invalid_argument("group " + g.name + " does not define " + pred);
  for (const auto& a : args)
    if (!ground(a)) throw std::invalid_argument("derive_ground: argument " + print_term(a) + " is not ground");
  const SimulTheorem query = simul_pack({{"goal", kernel::basic({}, Formula::pred(pred, args), {})}});
  try {
    return apply_rule_object(g.derive, pred, query, CallFrame(fuel)).project("result");
  } catch (const NoDerivation&) {
    return std::nullopt;
  }
}

Term numeral(std::size_t n) {
  Term t = Term::app("0");
  for (std::size_t i = 0; i < n; ++i) t = Term::app("s", {t});
  return t;
}

// ---------------------------------------------------------------------------
// Definition file syntax

namespace {

struct Tok {
  std::string text;
  std::size_t pos;
};

std::vector<Tok> lex(std::string_view s) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '%') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({std::string(s.substr(start, i - start)), start});
    } else if (c == ':' && i + 1 < s.size() && s[i + 1] == '-') {
      out.push_back({":-", i});
      i += 2;
    } else if (std::string_view("{}(),.").find(c) != std::string_view::npos) {
      out.push_back({std::string(1, c), i++});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  return out;
}

class GroupParser {
 public:
  explicit GroupParser(std::string_view text) : toks_(lex(text)), end_(text.size()) {}

  std::vector<DefGroup> parse() {
    std::vector<DefGroup> out;
    while (pos_ < toks_.size()) {
      expect("group");
      const std::string name = ident("group name");
      expect("{");
      std::vector<ClauseDef> clauses;
      while (!accept("}")) clauses.push_back(clause());
      try {
        out.push_back(declare_group(name, std::move(clauses)));
      } catch (const DefinitionError& e) {
        throw ParseError(e.what(), toks_[pos_ - 1].pos);
      }
    }
    return out;
  }

 private:
  ClauseDef clause() {
    ClauseDef c{atom(), {}};
    if (accept(":-")) {
      c.body.push_back(atom());
      while (accept(",")) c.body.push_back(atom());
    }
    expect(".");
    return c;
  }

  Formula atom() {
    const std::size_t at = pos_ < toks_.size() ? toks_[pos_].pos : end_;
    const std::string name = ident("predicate");
    if (std::isupper(static_cast<unsigned char>(name[0]))) throw ParseError("predicate names must not be capitalized", at);
    return Formula::pred(name, args());
  }

  std::vector<Term> args() {
    std::vector<Term> out;
    if (!accept("(")) return out;
    out.push_back(term());
    while (accept(",")) out.push_back(term());
    expect(")");
    return out;
  }

  Term term() {
    const std::string name = ident("term");
    if (std::isupper(static_cast<unsigned char>(name[0]))) return clause_var(name);
    return Term::app(name, args());
  }

  std::string ident(const char* what) {
    if (pos_ >= toks_.size()) throw ParseError(std::string("expected ") + what + ", found end of input", end_);
    const Tok& t = toks_[pos_];
    if (!(std::isalnum(static_cast<unsigned char>(t.text[0])) || t.text[0] == '_'))
      throw ParseError(std::string("expected ") + what + ", found '" + t.text + "'", t.pos);
    ++pos_;
    return t.text;
  }

  bool accept(const char* s) {
    if (pos_ < toks_.size() && toks_[pos_].text == s) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(const char* s) {
    if (accept(s)) return;
    if (pos_ >= toks_.size()) throw ParseError(std::string("expected '") + s + "', found end of input", end_);
    throw ParseError(std::string("expected '") + s + "', found '" + toks_[pos_].text + "'", toks_[pos_].pos);
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
  std::size_t end_;
};

}  // namespace

std::vector<DefGroup> parse_groups(std::string_view text) { return GroupParser(text).parse(); }

}  // namespace ootp
