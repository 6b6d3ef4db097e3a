#include <sstream>

#include "ootp/translate.hpp"

namespace ootp {

namespace {

// Cancels opposite occurrences of the same variable; order of the rest is kept.
Sum simplify(Sum s) {
  std::vector<Sum::Occ> kept;
  for (const auto& occ : s.terms) {
    bool cancelled = false;
    for (auto it = kept.begin(); it != kept.end(); ++it) {
      if (it->var == occ.var && it->negative != occ.negative) {
        kept.erase(it);
        cancelled = true;
        break;
      }
    }
    if (!cancelled) kept.push_back(occ);
  }
  s.terms = std::move(kept);
  return s;
}

// s with every variable v replaced by env[v].
Sum substitute(const Sum& s, const std::vector<Sum>& env) {
  Sum out;
  out.constant = s.constant;
  for (const auto& occ : s.terms) {
    const Sum& r = env[occ.var];
    for (const auto& o : r.terms) out.terms.push_back({o.negative != occ.negative, o.var});
    out.constant = occ.negative ? out.constant - r.constant : out.constant + r.constant;
  }
  return simplify(std::move(out));
}

Cond substitute(const Cond& c, const std::vector<Sum>& env) {
  return {substitute(c.lhs, env), c.op, substitute(c.rhs, env)};
}

bool is_identity(const std::vector<Sum>& env) {
  for (std::size_t v = 0; v < env.size(); ++v)
    if (!(env[v] == Sum::var(v))) return false;
  return true;
}

// Where a block goes after its assignments: jump, stop, or branch.
struct Exit {
  enum class Kind { Jump, Stop, If } kind;
  std::vector<Sum> env;  // field/parameter values at the exit
  std::size_t target = 0;
  Cond cond;
  std::shared_ptr<const Exit> then_exit, else_exit;
};

using Frames = std::vector<std::pair<const std::vector<Stmt>*, std::size_t>>;

std::shared_ptr<const Exit> build_exit(Frames frames, std::vector<Sum> env) {
  for (;;) {
    auto& [seq, i] = frames.back();
    if (i == seq->size()) {
      frames.pop_back();
      continue;  // parse guarantees some enclosing statement ends the block
    }
    const Stmt& s = (*seq)[i++];
    switch (s.kind) {
      case Stmt::Kind::Assign:
        env[s.var] = substitute(s.expr, env);
        break;
      case Stmt::Kind::Goto:
        return std::make_shared<const Exit>(Exit{Exit::Kind::Jump, std::move(env), s.target, {}, {}, {}});
      case Stmt::Kind::Stop:
        return std::make_shared<const Exit>(Exit{Exit::Kind::Stop, std::move(env), 0, {}, {}, {}});
      case Stmt::Kind::If: {
        Frames then_frames = frames, else_frames = frames;
        then_frames.emplace_back(&s.then_branch, 0);
        else_frames.emplace_back(&s.else_branch, 0);
        Exit e{Exit::Kind::If, {}, 0, substitute(s.cond, env), build_exit(std::move(then_frames), env),
               build_exit(std::move(else_frames), env)};
        return std::make_shared<const Exit>(std::move(e));
      }
    }
  }
}

std::shared_ptr<const Exit> block_exit(const ImpProgram& p, std::size_t b) {
  std::vector<Sum> env;
  for (std::size_t v = 0; v < p.vars.size(); ++v) env.push_back(Sum::var(v));
  return build_exit(Frames{{&p.blocks[b], 0}}, std::move(env));
}

OOAction to_oo(const Exit& e) {
  OOAction a;
  if (e.kind == Exit::Kind::If) {
    a.kind = OOAction::Kind::If;
    a.cond = e.cond;
    a.then_action = std::make_shared<const OOAction>(to_oo(*e.then_exit));
    a.else_action = std::make_shared<const OOAction>(to_oo(*e.else_exit));
    return a;
  }
  if (e.kind == Exit::Kind::Jump) a.method = e.target;
  if (is_identity(e.env)) {
    a.kind = OOAction::Kind::Self;
  } else {
    a.kind = OOAction::Kind::Construct;
    a.args = e.env;
  }
  return a;
}

FunBody to_fun(const Exit& e) {
  FunBody f;
  f.args = e.env;
  switch (e.kind) {
    case Exit::Kind::Jump:
      f.kind = FunBody::Kind::Call;
      f.function = e.target;
      break;
    case Exit::Kind::Stop:
      f.kind = FunBody::Kind::Return;
      break;
    case Exit::Kind::If:
      f.kind = FunBody::Kind::If;
      f.args.clear();
      f.cond = e.cond;
      f.then_body = std::make_shared<const FunBody>(to_fun(*e.then_exit));
      f.else_body = std::make_shared<const FunBody>(to_fun(*e.else_exit));
      break;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Evaluation

Integer eval(const Sum& s, const State& st) {
  Integer c = s.constant;
  for (const auto& occ : s.terms) c = occ.negative ? c - st[occ.var] : c + st[occ.var];
  return c;
}

bool holds(const Cond& c, const State& st) {
  const Integer a = eval(c.lhs, st), b = eval(c.rhs, st);
  switch (c.op) {
    case CmpOp::Lt: return a < b;
    case CmpOp::Gt: return a > b;
    case CmpOp::Eq: return a == b;
    case CmpOp::Le: return a <= b;
    case CmpOp::Ge: return a >= b;
  }
  return false;
}

State eval_all(const std::vector<Sum>& args, const State& st) {
  State out;
  out.reserve(args.size());
  for (const auto& a : args) out.push_back(eval(a, st));
  return out;
}

RunResult finished(const std::vector<std::string>& names, const State& st, std::size_t steps) {
  RunResult r;
  r.status = RunStatus::Terminated;
  r.steps = steps;
  for (std::size_t i = 0; i < names.size(); ++i) r.final_state.emplace(names[i], st[i]);
  return r;
}

RunResult exhausted(std::size_t steps) {
  RunResult r;
  r.status = RunStatus::FuelExhausted;
  r.steps = steps;
  return r;
}

std::size_t find_entry(const std::vector<std::string>& names, std::string_view entry, const char* what) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == entry) return i;
  throw std::invalid_argument(std::string("unknown ") + what + " '" + std::string(entry) + "'");
}

void check_width(const State& init, std::size_t n) {
  if (init.size() != n)
    throw std::invalid_argument("state has " + std::to_string(init.size()) + " values, expected " + std::to_string(n));
}

struct Transfer {
  bool stop;
  std::size_t target;
};

// Executes statements in place; nullopt when control reaches the end of seq.
std::optional<Transfer> exec(const std::vector<Stmt>& seq, State& st) {
  for (const Stmt& s : seq) {
    switch (s.kind) {
      case Stmt::Kind::Assign:
        st[s.var] = eval(s.expr, st);
        break;
      case Stmt::Kind::Goto: return Transfer{false, s.target};
      case Stmt::Kind::Stop: return Transfer{true, 0};
      case Stmt::Kind::If:
        if (auto t = exec(holds(s.cond, st) ? s.then_branch : s.else_branch, st)) return t;
        break;
    }
  }
  return std::nullopt;
}

}  // namespace

OOClassProgram translate_to_oo(const ImpProgram& p, std::string class_name) {
  OOClassProgram c{std::move(class_name), p.vars, p.labels, {}};
  for (std::size_t b = 0; b < p.blocks.size(); ++b) c.methods.push_back(to_oo(*block_exit(p, b)));
  return c;
}

FunProgram translate_to_fun(const ImpProgram& p) {
  FunProgram f{p.vars, p.labels, {}};
  for (std::size_t b = 0; b < p.blocks.size(); ++b) f.functions.push_back(to_fun(*block_exit(p, b)));
  return f;
}

RunResult interp_imp(const ImpProgram& p, std::string_view entry, const State& init, std::size_t fuel) {
  std::size_t block = find_entry(p.labels, entry, "label");
  check_width(init, p.vars.size());
  State st = init;
  for (std::size_t steps = 0;;) {
    if (steps == fuel) return exhausted(steps);
    ++steps;
    const auto t = exec(p.blocks[block], st);
    if (!t) throw std::logic_error("control fell off block " + p.labels[block]);
    if (t->stop) return finished(p.vars, st, steps);
    block = t->target;
  }
}

RunResult interp_oo(const OOClassProgram& c, std::string_view entry, const State& init, std::size_t fuel) {
  std::size_t method = find_entry(c.method_names, entry, "method");
  check_width(init, c.fields.size());
  State self = init;  // the receiver; never mutated, only replaced by a new instance
  for (std::size_t steps = 0;;) {
    if (steps == fuel) return exhausted(steps);
    ++steps;
    const OOAction* a = &c.methods[method];
    while (a->kind == OOAction::Kind::If) a = holds(a->cond, self) ? a->then_action.get() : a->else_action.get();
    if (a->kind == OOAction::Kind::Construct) self = eval_all(a->args, self);
    if (!a->method) return finished(c.fields, self, steps);
    method = *a->method;
  }
}

RunResult interp_fun(const FunProgram& f, std::string_view entry, const State& init, std::size_t fuel) {
  std::size_t fn = find_entry(f.function_names, entry, "function");
  check_width(init, f.params.size());
  State args = init;
  for (std::size_t steps = 0;;) {
    if (steps == fuel) return exhausted(steps);
    ++steps;
    const FunBody* b = &f.functions[fn];
    while (b->kind == FunBody::Kind::If) b = holds(b->cond, args) ? b->then_body.get() : b->else_body.get();
    State result = eval_all(b->args, args);
    if (b->kind == FunBody::Kind::Return) return finished(f.params, result, steps);
    fn = b->function;
    args = std::move(result);
  }
}

// ---------------------------------------------------------------------------
// Bisimulation

namespace {

std::string describe(const RunResult& r, const std::vector<std::string>& vars) {
  if (r.status == RunStatus::FuelExhausted) return "fuel exhausted after " + std::to_string(r.steps) + " steps";
  std::string s = "terminated (";
  for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + r.final_state.at(vars[i]).str();
  return s + ") in " + std::to_string(r.steps) + " steps";
}

bool same(const RunResult& a, const RunResult& b) {
  if (a.status != b.status) return false;
  return a.status == RunStatus::FuelExhausted || (a.final_state == b.final_state && a.steps == b.steps);
}

}  // namespace

EquivReport check_equiv(const ImpProgram& p, const std::vector<Range>& ranges, const std::vector<std::string>& entries,
                        std::size_t fuel) {
  return check_equiv(p, translate_to_oo(p), translate_to_fun(p), ranges, entries, fuel);
}

EquivReport check_equiv(const ImpProgram& p, const OOClassProgram& oo, const FunProgram& fun,
                        const std::vector<Range>& ranges, const std::vector<std::string>& entries, std::size_t fuel) {
  if (ranges.size() != p.vars.size())
    throw std::invalid_argument("check_equiv: expected " + std::to_string(p.vars.size()) + " ranges");
  for (const auto& r : ranges)
    if (r.lo > r.hi) throw std::invalid_argument("check_equiv: empty range");
  EquivReport report;
  report.vars = p.vars;
  for (const auto& entry : entries) {
    State st;
    for (const auto& r : ranges) st.push_back(r.lo);
    for (bool more = true; more;) {
      const RunResult a = interp_imp(p, entry, st, fuel);
      const RunResult b = interp_oo(oo, entry, st, fuel);
      const RunResult c = interp_fun(fun, entry, st, fuel);
      ++report.runs;
      (a.status == RunStatus::Terminated ? report.terminated : report.exhausted) += 1;
      if (!same(a, b) || !same(a, c)) report.disagreements.push_back({entry, st, a, b, c});
      // Odometer, last variable fastest.
      more = false;
      for (std::size_t k = st.size(); k-- > 0;) {
        if (st[k] < Integer(ranges[k].hi)) {
          st[k] += 1;
          more = true;
          break;
        }
        st[k] = ranges[k].lo;
      }
    }
  }
  return report;
}

std::string EquivReport::render() const {
  std::ostringstream out;
  out << "runs: " << runs << "\n";
  out << "terminated: " << terminated << "\n";
  out << "fuel exhausted: " << exhausted << "\n";
  out << "disagreements: " << disagreements.size() << "\n";
  for (const auto& d : disagreements) {
    out << "  " << d.entry << " (";
    for (std::size_t i = 0; i < vars.size(); ++i) out << (i ? ", " : "") << vars[i] << "=" << d.init[i].str();
    out << "): imp " << describe(d.imp, vars) << "; oo " << describe(d.oo, vars) << "; fun "
        << describe(d.fun, vars) << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Source emission

std::string print_sum(const Sum& s, const std::vector<std::string>& names) {
  std::string out;
  for (const auto& occ : s.terms) {
    if (occ.negative) out += "-";
    else if (!out.empty()) out += "+";
    out += names[occ.var];
  }
  if (out.empty()) return s.constant.str();
  if (s.constant > Integer(0)) out += "+" + s.constant.str();
  if (s.constant < Integer(0)) out += s.constant.str();
  return out;
}

namespace {

const char* op_text(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Gt: return ">";
    case CmpOp::Eq: return "=";
    case CmpOp::Le: return "<=";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

std::string print_cond(const Cond& c, const std::vector<std::string>& names) {
  return print_sum(c.lhs, names) + " " + op_text(c.op) + " " + print_sum(c.rhs, names);
}

std::string print_args(const std::vector<Sum>& args, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + print_sum(args[i], names);
  return out;
}

std::string print_action(const OOAction& a, const OOClassProgram& c) {
  switch (a.kind) {
    case OOAction::Kind::If: {
      auto branch = [&c](const OOAction& b) {
        const std::string s = print_action(b, c);
        return b.kind == OOAction::Kind::If ? "(" + s + ")" : s;
      };
      return "if " + print_cond(a.cond, c.fields) + " then " + branch(*a.then_action) + " else " +
             branch(*a.else_action);
    }
    case OOAction::Kind::Construct: {
      const std::string obj = "new " + c.class_name + "(" + print_args(a.args, c.fields) + ")";
      return a.method ? obj + "." + c.method_names[*a.method] + "()" : obj;
    }
    case OOAction::Kind::Self: return a.method ? "this." + c.method_names[*a.method] + "()" : "this";
  }
  return {};
}

std::string print_body(const FunBody& b, const FunProgram& f) {
  switch (b.kind) {
    case FunBody::Kind::If: {
      auto branch = [&f](const FunBody& x) {
        const std::string s = print_body(x, f);
        return x.kind == FunBody::Kind::If ? "(" + s + ")" : s;
      };
      return "if " + print_cond(b.cond, f.params) + " then " + branch(*b.then_body) + " else " + branch(*b.else_body);
    }
    case FunBody::Kind::Call: return f.function_names[b.function] + "(" + print_args(b.args, f.params) + ")";
    case FunBody::Kind::Return: return "(" + print_args(b.args, f.params) + ")";
  }
  return {};
}

std::string joined(const std::vector<std::string>& xs, const std::string& suffix = {}) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i] + suffix;
  return out;
}

}  // namespace

std::string emit_oo_source(const OOClassProgram& c) {
  std::ostringstream out;
  out << "class " << c.class_name << " {\n";
  if (!c.fields.empty()) out << "  final " << joined(c.fields) << ": int\n";
  out << "\n  // constructor\n";
  out << "  " << c.class_name << "(";
  std::vector<std::string> params;
  for (const auto& f : c.fields) params.push_back(f + f);
  out << joined(params) << (params.empty() ? "" : ": int") << ") {";
  for (std::size_t i = 0; i < c.fields.size(); ++i) out << (i ? "; " : " ") << c.fields[i] << " = " << params[i];
  out << " }\n";
  for (std::size_t m = 0; m < c.methods.size(); ++m)
    out << "\n  " << c.class_name << " " << c.method_names[m] << "() { " << print_action(c.methods[m], c) << " }\n";
  out << "}\n";
  return out.str();
}

std::string emit_fun_source(const FunProgram& f) {
  std::ostringstream out;
  std::string tuple;
  for (std::size_t i = 0; i < f.params.size(); ++i) tuple += (i ? " * " : "") + std::string("int");
  out << "type state = " << (tuple.empty() ? "unit" : tuple) << "\n\n";
  for (std::size_t i = 0; i < f.functions.size(); ++i) {
    out << (i == 0 ? "fun " : "and ") << f.function_names[i] << "(" << joined(f.params)
        << (f.params.empty() ? "" : ": int") << "): state =\n";
    out << "      " << print_body(f.functions[i], f) << (i + 1 == f.functions.size() ? ";" : "") << "\n";
  }
  return out.str();
}

}  // namespace ootp
