#include "ootp/session.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>
#include <sstream>

namespace ootp {

ScriptSyntaxError::ScriptSyntaxError(const std::string& message, std::size_t line)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line), message_(message) {}

namespace {

const char* const kKeywords[] = {"goal", "group", "load", "derive", "apply", "undo",
                                 "qed",  "expect", "state", "applicable", "help", "quit"};

bool known_keyword(std::string_view w) {
  return std::find(std::begin(kKeywords), std::end(kKeywords), w) != std::end(kKeywords);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Brace depth change over s, ignoring `%` comments.
int brace_delta(std::string_view s) {
  int d = 0;
  for (char c : s) {
    if (c == '%') break;
    if (c == '{') ++d;
    if (c == '}') --d;
  }
  return d;
}

enum class Expect { Unstated, Ok, Fail };

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

}  // namespace

std::vector<Command> parse_script(std::string_view text) {
  std::vector<Command> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    const auto sp = s.find_first_of(" \t");
    Command c{line, s.substr(0, sp), sp == std::string::npos ? std::string() : trim(s.substr(sp))};
    if (!known_keyword(c.keyword)) throw ScriptSyntaxError("unknown command '" + c.keyword + "'", line);
    if (c.keyword == "group") {
      int depth = brace_delta(s);
      while (depth > 0 && std::getline(in, raw)) {
        ++line;
        depth += brace_delta(raw);
        c.argument += "\n" + raw;
      }
      if (depth != 0) throw ScriptSyntaxError("unbalanced braces in group", c.line);
    }
    if (c.keyword == "expect" && c.argument != "ok" && c.argument != "fail")
      throw ScriptSyntaxError("expect takes 'ok' or 'fail'", line);
    out.push_back(std::move(c));
  }
  return out;
}

Session::Session(std::filesystem::path base_dir) : base_dir_(std::move(base_dir)) {}

const ProofState& Session::proof() const {
  if (!proof_) throw CommandError("no active goal");
  return *proof_;
}

void Session::new_goal(std::string_view sequent) {
  try {
    proof_ = ProofState::start(parse_sequent(sequent));
  } catch (const ParseError& e) {
    throw CommandError(std::string("parse error: ") + e.what());
  }
}

void Session::apply(std::string_view tactic) {
  const ProofState& ps = proof();
  TacticObject t = [&] {
    try {
      return parse_tactic(tactic);
    } catch (const TacticSyntaxError& e) {
      throw CommandError(std::string("tactic syntax error: ") + e.what());
    }
  }();
  try {
    proof_ = proof_state_apply(ps, t);
  } catch (const ProofError& e) {
    throw CommandError(e.what());
  } catch (const FuelExhausted& e) {
    throw CommandError(std::string("fuel exhausted: ") + e.what());
  }
}

void Session::undo() {
  try {
    proof_ = proof_state_undo(proof());
  } catch (const ProofError& e) {
    throw CommandError(e.what());
  }
}

Theorem Session::qed() {
  try {
    Theorem thm = ootp::qed(proof());
    proof_.reset();
    return thm;
  } catch (const ProofError& e) {
    throw CommandError(e.what());
  } catch (const RuleError& e) {
    throw CommandError(std::string("validation failed: ") + e.what());
  }
}

std::vector<std::string> Session::applicable() const { return applicable_tactics(proof().current()); }

std::vector<std::string> Session::load_group(std::string_view text) {
  std::vector<DefGroup> parsed;
  try {
    parsed = parse_groups(text);
  } catch (const ParseError& e) {
    throw CommandError(std::string("group error: ") + e.what());
  }
  for (const auto& g : parsed) {
    for (const auto& h : groups_)
      if (h.name == g.name) throw CommandError("group '" + g.name + "' already defined");
  }
  std::vector<std::string> names;
  for (auto& g : parsed) {
    names.push_back(g.name);
    groups_.push_back(std::move(g));
  }
  return names;
}

std::vector<std::string> Session::load_file(const std::string& path) {
  const std::filesystem::path full = base_dir_ / path;
  std::ifstream in(full);
  if (!in) throw CommandError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return load_group(text.str());
}

Theorem Session::derive(std::string_view atom) {
  Formula f = [&] {
    try {
      return parse_formula(atom);
    } catch (const ParseError& e) {
      throw CommandError(std::string("parse error: ") + e.what());
    }
  }();
  if (!f.is_pred()) throw CommandError("derive expects an atomic formula");
  for (const auto& g : groups_) {
    if (!g.predicates.count(f.name())) continue;
    try {
      if (auto thm = derive_ground(g, f.name(), f.terms())) return *thm;
    } catch (const FuelExhausted&) {
      throw CommandError("fuel exhausted deriving " + print_formula(f));
    } catch (const std::invalid_argument& e) {
      throw CommandError(e.what());
    }
    throw CommandError("no derivation of " + print_formula(f) + " in group " + g.name);
  }
  throw CommandError("no group defines predicate '" + f.name() + "'");
}

std::string Session::render() const { return proof_ ? proof_->current().render() : "no active goal\n"; }

std::string Session::execute(const Command& c) {
  const std::string& k = c.keyword;
  if (k == "goal") {
    new_goal(c.argument);
    return render();
  }
  if (k == "apply") {
    apply(c.argument);
    return render();
  }
  if (k == "undo") {
    undo();
    return render();
  }
  if (k == "qed") return "theorem: " + print_sequent(qed().sequent()) + "\n";
  if (k == "state") return render();
  if (k == "applicable") return "applicable: " + join(applicable(), " ") + "\n";
  if (k == "group") return "defined: " + join(load_group("group " + c.argument), " ") + "\n";
  if (k == "load") return "defined: " + join(load_file(c.argument), " ") + "\n";
  if (k == "derive") return "derived: " + print_sequent(derive(c.argument).sequent()) + "\n";
  if (k == "help") return help_text();
  throw CommandError("'" + k + "' is not available here");
}

ScriptResult run_script(std::string_view text, const std::filesystem::path& base_dir) {
  const std::vector<Command> commands = parse_script(text);
  Session session(base_dir);
  ScriptResult r;
  Expect expectation = Expect::Unstated;
  for (const Command& c : commands) {
    r.transcript += "> " + c.keyword + (c.argument.empty() ? "" : " " + c.argument) + "\n";
    if (c.keyword == "expect") {
      expectation = c.argument == "ok" ? Expect::Ok : Expect::Fail;
      continue;
    }
    if (c.keyword == "quit") break;
    const bool want_ok = expectation != Expect::Fail;
    expectation = Expect::Unstated;
    try {
      r.transcript += session.execute(c);
      if (!want_ok) {
        r.transcript += "line " + std::to_string(c.line) + ": expected failure, but the command succeeded\n";
        r.exit_code = 1;
        return r;
      }
    } catch (const CommandError& e) {
      if (want_ok) {
        r.transcript += "line " + std::to_string(c.line) + ": error: " + e.what() + "\n";
        r.exit_code = 1;
        return r;
      }
      r.transcript += "failed as expected: " + std::string(e.what()) + "\n";
    }
  }
  return r;
}

void run_repl(std::istream& in, std::ostream& out, const std::filesystem::path& base_dir) {
  Session session(base_dir);
  Expect expectation = Expect::Unstated;
  std::string pending;
  int depth = 0;
  std::string raw;
  out << "ootp> " << std::flush;
  while (std::getline(in, raw)) {
    pending += raw + "\n";
    depth += brace_delta(raw);
    if (depth > 0) continue;
    const std::string text = std::exchange(pending, {});
    depth = 0;
    std::vector<Command> commands;
    try {
      commands = parse_script(text);
    } catch (const ScriptSyntaxError& e) {
      out << "error: " << e.message() << "\n";
    }
    for (const Command& c : commands) {
      if (c.keyword == "quit") return;
      if (c.keyword == "expect") {
        expectation = c.argument == "ok" ? Expect::Ok : Expect::Fail;
        continue;
      }
      const bool want_ok = expectation != Expect::Fail;
      expectation = Expect::Unstated;
      try {
        out << session.execute(c);
        if (!want_ok) out << "note: expected failure, but the command succeeded\n";
      } catch (const CommandError& e) {
        out << (want_ok ? "error: " : "failed as expected: ") << e.what() << "\n";
      }
    }
    out << "ootp> " << std::flush;
  }
  out << "\n";
}

std::string help_text() {
  return "commands:\n"
         "  goal <sequent>        start a proof of the sequent\n"
         "  apply <tactic>        run a tactic on the current goals\n"
         "  undo                  step back one tactic\n"
         "  qed                   check the proof in the kernel and close it\n"
         "  state                 show the goals and metavariable bindings\n"
         "  applicable            list primitive tactics that apply\n"
         "  group NAME { ... }    define simultaneous predicates\n"
         "  load <file>           define groups from a file\n"
         "  derive <atom>         derive a ground atom from the groups\n"
         "  expect ok|fail        state the outcome of the next command\n"
         "  help                  show this text\n"
         "  quit                  leave\n"
         "tactics: basic, rule <name> [goal], all_r, all_l, ex_r, ex_l, ID, FAIL,\n"
         "  t THEN t, t ORELSE t, REPEAT t, TRY t, ALLGOALS t, DEPTH <n>\n";
}

}  // namespace ootp
