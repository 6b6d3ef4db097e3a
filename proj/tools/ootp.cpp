#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ootp/server.hpp"
#include "ootp/session.hpp"
#include "ootp/translate.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// `a..b` with optional signs.
std::optional<ootp::Range> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return std::nullopt;
  try {
    std::size_t used = 0;
    const std::string lo = text.substr(0, dots), hi = text.substr(dots + 2);
    const long long a = std::stoll(lo, &used);
    if (used != lo.size()) return std::nullopt;
    const long long b = std::stoll(hi, &used);
    if (used != hi.size() || a > b) return std::nullopt;
    return ootp::Range{a, b};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

int prove(const std::string& path) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << "ootp: cannot read '" << path << "'\n";
    return kUsage;
  }
  try {
    const ootp::ScriptResult r = ootp::run_script(*text, std::filesystem::path(path).parent_path());
    std::cout << r.transcript;
    return r.exit_code;
  } catch (const ootp::ScriptSyntaxError& e) {
    std::cerr << "ootp: " << path << ": " << e.what() << "\n";
    return kUsage;
  }
}

struct TranslateOptions {
  std::string input, target, range = "-5..5", output;
  bool check = false;
  std::size_t fuel = 10000;
  std::vector<std::string> entries;
};

int translate(const TranslateOptions& o) {
  const auto text = read_file(o.input);
  if (!text) {
    std::cerr << "ootp: cannot read '" << o.input << "'\n";
    return kUsage;
  }
  ootp::ImpProgram p;
  try {
    p = ootp::parse_imp(*text);
  } catch (const ootp::ImpSyntaxError& e) {
    std::cerr << "ootp: " << o.input << ": " << e.what() << "\n";
    return kUsage;
  }
  const auto range = parse_range(o.range);
  if (!range) {
    std::cerr << "ootp: --range expects lo..hi with lo <= hi, got '" << o.range << "'\n";
    return kUsage;
  }
  const std::vector<std::string> entries = o.entries.empty() ? p.labels : o.entries;
  for (const auto& e : entries) {
    if (!p.label_index(e)) {
      std::cerr << "ootp: unknown entry label '" << e << "'\n";
      return kFailure;
    }
  }
  const std::string source =
      o.target == "oo" ? ootp::emit_oo_source(ootp::translate_to_oo(p)) : ootp::emit_fun_source(ootp::translate_to_fun(p));
  if (o.output.empty()) {
    std::cout << source;
  } else {
    std::ofstream out(o.output);
    if (!(out << source)) {
      std::cerr << "ootp: cannot write '" << o.output << "'\n";
      return kFailure;
    }
  }
  if (!o.check) return kOk;
  const ootp::EquivReport report =
      ootp::check_equiv(p, std::vector<ootp::Range>(p.vars.size(), *range), entries, o.fuel);
  std::cout << (o.output.empty() ? "\n" : "") << report.render();
  return report.ok() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Object-oriented tactic prover"};
  app.require_subcommand(1);

  std::string script;
  auto* prove_cmd = app.add_subcommand("prove", "Run a proof script");
  prove_cmd->add_option("file", script, "Script file (.pfs)")->required();

  auto* repl_cmd = app.add_subcommand("repl", "Interactive proof session");

  TranslateOptions t;
  auto* tr = app.add_subcommand("translate", "Translate a goto program");
  tr->add_option("--input", t.input, "Program file (.imp)")->required();
  tr->add_option("--to", t.target, "Target form")->required()->check(CLI::IsMember({"oo", "fun"}));
  tr->add_flag("--check", t.check, "Run the bisimulation check");
  tr->add_option("--range", t.range, "Initial value range for every variable, lo..hi")->allow_extra_args(false);
  tr->add_option("--fuel", t.fuel, "Step bound per run");
  tr->add_option("--entry", t.entries, "Entry label (repeatable; default all)");
  tr->add_option("--output,-o", t.output, "Write the translated source here");

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve_cmd = app.add_subcommand("serve", "Serve the JSON session protocol");
  serve_cmd->add_option("--port", port, "TCP port")->required();
  serve_cmd->add_option("--host", host, "Bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*prove_cmd) return prove(script);
  if (*repl_cmd) {
    ootp::run_repl(std::cin, std::cout);
    return kOk;
  }
  if (*tr) return translate(t);
  if (*serve_cmd) {
    std::cerr << "ootp: serving on " << host << ":" << port << "\n";
    if (!ootp::serve(port, host)) {
      std::cerr << "ootp: cannot listen on " << host << ":" << port << "\n";
      return kFailure;
    }
  }
  return kOk;
}
