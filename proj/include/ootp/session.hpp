// Command interpreter shared by proof scripts, the REPL and the session server.

#ifndef OOTP_SESSION_HPP_
#define OOTP_SESSION_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ootp/simul_defs.hpp"
#include "ootp/tactics.hpp"

namespace ootp {

// A command that ran but did not succeed. The session state is unchanged.
class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A script that cannot be split into known commands.
class ScriptSyntaxError : public std::runtime_error {
 public:
  ScriptSyntaxError(const std::string& message, std::size_t line);
  std::size_t line() const noexcept { return line_; }
  // The message without the line prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

struct Command {
  std::size_t line = 0;
  std::string keyword;
  std::string argument;
};

// One command per line; `#` starts a comment line; a `group` command continues until its braces
// balance. Throws ScriptSyntaxError on an unknown keyword or an unterminated group.
std::vector<Command> parse_script(std::string_view text);

class Session {
 public:
  // Files named by `load` resolve against base_dir.
  explicit Session(std::filesystem::path base_dir = ".");

  // Each operation throws CommandError on failure and leaves the session unchanged.
  void new_goal(std::string_view sequent);
  void apply(std::string_view tactic);
  void undo();
  Theorem qed();
  std::vector<std::string> applicable() const;
  // Returns the names of the groups added.
  std::vector<std::string> load_group(std::string_view text);
  std::vector<std::string> load_file(const std::string& path);
  Theorem derive(std::string_view atom);

  bool has_goal() const noexcept { return proof_.has_value(); }
  const ProofState& proof() const;
  const std::vector<DefGroup>& groups() const noexcept { return groups_; }
  // Current bundle text, or `no active goal`.
  std::string render() const;

  // Runs one command (not `expect` or `quit`) and returns its transcript text, newline terminated.
  std::string execute(const Command& c);

 private:
  std::filesystem::path base_dir_;
  std::optional<ProofState> proof_;
  std::vector<DefGroup> groups_;
};

struct ScriptResult {
  int exit_code = 0;  // 0 all commands succeeded or failed as expected, 1 otherwise
  std::string transcript;
};

// Stops at the first unexpected outcome. Throws ScriptSyntaxError before running anything.
ScriptResult run_script(std::string_view text, const std::filesystem::path& base_dir = ".");

// Prompts with `ootp> `, reports failures and keeps going until `quit` or end of input.
void run_repl(std::istream& in, std::ostream& out, const std::filesystem::path& base_dir = ".");

std::string help_text();

}  // namespace ootp

#endif  // OOTP_SESSION_HPP_
