// A goto language with integer variables, its translation to a non-imperative class and
// to mutually recursive functions, interpreters for all three forms and a bisimulation check.

#ifndef OOTP_TRANSLATE_HPP_
#define OOTP_TRANSLATE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ootp {

// Arbitrary precision integer; machine words until an operation overflows.
class Integer {
 public:
  Integer(std::int64_t v = 0) : small_(v) {}  // NOLINT(google-explicit-constructor)
  // Decimal with optional leading '-'; throws std::invalid_argument.
  static Integer parse(std::string_view text);

  bool is_small() const noexcept { return big_ == nullptr; }
  std::string str() const;

  friend Integer operator+(const Integer& a, const Integer& b);
  friend Integer operator-(const Integer& a, const Integer& b);
  Integer operator-() const { return Integer(0) - *this; }
  Integer& operator+=(const Integer& b) { return *this = *this + b; }
  Integer& operator-=(const Integer& b) { return *this = *this - b; }
  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

 private:
  struct Big;
  struct BigTag {};
  Integer(BigTag, std::shared_ptr<const Big> big) : big_(std::move(big)) {}
  static Integer from_big(const Big& b);

  std::int64_t small_ = 0;
  std::shared_ptr<const Big> big_;
};

// Affine integer expression: signed variable occurrences plus a constant.
struct Sum {
  struct Occ {
    bool negative;
    std::size_t var;
    friend bool operator==(const Occ&, const Occ&) = default;
  };
  std::vector<Occ> terms;
  Integer constant;

  static Sum var(std::size_t v) { return Sum{{{false, v}}, 0}; }
  static Sum lit(Integer c) { return Sum{{}, std::move(c)}; }
  friend bool operator==(const Sum&, const Sum&) = default;
};

enum class CmpOp { Lt, Gt, Eq, Le, Ge };

struct Cond {
  Sum lhs;
  CmpOp op = CmpOp::Lt;
  Sum rhs;
};

// Statement of the goto language.
struct Stmt {
  enum class Kind { Assign, Goto, If, Stop };
  Kind kind = Kind::Stop;
  std::size_t var = 0;     // Assign
  Sum expr;                // Assign
  std::size_t target = 0;  // Goto: block index
  std::string label;       // Goto
  Cond cond;               // If
  std::vector<Stmt> then_branch, else_branch;
  std::size_t line = 0, column = 0;  // source position
};

struct ImpProgram {
  std::vector<std::string> vars;
  std::vector<Integer> init;
  std::vector<std::string> labels;
  std::vector<std::vector<Stmt>> blocks;  // parallel to labels

  std::optional<std::size_t> label_index(std::string_view label) const;
};

// Method body: `new C(args).m()`, `this.m()`, `new C(args)`, `this`, or a conditional.
struct OOAction {
  enum class Kind { Construct, Self, If };
  Kind kind = Kind::Self;
  std::vector<Sum> args;                    // Construct: one per field, over field indices
  std::optional<std::size_t> method;        // Construct/Self: method to call, none = return the object
  Cond cond;                                // If
  std::shared_ptr<const OOAction> then_action, else_action;
};

struct OOClassProgram {
  std::string class_name;
  std::vector<std::string> fields;
  std::vector<std::string> method_names;
  std::vector<OOAction> methods;  // parallel to method_names
};

// Function body: `f(args)`, `(args)`, or a conditional. Expressions range over parameters.
struct FunBody {
  enum class Kind { Call, Return, If };
  Kind kind = Kind::Return;
  std::vector<Sum> args;
  std::size_t function = 0;  // Call
  Cond cond;
  std::shared_ptr<const FunBody> then_body, else_body;
};

struct FunProgram {
  std::vector<std::string> params;
  std::vector<std::string> function_names;
  std::vector<FunBody> functions;
};

class ImpSyntaxError : public std::runtime_error {
 public:
  ImpSyntaxError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

ImpProgram parse_imp(std::string_view text);
OOClassProgram translate_to_oo(const ImpProgram& p, std::string class_name = "C");
FunProgram translate_to_fun(const ImpProgram& p);

using State = std::vector<Integer>;

enum class RunStatus { Terminated, FuelExhausted };

struct RunResult {
  RunStatus status = RunStatus::FuelExhausted;
  std::map<std::string, Integer> final_state;  // empty unless terminated
  std::size_t steps = 0;                       // block, method or function entries; never above fuel
};

// One step per block entry. Throws std::invalid_argument for an unknown entry or a state of the
// wrong width.
RunResult interp_imp(const ImpProgram& p, std::string_view entry, const State& init, std::size_t fuel);
RunResult interp_oo(const OOClassProgram& c, std::string_view entry, const State& init, std::size_t fuel);
RunResult interp_fun(const FunProgram& f, std::string_view entry, const State& init, std::size_t fuel);

struct Range {
  std::int64_t lo, hi;
};

struct Disagreement {
  std::string entry;
  State init;
  RunResult imp, oo, fun;
};

struct EquivReport {
  std::size_t runs = 0;
  std::size_t terminated = 0;
  std::size_t exhausted = 0;
  std::vector<Disagreement> disagreements;
  std::vector<std::string> vars;

  bool ok() const noexcept { return disagreements.empty(); }
  // Deterministic text form.
  std::string render() const;
};

// Runs the three interpreters on every (entry, state) in entries x ranges (one range per
// variable, first variable slowest). A disagreement is a different status, a different final
// state, or, on terminating runs, a different step count.
EquivReport check_equiv(const ImpProgram& p, const std::vector<Range>& ranges, const std::vector<std::string>& entries,
                        std::size_t fuel);
// Same, against the given translations instead of fresh ones.
EquivReport check_equiv(const ImpProgram& p, const OOClassProgram& oo, const FunProgram& fun,
                        const std::vector<Range>& ranges, const std::vector<std::string>& entries, std::size_t fuel);

std::string print_sum(const Sum& s, const std::vector<std::string>& names);
std::string emit_oo_source(const OOClassProgram& c);
std::string emit_fun_source(const FunProgram& f);

}  // namespace ootp

#endif  // OOTP_TRANSLATE_HPP_
