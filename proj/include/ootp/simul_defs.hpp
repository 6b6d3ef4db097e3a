// Mutually recursive Horn-clause definitions compiled into simultaneous axioms and a
// derivation rule object with one method per predicate.

#ifndef OOTP_SIMUL_DEFS_HPP_
#define OOTP_SIMUL_DEFS_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ootp/kernel.hpp"
#include "ootp/logic.hpp"

namespace ootp {

class DefinitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `head :- body`. Variables are metavariables with serial 0; they are universally quantified
// in the folded axiom.
struct ClauseDef {
  Formula head;
  std::vector<Formula> body;
};

struct DefGroup {
  std::string name;
  std::set<std::string> predicates;
  std::vector<ClauseDef> clauses;
  // Folded clauses in declaration order: `ALL vars. b1 & ... & bm --> head`.
  std::vector<Formula> axiom_formulas;
  // One component `C |- C` per clause, named `<pred>_<k>` with k counted per predicate.
  SimulTheorem axioms;
  // Method P takes {"goal": P(t) |- P(t)} and returns {"result": Axioms |- P(t)}.
  RuleObject derive;
};

Term clause_var(const std::string& name);

// Predicates are the clause heads. Throws DefinitionError on an empty clause list, a body
// predicate outside the group, or a body variable absent from the head.
DefGroup declare_group(std::string name, std::vector<ClauseDef> clauses);
// Same, with an explicit predicate list that every head must belong to.
DefGroup declare_group(std::string name, const std::set<std::string>& predicates, std::vector<ClauseDef> clauses);

// `Axioms |- pred(args)`, or nullopt when no clause chain derives it. Throws FuelExhausted
// when every derivation attempt needs more than `fuel` nested calls, std::invalid_argument
// for non-ground arguments or an unknown predicate.
std::optional<Theorem> derive_ground(const DefGroup& g, const std::string& pred, const std::vector<Term>& args,
                                     std::size_t fuel = kDefaultFuel);

// `group NAME { clause. ... }`, any number of groups. Uppercase identifiers are variables.
std::vector<DefGroup> parse_groups(std::string_view text);

// `s(s(...(0)))` with n applications.
Term numeral(std::size_t n);

}  // namespace ootp

#endif  // OOTP_SIMUL_DEFS_HPP_
