#include <doctest.h>

#include <type_traits>

#include "ootp/kernel.hpp"

using namespace ootp;

// Theorems cannot be forged: no default construction and no construction from a sequent.
static_assert(!std::is_default_constructible_v<Theorem>);
static_assert(!std::is_constructible_v<Theorem, Sequent>);
static_assert(!std::is_constructible_v<Theorem, Sequent, std::string>);
static_assert(!std::is_default_constructible_v<SimulTheorem>);
static_assert(!std::is_constructible_v<SimulTheorem, std::map<std::string, Theorem>>);

namespace {

Formula F(const char* text) { return parse_formula(text); }
Sequent S(const char* text) { return parse_sequent(text); }

Theorem axiom(const char* a) { return kernel::basic({}, F(a), {}); }

}  // namespace

TEST_SUITE("kernel") {
  TEST_CASE("basic") {
    const Theorem t = kernel::basic({F("Q")}, F("P"), {F("R")});
    CHECK(t.sequent() == S("Q, P |- P, R"));
    CHECK(t.provenance() == "basic");
  }

  TEST_CASE("conj_r requires matching contexts") {
    const Theorem t1 = kernel::basic({F("B")}, F("A"), {});
    const Theorem t2 = kernel::basic({F("C")}, F("B"), {});
    CHECK_THROWS_AS(kernel::conj_r(t1, t2, F("A & B")), RuleError);
    // Contexts are compared as multisets.
    const Theorem t3 = kernel::basic({F("A")}, F("B"), {});
    CHECK(kernel::conj_r(t1, t3, F("A & B")).sequent() == S("B, A |- A & B"));
  }

  TEST_CASE("A & B |- B & A by forward rules") {
    // A, B |- B  and  A, B |- A
    const Theorem tb = kernel::basic({F("A")}, F("B"), {});
    const Theorem ta = kernel::exchange(kernel::basic({F("B")}, F("A"), {}), S("A, B |- A"));
    const Theorem c = kernel::conj_r(tb, ta, F("B & A"));
    CHECK(c.sequent() == S("A, B |- B & A"));
    const Theorem l = kernel::conj_l(c, F("A & B"));
    CHECK(l.sequent() == S("A & B |- B & A"));
    const Theorem r = kernel::imp_r(l, F("A & B --> B & A"));
    CHECK(r.sequent() == S("|- A & B --> B & A"));
    CHECK(r.provenance() == "imp_r");
  }

  TEST_CASE("disjunction, negation, implication") {
    const Theorem d = kernel::disj_r(kernel::weaken(axiom("A"), {}, {F("~A")}), F("A | ~A"));
    CHECK(d.sequent() == S("A |- A | ~A"));
    const Theorem n = kernel::neg_r(axiom("A"), F("~A"));
    CHECK(n.sequent() == S("|- ~A, A"));
    const Theorem lem = kernel::disj_r(kernel::exchange(n, S("|- A, ~A")), F("A | ~A"));
    CHECK(lem.sequent() == S("|- A | ~A"));
    const Theorem nl = kernel::neg_l(axiom("A"), F("~A"));
    CHECK(nl.sequent() == S("A, ~A |-"));
    // Modus ponens: A, A --> B |- B
    const Theorem mp = kernel::imp_l(kernel::basic({}, F("A"), {F("B")}), kernel::basic({F("A")}, F("B"), {}), F("A --> B"));
    CHECK(mp.sequent() == S("A, A --> B |- B"));
    const Theorem t1 = kernel::basic({}, F("A"), {});
    const Theorem t2 = kernel::basic({}, F("B"), {});
    CHECK_THROWS_AS(kernel::disj_l(kernel::weaken(t1, {}, {F("C")}), t2, F("A | B")), RuleError);
    const Theorem split = kernel::disj_l(kernel::weaken(t1, {}, {F("B")}), kernel::weaken(t2, {}, {F("A")}), F("A | B"));
    CHECK(split.sequent() == S("A | B |- A, B"));
  }

  TEST_CASE("biconditional") {
    // A |- A  gives  |- A <-> A
    const Theorem t = kernel::iff_r(axiom("A"), axiom("A"), F("A <-> A"));
    CHECK(t.sequent() == S("|- A <-> A"));
    // A <-> B, A |- B from  A, A, B |- B  and  A |- A, B, B
    const Theorem t1 = kernel::basic({F("A"), F("A")}, F("B"), {});
    const Theorem t2 = kernel::basic({}, F("A"), {F("B"), F("B")});
    CHECK(kernel::iff_l(t1, t2, F("A <-> B")).sequent() == S("A <-> B, A |- B"));
    CHECK_THROWS_AS(kernel::iff_l(t1, kernel::basic({}, F("A"), {F("B")}), F("A <-> B")), RuleError);
  }

  TEST_CASE("rules reject wrong principal formulas") {
    CHECK_THROWS_AS(kernel::conj_l(axiom("A"), F("A | B")), RuleError);
    CHECK_THROWS_AS(kernel::imp_r(axiom("A"), F("B --> A")), RuleError);
    CHECK_THROWS_AS(kernel::neg_r(axiom("A"), F("~B")), RuleError);
    CHECK_THROWS_AS(kernel::all_r(axiom("A"), F("A & A"), Term::param("p", 1)), RuleError);
  }

  TEST_CASE("quantifier rules and the eigenvariable condition") {
    const Term p = Term::param("p", 41);
    const Formula all = F("ALL x. P(x)");
    const Theorem px = kernel::basic({}, instantiate_quant(all, p), {});  // P(p) |- P(p)
    const Theorem l = kernel::all_l(px, all, p);
    CHECK(l.sequent() == Sequent{{all}, {instantiate_quant(all, p)}});
    const Theorem r = kernel::all_r(l, all, p);
    CHECK(r.sequent() == Sequent{{all}, {all}});
    // p still occurs on the left: not fresh.
    CHECK_THROWS_AS(kernel::all_r(px, all, p), RuleError);
    CHECK_THROWS_AS(kernel::all_r(l, all, Term::app("a")), RuleError);
    const Formula ex = F("EX x. P(x)");
    const Theorem e = kernel::ex_r(px, ex, p);
    CHECK(e.sequent() == Sequent{{instantiate_quant(ex, p)}, {ex}});
    CHECK(kernel::ex_l(e, ex, p).sequent() == Sequent{{ex}, {ex}});
  }

  TEST_CASE("instance terms and theorems are closed") {
    const Formula captured = F("EX y. R(y, y)");
    const Theorem t = kernel::basic({}, captured, {});
    // Instantiating x by the index of y would capture it: ALL x. EX y. R(x, y) |- EX y. R(y, y).
    CHECK_THROWS_AS(kernel::all_l(t, F("ALL x. EX y. R(x, y)"), Term::bound(0)), RuleError);
    CHECK_THROWS_AS(kernel::ex_r(t, F("EX x. EX y. R(x, y)"), Term::bound(0)), RuleError);
    const Formula open = Formula::pred("P", {Term::bound(0)});
    CHECK_THROWS_AS(kernel::weaken(t, {open}, {}), RuleError);
    CHECK_THROWS_AS(kernel::basic({}, open, {}), RuleError);
  }

  TEST_CASE("instance rules contract a duplicate quantifier") {
    const Formula all = F("ALL x. P(x)");
    const Theorem t = kernel::weaken(kernel::basic({}, F("P(a)"), {}), {all}, {});
    CHECK(t.sequent().left.size() == 2);
    const Theorem c = kernel::all_l(t, all, Term::app("a"));
    CHECK(c.sequent() == Sequent{{all}, {F("P(a)")}});
  }

  TEST_CASE("structural rules") {
    const Theorem t = kernel::basic({F("B")}, F("A"), {F("C")});
    CHECK(kernel::exchange(t, S("A, B |- C, A")).sequent() == S("A, B |- C, A"));
    CHECK_THROWS_AS(kernel::exchange(t, S("A |- C, A")), RuleError);
    CHECK_THROWS_AS(kernel::exchange(t, S("A, A |- C, A")), RuleError);
    const Theorem twice = kernel::weaken(t, {F("B")}, {F("C")});
    CHECK(kernel::contract(twice, F("B"), true).sequent() == S("B, A |- A, C, C"));
    CHECK(kernel::contract(twice, F("C"), false).sequent() == S("B, A, B |- A, C"));
    CHECK_THROWS_AS(kernel::contract(t, F("B"), true), RuleError);
    ParseScope scope;
    const Formula px = parse_formula("P(?x)", scope);
    const Theorem m = kernel::basic({}, px, {});
    Substitution s = Substitution{}.bind(scope.metas.begin()->second.symbol(), Term::app("a"));
    CHECK(kernel::instantiate_thm(m, s).sequent() == S("P(a) |- P(a)"));
  }

  TEST_CASE("observer sees every minted theorem") {
    int seen = 0;
    auto previous = kernel::set_theorem_observer([&seen](const Theorem&) { ++seen; });
    const Theorem a = axiom("A");
    (void)kernel::weaken(a, {F("B")}, {});
    kernel::set_theorem_observer({});
    (void)axiom("C");
    CHECK(seen == 2);
    kernel::set_theorem_observer(std::move(previous));
  }

  TEST_CASE("simultaneous theorems") {
    const SimulTheorem st = simul_pack({{"left", axiom("A")}, {"right", axiom("B")}});
    CHECK(st.size() == 2);
    CHECK(simul_project(st, "left").sequent() == S("A |- A"));
    CHECK_THROWS_AS(st.project("middle"), RuleError);
    CHECK_THROWS_AS(simul_pack({}), std::invalid_argument);
    CHECK(SimulTheorem::discharged().empty());
  }

  TEST_CASE("rule objects: methods reach siblings through self") {
    // "both" conjoins the results of "one" and "two"; "one" and "two" weaken the argument.
    std::map<std::string, RuleMethod> methods;
    methods["one"] = [](const RuleObject&, const SimulTheorem& args, const CallFrame&) {
      return simul_pack({{"out", args.project("a")}});
    };
    methods["two"] = [](const RuleObject&, const SimulTheorem& args, const CallFrame&) {
      return simul_pack({{"out", args.project("b")}});
    };
    methods["both"] = [](const RuleObject& self, const SimulTheorem& args, const CallFrame& frame) {
      const Theorem x = self.call("one", args, frame).project("out");
      const Theorem y = self.call("two", args, frame).project("out");
      return simul_pack({{"out", kernel::conj_r(x, y, F("A & A"))}});
    };
    const RuleObject r = make_rule_object("pair", methods);
    const SimulTheorem args = simul_pack({{"a", axiom("A")}, {"b", axiom("A")}});
    CHECK(apply_rule_object(r, "both", args).project("out").sequent() == S("A |- A & A"));
    CHECK_THROWS_AS(apply_rule_object(r, "three", args), RuleError);
    CHECK_THROWS_AS(make_rule_object("empty", {}), std::invalid_argument);

    // Overriding "two" changes what "both" builds without touching "both".
    const RuleObject r2 = r.with_method("two", [](const RuleObject&, const SimulTheorem& args, const CallFrame&) {
      return simul_pack({{"out", kernel::weaken(args.project("b"), {F("B")}, {})}});
    });
    CHECK_THROWS_AS(apply_rule_object(r2, "both", args), RuleError);  // contexts now differ
    CHECK(apply_rule_object(r, "both", args).project("out").sequent() == S("A |- A & A"));
    CHECK(r2.has_method("two"));
    CHECK(r2.method_names() == std::vector<std::string>{"both", "one", "two"});
  }

  TEST_CASE("rule objects: fuel bounds self recursion") {
    // "down" on a theorem with n left formulas recurses n-1 times.
    auto make = [](std::size_t n) { return kernel::basic(std::vector<Formula>(n - 1, F("B")), F("A"), {}); };
    std::map<std::string, RuleMethod> methods;
    methods["down"] = [make](const RuleObject& self, const SimulTheorem& args, const CallFrame& frame) {
      const std::size_t n = args.project("k").sequent().left.size();
      if (n == 1) return args;
      return self.call("down", simul_pack({{"k", make(n - 1)}}), frame);
    };
    const RuleObject r = make_rule_object("down", methods);
    const SimulTheorem start = simul_pack({{"k", make(4)}});
    CHECK(apply_rule_object(r, "down", start, 3).project("k").sequent() == S("A |- A"));
    CHECK_THROWS_AS(apply_rule_object(r, "down", start, 2), FuelExhausted);

    // An infinite loop is cut off by fuel.
    const RuleObject loop = make_rule_object(
        "loop", {{"go", [](const RuleObject& self, const SimulTheorem& a, const CallFrame& f) { return self.call("go", a, f); }}});
    CHECK_THROWS_AS(apply_rule_object(loop, "go", start, 50), FuelExhausted);
    CallFrame frame(3);
    CHECK(frame.next().next().next().fuel() == 0);
    CHECK_THROWS_AS(frame.next().next().next().next(), FuelExhausted);
  }
}
