#include "support.hpp"

#include <nglearn/generators.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace nglearn;

namespace {

Term V(const char* n) { return Term::variable(n); }
Atom A(const char* p) { return Atom::classical(p, {V("X")}); }

int ruleWithHead(const Program& t, const char* pred) {
    for (const auto& r : t.rules) {
        if (r.head && r.head->kind == AtomKind::Classical && r.head->predicate == pred) {
            return r.id;
        }
    }
    return -1;
}

std::string canon(const char* constraint) {
    return printConstraint(canonicalise(toNogood(parseConstraint(constraint))).literals);
}

} // namespace

TEST_CASE("hat atoms flip sign", "[emitter]") {
    const Program t = translateChoiceRules(parseProgram("{ q(X) } :- p(X)."));
    const auto c    = replaceInternalLiterals({{A("p"), true}, {Atom::hat(A("q")), false}}, t);
    CHECK(c.text() == canon(":- p(X), q(X)."));
    const auto d = replaceInternalLiterals({{A("p"), true}, {Atom::hat(A("q")), true}}, t);
    CHECK(d.text() == canon(":- p(X), not q(X)."));
}

TEST_CASE("body atoms become the rule body", "[emitter]") {
    const Program t = translateChoiceRules(parseProgram("b(X) :- a(X), not c(X).\nb(X) :- e(X).\n"
                                                        "f(X) :- a(X).\n{ a(X) } :- e(X)."));
    const int rb = ruleWithHead(t, "b");
    const int rf = ruleWithHead(t, "f");
    const auto pos = replaceInternalLiterals({{Atom::bodyRep(rb, {V("X")}), true}, {A("e"), true}}, t);
    CHECK(pos.text() == canon(":- a(X), not c(X), e(X)."));

    // F β: the head when it is safe to negate
    const auto neg = replaceInternalLiterals({{Atom::bodyRep(rb, {V("X")}), false}, {A("e"), true}}, t);
    CHECK(neg.text() == canon(":- e(X), not b(X)."));

    EmitOptions head;
    head.preferHead = true;
    const auto viaHead = replaceInternalLiterals({{Atom::bodyRep(rf, {V("X")}), true}, {A("e"), true}}, t, head);
    CHECK(viaHead.text() == canon(":- f(X), e(X)."));
    // b has two rules, so its body is used even with preferHead
    const auto viaBody = replaceInternalLiterals({{Atom::bodyRep(rb, {V("X")}), true}, {A("e"), true}}, t, head);
    CHECK(viaBody.text() == pos.text());
}

TEST_CASE("safety", "[emitter]") {
    CHECK(isSafe(toNogood(parseConstraint(":- p(X), not q(X), X < 2."))));
    CHECK_FALSE(isSafe({{A("q"), false}}));
    CHECK_FALSE(isSafe({{A("p"), true}, {Atom::builtin("<", V("X"), V("Y")), true}}));
    const Program t = translateChoiceRules(parseProgram("b(X) :- a(X).\n{ a(X) } :- e(X)."));
    CHECK_THROWS_AS(replaceInternalLiterals({{Atom::bodyRep(ruleWithHead(t, "b"), {V("X")}), false}}, t), EmitError);
    CHECK(replaceInternalLiterals({{A("q"), false}}, t).quarantined);
}

TEST_CASE("learned HCP constraints are emitted", "[emitter]") {
    const Program t        = translateChoiceRules(testing::encoding("house.asp"));
    const GroundProgram gp = groundProgram(t, genHcp({2, 2, 2, 2, 1}));
    SolverOptions o;
    o.learn = true;
    o.seed  = 1;
    SolveLimits l;
    l.maxConflicts = 50;
    const auto rep = solveGround(gp, l, o);
    const auto out = rankAndEmit(rep.classes, 100, t);
    REQUIRE_FALSE(out.constraints.empty());
    bool found = false;
    for (const auto& c : out.constraints) {
        CHECK(isSafe(c.body));
        found |= c.text() == canon(":- roomTOcabinet(R,C), cabinetTOthing(C,T1), personTOthing(P1,T1), "
                                   "cabinetTOthing(C,T2), personTOthing(P2,T2), P1 < P2.");
    }
    CHECK(found);
    CHECK(out.text.find("% class violations:") == 0);
    const Program aug = augmentEncoding(testing::encoding("house.asp"), out.constraints);
    CHECK(aug.rules.size() == testing::encoding("house.asp").rules.size() + out.constraints.size());
}
