#include "support.hpp"

#include <nglearn/generaliser.hpp>
#include <nglearn/generators.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace nglearn;

namespace {

Term V(const char* n) { return Term::variable(n); }

const NoGoodPair& findNogood(const GroundProgram& gp, NoGoodRole role, const std::string& pred) {
    for (const auto& ng : gp.nogoods) {
        if (ng.role != role || !ng.hasTwin()) {
            continue;
        }
        for (const auto& l : *ng.nonground) {
            if (l.atom.predicate == pred) {
                return ng;
            }
        }
    }
    throw std::runtime_error("no such nogood");
}

} // namespace

TEST_CASE("factoring unifies the twins of duplicate literals", "[generaliser]") {
    const std::vector<GLit> ground{{1, true}, {2, false}, {1, true}};
    const std::vector<SignedLiteral> twin{{Atom::classical("p", {V("X")}), true},
                                          {Atom::classical("q", {V("X"), V("Y")}), false},
                                          {Atom::classical("p", {V("Y")}), true}};
    const auto st = Generaliser::factor(ground, twin);
    REQUIRE(st.omega.size() == 2);
    REQUIRE(st.Omega.size() == 2);
    CHECK(st.Omega[1].atom.args[0] == st.Omega[1].atom.args[1]);
}

TEST_CASE("one resolution step keeps the twin aligned", "[generaliser]") {
    const Program p =
        translateChoiceRules(parseProgram("{ a(X) } :- d(X).\nb(X) :- a(X).\n:- b(X), c(X).\nc(X) :- d(X)."));
    const GroundProgram gp = groundProgram(p, testing::facts("d(1)."));
    const NoGoodPair& violated = findNogood(gp, NoGoodRole::Constraint, "b");
    const NoGoodPair& head     = findNogood(gp, NoGoodRole::Head, "b");

    Generaliser g;
    const ResolutionState st = Generaliser::factor(violated.ground, *violated.nonground);
    REQUIRE(witnessOf(st, gp.atoms));
    const GLit onB = violated.ground[0].atom == head.ground[0].atom ? violated.ground[0] : violated.ground[1];
    const ResolutionState next = g.resolve(st, onB, head);
    REQUIRE(next.omega.size() == 2);
    const auto w = witnessOf(next, gp.atoms);
    REQUIRE(w);
    // c(X) and the body atom of the b-rule end up sharing their variable
    std::vector<std::string> vars;
    for (const auto& l : next.Omega) {
        l.atom.collectVariables(vars);
    }
    CHECK(vars.size() == 1);
    for (const auto& l : next.Omega) {
        CHECK(l.truth);
    }
}

TEST_CASE("duplicate literal unification", "[generaliser]") {
    const std::vector<SignedLiteral> a{{Atom::classical("p", {V("X")}), true}, {Atom::classical("q", {V("X")}), true}};
    const std::vector<SignedLiteral> b{{Atom::classical("p", {V("Y")}), true}, {Atom::classical("r", {V("Y")}), false}};
    const std::vector<GLit> ga{{1, true}, {2, true}};
    const std::vector<GLit> gb{{1, true}, {3, false}};
    const Substitution s = unifyDuplicateLiterals(a, b, ga, gb);
    CHECK(s.apply(V("X")) == s.apply(V("Y")));
}

TEST_CASE("witness invariant during learning", "[generaliser]") {
    const Program h = translateChoiceRules(testing::encoding("house.asp"));
    const Program c = translateChoiceRules(testing::encoding("3cc.asp"));
    for (int lookback : {1, 2, 3}) {
        SolverOptions o;
        o.learn                = true;
        o.generaliser.lookback = lookback;
        SolveLimits l;
        l.maxConflicts = 100;
        const auto r1  = solveGround(groundProgram(h, genHcp({2, 2, 2, 2, 1})), l, o);
        const auto r2  = solveGround(groundProgram(c, gen3cc(5, false, 5)), l, o);
        CHECK(r1.witnessChecks > 0);
        CHECK(r2.witnessChecks > 0);
        CHECK(r1.witnessViolations == 0);
        CHECK(r2.witnessViolations == 0);
    }
}

TEST_CASE("conflict classes count violations", "[generaliser]") {
    const Program p =
        translateChoiceRules(parseProgram("{ a(X) } :- d(X).\nb(X) :- a(X).\n:- b(X), c(X).\nc(X) :- d(X)."));
    const GroundProgram gp = groundProgram(p, testing::facts("d(1). d(2)."));
    ClassTable t;
    AnalysisResult r;
    r.nonground.push_back({{Atom::classical("a", {V("X")}), true}, {Atom::classical("c", {V("X")}), true}});
    const auto& v = findNogood(gp, NoGoodRole::Constraint, "b");
    t.record(v, r);
    t.record(v, r);
    REQUIRE(t.classes().size() == 1);
    const ConflictClass* cls = t.find(*v.nonground);
    REQUIRE(cls);
    CHECK(cls->violations == 2);
    REQUIRE(cls->topFirst());
    CHECK(cls->topFirst()->count == 2);
    CHECK_FALSE(cls->topLast());
    ClassTable u;
    u.merge(t);
    u.merge(t);
    CHECK(u.find(*v.nonground)->violations == 4);
}

TEST_CASE("learning does not change the search", "[generaliser][solver]") {
    const GroundProgram gp = groundProgram(translateChoiceRules(testing::encoding("3cc.asp")), gen3cc(8, false, 2));
    SolverOptions off;
    off.recordTrace = true;
    off.seed        = 3;
    SolverOptions on = off;
    on.learn         = true;
    on.generaliser.lookback = 2;
    SolveLimits l;
    const auto a = solveGround(gp, l, off);
    const auto b = solveGround(gp, l, on);
    CHECK(a.status == b.status);
    CHECK(a.trace == b.trace);
    CHECK(a.learnedGround == b.learnedGround);
    CHECK(b.classes.classes().size() > 0);
}
