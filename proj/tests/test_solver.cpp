#include "support.hpp"

#include <nglearn/generators.hpp>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

using namespace nglearn;

namespace {

SolveReport run(const std::string& text, std::size_t n = 0, SolverOptions opts = {}) {
    const GroundProgram gp = groundProgram(translateChoiceRules(parseProgram(text)), {});
    SolveLimits l;
    l.targetAnswerSets = n;
    return solveGround(gp, l, opts);
}

} // namespace

TEST_CASE("small programs", "[solver]") {
    CHECK(run("a. :- a.").status == SolveStatus::UNSAT);
    CHECK(run("p :- not p.").status == SolveStatus::UNSAT);
    CHECK(run("a :- not b. b :- not a.").answerSets.size() == 2);
    const auto loop = run("a :- b. b :- a. c :- not a.");
    REQUIRE(loop.answerSets.size() == 1);
    CHECK(loop.answerSets[0] == std::vector<Atom>{Atom::classical("c")});
    CHECK(run("{ a; b; c }.").answerSets.size() == 8);
    CHECK(run("{ a; b; c }.", 3).answerSets.size() == 3);
    CHECK(run("{ a; b }. :- a, b. :- not a, not b.").answerSets.size() == 2);
}

TEST_CASE("propagation, decisions and backjumping", "[solver]") {
    const GroundProgram gp = groundProgram(translateChoiceRules(parseProgram("{ a }. b :- a. c :- b.")), {});
    Solver s(gp);
    REQUIRE_FALSE(s.propagate());
    CHECK(s.level() == 0);
    const AtomId a = *gp.find(Atom::classical("a"));
    const AtomId c = *gp.find(Atom::classical("c"));
    s.decide({a, true});
    CHECK(s.level() == 1);
    REQUIRE_FALSE(s.propagate());
    CHECK(s.atoms()[c].positive());
    CHECK(s.atoms()[c].dl == 1);
    s.backjump(0);
    CHECK(s.level() == 0);
    CHECK_FALSE(s.atoms()[c].assigned());
}

TEST_CASE("ground first-UIP nogood is asserting", "[solver]") {
    const GroundProgram gp =
        groundProgram(translateChoiceRules(parseProgram("{ a; b }. c :- a. d :- a. :- c, d, b.")), {});
    Solver s(gp);
    REQUIRE_FALSE(s.propagate());
    s.decide({*gp.find(Atom::classical("b")), true});
    REQUIRE_FALSE(s.propagate());
    s.decide({*gp.find(Atom::classical("a")), true});
    const auto v = s.propagate();
    REQUIRE(v);
    const auto learned = s.analyzeGround(*v);
    int atTop = 0;
    for (const auto& l : learned) {
        atTop += s.atoms()[l.atom].dl == s.level();
    }
    CHECK(atTop == 1);
}

TEST_CASE("fixed seed is deterministic", "[solver]") {
    const GroundProgram gp =
        groundProgram(translateChoiceRules(testing::encoding("3cc.asp")), gen3cc(6, true, 4));
    SolverOptions o;
    o.seed        = 9;
    o.recordTrace = true;
    SolveLimits l;
    const auto r1 = solveGround(gp, l, o);
    const auto r2 = solveGround(gp, l, o);
    CHECK(r1.trace == r2.trace);
    CHECK(r1.answerSets == r2.answerSets);
    CHECK(r1.conflicts == r2.conflicts);
}

TEST_CASE("random programs agree with the oracle", "[solver][oracle]") {
    for (std::uint64_t seed = 0; seed != 60; ++seed) {
        const std::string text = testing::randomProgram(seed);
        INFO(text);
        const Program p = parseProgram(text);
        CHECK(testing::solverModels(p, {}) == testing::oracleModels(p, {}));
    }
}

TEST_CASE("report is valid JSON", "[solver]") {
    const GroundProgram gp = groundProgram(translateChoiceRules(testing::encoding("house.asp")),
                                           genHcp({1, 2, 1, 1, 0}));
    SolverOptions o;
    o.learn     = true;
    const auto r = solveGround(gp, {}, o);
    const auto j = nlohmann::json::parse(r.toJson(gp));
    CHECK(j.at("status") == "SAT");
    CHECK(j.contains("conflicts"));
    CHECK(j.contains("decisions"));
}
