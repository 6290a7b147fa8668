#include "support.hpp"

#include <nglearn/generators.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace nglearn;

namespace {

std::size_t nodes(const std::vector<Atom>& f) {
    std::set<Term> n;
    for (const auto& a : f) {
        n.insert(a.args.begin(), a.args.end());
    }
    return n.size();
}

} // namespace

TEST_CASE("3cc sizes", "[generators]") {
    CHECK(nodes(gen3cc(1, true, 0)) == 4);
    CHECK(gen3cc(1, true, 0).size() == 5);
    CHECK(nodes(gen3cc(2, true, 0)) == 7);
    CHECK(gen3cc(2, true, 0).size() == 10);
    CHECK(gen3cc(2, false, 0).size() == 11);
    CHECK(nodes(gen3cc(50, true, 3)) == 151);
}

TEST_CASE("generators are deterministic", "[generators]") {
    CHECK(factsToText(gen3cc(7, false, 11)) == factsToText(gen3cc(7, false, 11)));
    CHECK(factsToText(genHcp({2, 3, 2, 2, 5})) == factsToText(genHcp({2, 3, 2, 2, 5})));
    CHECK(factsToText(gen3ccTiny(4)) == factsToText(gen3ccTiny(4)));
    CHECK(factsToText(gen3cc(7, true, 1)) != factsToText(gen3cc(7, true, 2)));
}

TEST_CASE("hcp facts", "[generators]") {
    const auto f = genHcp({2, 3, 2, 4, 0});
    std::map<std::string, int> byPred;
    for (const auto& a : f) {
        ++byPred[a.predicate];
    }
    CHECK(byPred["personTOthing"] == 6);
    CHECK(byPred["cabinetDomain"] == 2);
    CHECK(byPred["roomDomain"] == 4);
}

TEST_CASE("3cc satisfiability matches the construction", "[generators][oracle]") {
    const Program e = testing::encoding("3cc.asp");
    for (std::uint64_t s = 0; s != 3; ++s) {
        CHECK_FALSE(enumerateStableModels(e, gen3cc(1, true, s)).empty());
        CHECK(enumerateStableModels(e, gen3cc(1, false, s)).empty());
    }
    SolveLimits l;
    l.targetAnswerSets = 1;
    const Program t    = translateChoiceRules(e);
    for (int len : {3, 10}) {
        CHECK(solveGround(groundProgram(t, gen3cc(len, true, 1)), l).status == SolveStatus::SAT);
        CHECK(solveGround(groundProgram(t, gen3cc(len, false, 1)), l).status == SolveStatus::UNSAT);
    }
}

TEST_CASE("tiny instances fit the oracle", "[generators][oracle]") {
    const Program h = testing::encoding("house.asp");
    const Program c = testing::encoding("3cc.asp");
    for (std::uint64_t s = 0; s != 50; ++s) {
        CHECK_NOTHROW(enumerateStableModels(h, genHcpTiny(s)));
        CHECK_NOTHROW(enumerateStableModels(c, gen3ccTiny(s)));
    }
}
