#include "support.hpp"

#include <nglearn/generators.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace nglearn;

namespace {
Atom a0(const char* p) { return Atom::classical(p); }
} // namespace

TEST_CASE("textbook stable models", "[oracle]") {
    const auto even = enumerateStableModels(parseProgram("a :- not b. b :- not a."), {});
    CHECK(std::set<Interpretation>(even.begin(), even.end()) ==
          std::set<Interpretation>{{a0("a")}, {a0("b")}});
    CHECK(enumerateStableModels(parseProgram("a :- not a."), {}).empty());
    // a positive loop is not self-supporting
    const auto loop = enumerateStableModels(parseProgram("a :- b. b :- a."), {});
    REQUIRE(loop.size() == 1);
    CHECK(loop[0].empty());
    const auto choice = enumerateStableModels(parseProgram("{ a }. b :- a."), {});
    CHECK(choice.size() == 2);
}

TEST_CASE("models of normal programs form an antichain", "[oracle]") {
    for (std::uint64_t seed = 0; seed != 40; ++seed) {
        const std::string text = testing::randomProgram(seed);
        if (text.find('{') != std::string::npos) {
            continue;
        }
        const Program p = parseProgram(text);
        const auto ms   = enumerateStableModels(p, {});
        for (const auto& m : ms) {
            for (const auto& n : ms) {
                if (&m != &n) {
                    CHECK_FALSE(std::includes(m.begin(), m.end(), n.begin(), n.end()));
                }
            }
        }
    }
}

TEST_CASE("oracle refuses large programs", "[oracle]") {
    CHECK_THROWS_AS(enumerateStableModels(testing::encoding("3cc.asp"), gen3cc(4, true, 1)), OracleError);
}

TEST_CASE("equivalence check", "[oracle]") {
    const Program e = testing::encoding("house.asp");
    Program with    = e;
    with.append(parseProgram(":- cabinetTOthing(C,T1), cabinetTOthing(C,T2), personTOthing(P1,T1), "
                             "personTOthing(P2,T2), P1 < P2."));
    with.renumber();
    for (std::uint64_t s = 0; s != 10; ++s) {
        CHECK(checkEquivalence(e, with, genHcpTiny(s)).equivalent);
    }
    Program wrong = e;
    wrong.append(parseProgram(":- cabinetTOthing(C,T)."));
    wrong.renumber();
    const auto r = checkEquivalence(e, wrong, testing::facts("personTOthing(p1,t1). cabinetDomain(c1). roomDomain(r1)."));
    CHECK_FALSE(r.equivalent);
    REQUIRE(r.witness);
    CHECK(r.witnessInFirst);
}
