#include "support.hpp"

#include <nglearn/generators.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace nglearn;

namespace {

std::vector<SignedLiteral> ng(const char* constraint) {
    return canonicalise(toNogood(parseConstraint(constraint))).literals;
}

OracleBattery hcpBattery() {
    OracleBattery b;
    for (std::uint64_t s = 0; s != 20; ++s) {
        b.instances.push_back(genHcpTiny(s));
    }
    return b;
}

const char* kFirstUip = ":- roomTOcabinet(R,C), cabinetTOthing(C,T1), personTOthing(P1,T1), "
                        "cabinetTOthing(C,T2), personTOthing(P2,T2), P1 < P2.";
const char* kRedundant = ":- cabinetTOthing(C,T1), personTOthing(P1,T1), "
                         "cabinetTOthing(C,T2), personTOthing(P2,T2), P1 < P2.";

} // namespace

TEST_CASE("skolem test", "[reducer]") {
    const Program e = testing::encoding("house.asp");
    CHECK(skolemTest(ng(kRedundant), e).verdict == SkolemVerdict::Unsat);
    CHECK(skolemTest(ng(":- cabinetTOthing(C,T1), cabinetTOthing(C,T2)."), e).verdict == SkolemVerdict::Sat);
    CHECK(skolemTest(ng(":- p(X), X < Y, Y < X, q(Y)."), e).verdict == SkolemVerdict::NotApplicable);
    const Program c = testing::encoding("3cc.asp");
    CHECK(skolemTest(ng(":- red(X), link(X,Y), red(Y)."), c).verdict == SkolemVerdict::Unsat);
    CHECK(skolemTest(ng(":- red(X), link(X,Y), green(Y)."), c).verdict == SkolemVerdict::Sat);
}

TEST_CASE("first-UIP HCP constraint loses roomTOcabinet", "[reducer]") {
    const Program e = testing::encoding("house.asp");
    LearnedConstraint c;
    c.body       = ng(kFirstUip);
    const auto r = reduceConstraint(c, e, hcpBattery());
    CHECK_FALSE(r.partial);
    REQUIRE(r.dropped.size() == 1);
    CHECK(r.dropped[0].atom.predicate == "roomTOcabinet");
    CHECK(r.constraint.text() == printConstraint(ng(kRedundant)));
    for (const auto& s : r.log) {
        if (s.accepted) {
            CHECK(s.skolem == SkolemVerdict::Unsat);
            CHECK(s.oracleEquivalent);
            CHECK(s.oracleInstances > 0);
        }
    }
}

TEST_CASE("reduction stops at the validation budget", "[reducer]") {
    LearnedConstraint c;
    c.body = ng(kFirstUip);
    ReduceOptions o;
    o.maxValidations = 1;
    const auto r     = reduceConstraint(c, testing::encoding("house.asp"), hcpBattery(), o);
    CHECK(r.partial);
    CHECK(r.log.size() == 1);
    CHECK(r.constraint.partial);
}

TEST_CASE("reduced constraints are shorter and equivalent", "[reducer][oracle]") {
    const Program e = testing::encoding("3cc.asp");
    OracleBattery b;
    for (std::uint64_t s = 0; s != 20; ++s) {
        b.instances.push_back(gen3ccTiny(s));
    }
    LearnedConstraint c;
    c.body       = ng(":- green(V1), link(V1,V2), link(V1,V3), link(V2,V3), node(V2), node(V3), not red(V2), "
                      "not red(V3).");
    const auto r = reduceConstraint(c, e, b);
    CHECK(r.constraint.body.size() < c.body.size());
    CHECK(isSafe(r.constraint.body));
    const Program aug = augmentEncoding(e, std::vector<LearnedConstraint>{r.constraint});
    for (std::uint64_t s = 100; s != 120; ++s) {
        CHECK(checkEquivalence(e, aug, gen3ccTiny(s)).equivalent);
    }
}
