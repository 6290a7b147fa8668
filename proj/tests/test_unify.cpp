#include <nglearn/canonical.hpp>
#include <nglearn/parser.hpp>
#include <nglearn/substitution.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace nglearn;

namespace {
Term V(const char* n) { return Term::variable(n); }
Term C(const char* n) { return Term::symbol(n); }

std::vector<SignedLiteral> nogoodOf(const char* constraint) {
    return toNogood(parseConstraint(constraint));
}
} // namespace

TEST_CASE("mgu of atoms", "[unify]") {
    const Atom a = Atom::classical("p", {V("X"), Term::function("f", {V("Y")})});
    const Atom b = Atom::classical("p", {C("a"), Term::function("f", {V("X")})});
    const auto s = unify(a, b);
    REQUIRE(s);
    CHECK(s->apply(a) == s->apply(b));
    CHECK(s->apply(V("Y")) == C("a"));

    CHECK_FALSE(unify(Atom::classical("p", {C("a")}), Atom::classical("p", {C("b")})));
    CHECK_FALSE(unify(Atom::classical("p", {C("a")}), Atom::classical("q", {C("a")})));
    // occurs check
    CHECK_FALSE(unify(Atom::classical("p", {V("X")}), Atom::classical("p", {Term::function("f", {V("X")})})));
}

TEST_CASE("mgu is most general", "[unify]") {
    const Atom a = Atom::classical("p", {V("X"), V("Y")});
    const Atom b = Atom::classical("p", {V("Y"), V("Z")});
    const auto s = unify(a, b);
    REQUIRE(s);
    const Atom u = s->apply(a);
    std::vector<std::string> vars;
    u.collectVariables(vars);
    CHECK(vars.size() == 1);
}

TEST_CASE("matching binds only pattern variables", "[unify]") {
    Substitution s;
    CHECK(match(Atom::classical("p", {V("X"), V("X")}), Atom::classical("p", {C("a"), C("a")}), s));
    CHECK(s.apply(V("X")) == C("a"));
    Substitution t;
    CHECK_FALSE(match(Atom::classical("p", {V("X"), V("X")}), Atom::classical("p", {C("a"), C("b")}), t));
}

TEST_CASE("composition applies left then right", "[unify]") {
    Substitution a;
    a.set("X", V("Y"));
    Substitution b;
    b.set("Y", C("c"));
    CHECK(a.then(b).apply(V("X")) == C("c"));
}

TEST_CASE("canonical form ignores renaming and literal order", "[canonical]") {
    const auto ng = nogoodOf(":- roomTOcabinet(R,C), cabinetTOthing(C,T1), personTOthing(P1,T1), "
                             "cabinetTOthing(C,T2), personTOthing(P2,T2), P1 < P2.");
    const auto key = canonicalise(ng).key;
    std::mt19937_64 rng(3);
    const std::vector<std::string> names{"A", "B", "Cx", "D", "E", "F"};
    for (int round = 0; round != 50; ++round) {
        auto shuffled = ng;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::vector<std::string> vars;
        for (const auto& l : shuffled) {
            l.atom.collectVariables(vars);
        }
        auto perm = names;
        std::shuffle(perm.begin(), perm.end(), rng);
        Substitution ren;
        for (std::size_t i = 0; i != vars.size(); ++i) {
            ren.set(vars[i], V(perm[i].c_str()));
        }
        for (auto& l : shuffled) {
            l = ren.apply(l);
        }
        CHECK(canonicalise(shuffled).key == key);
    }
}

TEST_CASE("canonical form separates different constraints", "[canonical]") {
    const auto a = canonicalise(nogoodOf(":- p(X,Y), p(Y,Z)."));
    const auto b = canonicalise(nogoodOf(":- p(X,Y), p(Z,Y)."));
    const auto c = canonicalise(nogoodOf(":- p(X,Y), not p(Y,Z), q(Z)."));
    const auto d = canonicalise(nogoodOf(":- p(X,Y), p(Y,Z), q(Z)."));
    CHECK(a.key != b.key);
    CHECK(c.key != d.key);
    CHECK(canonicalise(a.literals).key == a.key);
    CHECK(printConstraint(canonicalise(nogoodOf(":- q(B), p(A,B).")).literals) == ":- p(V1,V2), q(V2).");
}

TEST_CASE("nogood and constraint body are dual", "[canonical]") {
    const auto body = parseConstraint(":- a(X), not b(X), X < 3.");
    const auto ng = toNogood(body);
    REQUIRE(ng.size() == 3);
    CHECK(ng[0].truth);
    CHECK_FALSE(ng[1].truth);
    CHECK(toBody(ng) == body);
    CHECK(printNogood({{Atom::hat(Atom::classical("q", {V("X")})), false}}).find("F") != std::string::npos);
    CHECK_THROWS_AS(printConstraint({{Atom::bodyRep(0, {V("X")}), true}}), Error);
}
