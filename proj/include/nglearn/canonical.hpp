#pragma once

#include <nglearn/program.hpp>

#include <string>
#include <vector>

namespace nglearn {

// Renaming-invariant form of a non-ground constraint (nogood). Literals are
// ordered by (atom kind, predicate, arity, sign, argument skeleton) and
// variables renamed V1, V2, ... in first-occurrence order; among literals
// with the same (kind, predicate, arity, sign) the order yielding the
// lexicographically smallest rendering is chosen.
struct CanonicalConstraint {
    std::vector<SignedLiteral> literals;
    std::string key;

    friend bool operator==(const CanonicalConstraint& a, const CanonicalConstraint& b) { return a.key == b.key; }
    friend auto operator<=>(const CanonicalConstraint& a, const CanonicalConstraint& b) { return a.key <=> b.key; }
};

CanonicalConstraint canonicalise(const std::vector<SignedLiteral>& nogood);

// Nogood <-> constraint body: F literals correspond to default negation.
std::vector<SignedLiteral> toNogood(const std::vector<Literal>& body);
std::vector<Literal> toBody(const std::vector<SignedLiteral>& nogood);

// ":- a(X), not b(X), X<Y." Throws Error("internal atom present ...") if a
// body-representing or choice-hat atom remains.
std::string printConstraint(const std::vector<SignedLiteral>& nogood);

// "{T a(X), F b(X)}" including internal atoms.
std::string printNogood(const std::vector<SignedLiteral>& nogood);

} // namespace nglearn
