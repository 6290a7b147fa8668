#pragma once

#include <nglearn/emitter.hpp>
#include <nglearn/solver.hpp>

#include <string>
#include <vector>

namespace nglearn {

// Small instances on which a candidate constraint must leave the projected
// answer sets unchanged.
struct OracleBattery {
    std::vector<std::vector<Atom>> instances;
    std::set<PredicateSig> projection; // empty: all classical predicates
    std::size_t atomCap{24};
};

struct ReduceOptions {
    std::size_t extraConstants{2};
    std::uint64_t skolemConflicts{20'000};
    double skolemSeconds{10.0};
    std::size_t skolemGroundRules{200'000};
    std::size_t maxValidations{64}; // candidate drops that get validated
};

enum class SkolemVerdict { Unsat, Sat, Limit, NotApplicable };

const char* toString(SkolemVerdict v);

struct SkolemResult {
    SkolemVerdict verdict{SkolemVerdict::NotApplicable};
    std::string reason;
};

// Instantiates the body with one fresh constant per variable (ordered so the
// builtins hold), lets all input predicates range freely over those constants
// plus `extraConstants` others and the encoding's own constants, forces the
// body true, and solves. Unsat means no instance over that universe can have
// an answer set in which the body holds.
SkolemResult skolemTest(const std::vector<SignedLiteral>& body, const Program& encoding,
                        const ReduceOptions& opts = {});

struct ReductionStep {
    std::string candidate;
    std::string dropped;
    SkolemVerdict skolem{SkolemVerdict::NotApplicable};
    bool oracleChecked{false};
    bool oracleEquivalent{false};
    std::size_t oracleInstances{0};
    bool accepted{false};
};

struct ReductionResult {
    LearnedConstraint constraint;
    std::vector<SignedLiteral> dropped;
    std::vector<ReductionStep> log;
    bool partial{false}; // validation budget ran out
};

// Greedy literal dropping. Literals are tried by descending number of body
// literals sharing their predicate, ties in canonical order; a drop is kept
// when the rest stays safe, passes the Skolem test and agrees with the
// encoding on every battery instance the oracle can handle. Passes repeat
// until one drops nothing or `maxValidations` candidates have been checked.
ReductionResult reduceConstraint(const LearnedConstraint& c, const Program& encoding, const OracleBattery& battery,
                                 const ReduceOptions& opts = {});

} // namespace nglearn
