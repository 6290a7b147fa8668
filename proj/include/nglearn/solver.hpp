#pragma once

#include <nglearn/assignment.hpp>
#include <nglearn/generaliser.hpp>
#include <nglearn/grounder.hpp>

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace nglearn {

struct SolveLimits {
    std::optional<std::uint64_t> maxConflicts;
    std::optional<double> maxTime; // seconds
    std::size_t targetAnswerSets{10}; // 0 enumerates all
};

struct SolverOptions {
    bool learn{false}; // run the generaliser on every conflict
    GeneraliserOptions generaliser;
    bool keepAllUips{false};
    std::uint64_t seed{0};
    bool restarts{false}; // Luby restarts, unit 100 conflicts
    bool recordTrace{false};
};

enum class SolveStatus { SAT, UNSAT, LIMIT };

const char* toString(SolveStatus s);

// One assignment event; antecedent is kNoAntecedent for decisions and facts.
struct TraceEvent {
    AtomId atom;
    Truth value;
    int dl;
    NoGoodId antecedent;
    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct SolveReport {
    SolveStatus status{SolveStatus::LIMIT};
    std::vector<std::vector<Atom>> answerSets; // classical atoms, sorted
    std::uint64_t conflicts{0};
    std::uint64_t decisions{0};
    std::uint64_t propagations{0};
    std::uint64_t restarts{0};
    std::map<int, std::uint64_t> backjumpDistances;
    std::uint64_t resolutionSteps{0};
    std::uint64_t witnessChecks{0};
    std::uint64_t witnessViolations{0};
    std::uint64_t twinMissing{0};
    std::uint64_t budgetExhausted{0};
    double solveSeconds{0};
    ClassTable classes;
    std::vector<std::string> warnings;
    // Only with SolverOptions::recordTrace.
    std::vector<TraceEvent> trace;
    std::vector<std::vector<GLit>> learnedGround;

    // Key/value JSON document; keys are listed in the README.
    [[nodiscard]] std::string toJson(const GroundProgram& gp, std::size_t topK = 5) const;
};

class Solver {
public:
    explicit Solver(const GroundProgram& gp, SolverOptions opts = {});

    SolveReport solve(const SolveLimits& limits = {});

    // Lower-level interface, used by tests.

    // Unit propagation to fixpoint; returns the first violated nogood.
    std::optional<NoGoodId> propagate();
    // Opens a new decision level and assigns l (true: T, false: F).
    void decide(GLit l);
    void backjump(int level);
    // Ground first-UIP nogood of a conflict at the current level (at least one
    // resolution step when the conflict level has an implied literal).
    std::vector<GLit> analyzeGround(NoGoodId violated);
    // Adds a nogood to the store and watches it; returns its id. The caller
    // deals with it being violated or unit under the current assignment.
    NoGoodId addNogood(NoGoodPair ng);
    // Classical atoms true under a total assignment that are not founded by
    // the reduct; empty if the assignment is a stable model.
    std::vector<AtomId> unfoundedAtoms() const;

    [[nodiscard]] bool inconsistent() const { return rootConflict_; }
    [[nodiscard]] int level() const { return static_cast<int>(levelStart_.size()); }
    [[nodiscard]] const std::vector<AtomState>& atoms() const { return state_; }
    [[nodiscard]] const std::vector<AtomId>& trail() const { return trail_; }
    [[nodiscard]] const std::vector<NoGoodPair>& nogoods() const { return nogoods_; }
    [[nodiscard]] std::size_t levelStart(int level) const { return levelStart_.at(static_cast<std::size_t>(level - 1)); }
    [[nodiscard]] AssignmentView view() const;
    [[nodiscard]] const GroundProgram& program() const { return gp_; }

private:
    bool satisfied(GLit l) const {
        const auto& s = state_[l.atom];
        return l.truth ? (s.truth == Truth::T || s.truth == Truth::M) : s.truth == Truth::F;
    }
    bool falsified(GLit l) const {
        const auto& s = state_[l.atom];
        return s.truth != Truth::U && !satisfied(l);
    }
    void assign(AtomId a, Truth t, NoGoodId antecedent);
    void watch(NoGoodId id);
    std::optional<GLit> pickDecision();
    // Deals with a nogood that is violated by the current assignment: UNSAT at
    // level 0, otherwise learn and backjump. Returns false on UNSAT.
    bool handleConflict(NoGoodId violated, bool isConflict, SolveReport& report);
    void bump(const std::vector<GLit>& lits);
    bool limitHit(const SolveLimits& limits, SolveReport& report) const;

    const GroundProgram& gp_;
    SolverOptions opts_;
    std::vector<NoGoodPair> nogoods_;
    std::vector<std::vector<GLit>> active_; // watched literal lists (first two watched)
    std::vector<std::vector<NoGoodId>> watches_; // by literal code
    std::vector<AtomState> state_;
    std::vector<AtomId> trail_;
    std::vector<std::size_t> levelStart_;
    std::size_t propHead_{0};
    bool rootConflict_{false};

    std::vector<double> activity_;
    double activityInc_{1.0};
    std::vector<std::uint32_t> rank_; // seeded tie-break order
    std::vector<bool> isChoice_;
    std::vector<std::vector<std::uint32_t>> headRules_; // atom -> rule records with that head

    Generaliser generaliser_;
    std::uint64_t propagations_{0};
    bool recording_{false};
    std::vector<TraceEvent> trace_;
    std::chrono::steady_clock::time_point start_;
};

SolveReport solveGround(const GroundProgram& gp, const SolveLimits& limits, const SolverOptions& opts = {});

} // namespace nglearn
