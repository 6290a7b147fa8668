#pragma once

#include <nglearn/assignment.hpp>
#include <nglearn/canonical.hpp>

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nglearn {

// A ground resolvent and its non-ground counterpart; omega[i] is the
// instance of Omega[i] under the witness.
struct ResolutionState {
    std::vector<GLit> omega;
    std::vector<SignedLiteral> Omega;
};

struct GeneraliserOptions {
    // Literals from the last `lookback` decision levels may be resolved.
    int lookback{1};
    // UIP test over the whole lookback window instead of the conflict level.
    bool uipWindow{false};
    std::size_t stepBudget{10'000};
    bool checkWitness{true};
    std::ostream* trace{nullptr};
};

struct AnalysisResult {
    bool unsat{false};
    std::vector<std::vector<GLit>> ground;
    std::vector<std::vector<SignedLiteral>> nonground;
    bool twinMissing{false};
    bool budgetExhausted{false};
    std::size_t steps{0};
    std::size_t witnessChecks{0};
    std::size_t witnessViolations{0};
};

// Substitution with omega[i] = Omega[i]·σ for all i, or nullopt.
std::optional<Substitution> witnessOf(const ResolutionState& st, const std::vector<GroundAtom>& table);

// For every ground literal shared by omega and omegaAnt (in ascending position
// of omega), unifies the corresponding non-ground literals under the running
// substitution, starting from `start`.
Substitution unifyDuplicateLiterals(const std::vector<SignedLiteral>& Omega,
                                    const std::vector<SignedLiteral>& OmegaAnt, const std::vector<GLit>& omega,
                                    const std::vector<GLit>& omegaAnt, Substitution start = {});

class Generaliser {
public:
    explicit Generaliser(GeneraliserOptions opts = {}) : opts_(opts) {}

    AnalysisResult analyze(NoGoodId violated, const AssignmentView& view);

    // Most recently assigned literal of omega with an antecedent and a decision
    // level inside the lookback window.
    [[nodiscard]] std::optional<GLit> findNextLiteral(const std::vector<GLit>& omega,
                                                      const AssignmentView& view) const;

    // One resolution step on l with the antecedent's pair. Requires a twin.
    ResolutionState resolve(const ResolutionState& st, GLit l, const NoGoodPair& antecedent);

    // Merges duplicate ground literals of a pair, unifying their twins.
    static ResolutionState factor(std::vector<GLit> ground, std::vector<SignedLiteral> nonground);

    [[nodiscard]] const GeneraliserOptions& options() const { return opts_; }

private:
    std::vector<SignedLiteral> standardiseApart(const std::vector<SignedLiteral>& ng);

    GeneraliserOptions opts_;
    std::size_t fresh_{0};
    Substitution lastUnifier_;
};

struct LearnedEntry {
    CanonicalConstraint nogood;
    std::size_t uipIndex{0};
    std::uint64_t count{0};
};

struct ConflictClass {
    CanonicalConstraint key;
    std::uint64_t violations{0};
    std::vector<LearnedEntry> firstUip;
    std::vector<LearnedEntry> lastUip;
    std::vector<LearnedEntry> all; // every UIP, only when kept

    [[nodiscard]] const LearnedEntry* topFirst() const;
    [[nodiscard]] const LearnedEntry* topLast() const;
};

class ClassTable {
public:
    explicit ClassTable(bool keepAllUips = false) : keepAll_(keepAllUips) {}

    // Counts a violation of `violated` and merges the learned non-ground
    // nogoods. Violations of nogoods without twin are not classified.
    void record(const NoGoodPair& violated, const AnalysisResult& result);
    void merge(const ClassTable& other);

    [[nodiscard]] const std::map<std::string, ConflictClass>& classes() const { return classes_; }
    // By violation count, ties by key.
    [[nodiscard]] std::vector<const ConflictClass*> ranked() const;
    [[nodiscard]] const ConflictClass* find(const std::vector<SignedLiteral>& twin) const;

private:
    static void add(std::vector<LearnedEntry>& list, const CanonicalConstraint& c, std::size_t idx,
                    std::uint64_t n);

    bool keepAll_;
    std::map<std::string, ConflictClass> classes_;
};

} // namespace nglearn
