#pragma once

#include <nglearn/canonical.hpp>
#include <nglearn/generaliser.hpp>

#include <optional>
#include <string>
#include <vector>

namespace nglearn {

class EmitError : public Error {
public:
    using Error::Error;
};

struct LearnedConstraint {
    std::vector<SignedLiteral> body; // canonical nogood, classical and builtin atoms only
    std::string uip;                 // "first", "last", or the UIP index
    std::string classKey;
    std::uint64_t violations{0};
    std::optional<std::size_t> reducedFrom; // index into the report it was reduced from
    bool partial{false};
    bool quarantined{false};
    std::vector<std::string> notes;

    [[nodiscard]] std::string text() const { return printConstraint(body); }
};

struct EmitOptions {
    // Replace a positive body-representing literal by the rule head when the
    // head predicate has a single defining rule and the head mentions all
    // rule variables; otherwise (and by default) by the rule body.
    bool preferHead{false};
};

// Every variable of a negative or builtin literal occurs in a positive
// classical literal.
bool isSafe(const std::vector<SignedLiteral>& nogood);

// Rewrites body-representing and choice-hat literals of a learned nogood
// into literals over the program's own predicates and canonicalises the
// result. `translated` is the choice-translated program the rule ids refer
// to. Throws EmitError("irreplaceable internal literal ...").
LearnedConstraint replaceInternalLiterals(const std::vector<SignedLiteral>& nogood, const Program& translated,
                                          const EmitOptions& opts = {});

enum class UipSelection { First, Last, All };

struct ConstraintReport {
    std::vector<LearnedConstraint> constraints;
    std::vector<std::string> diagnostics;
    std::string text; // ASP with "%" provenance lines
};

// Top `topK` classes by violation count (ties by canonical key); per class the
// most frequent first- and/or last-UIP nogood, rewritten and deduplicated.
ConstraintReport rankAndEmit(const ClassTable& classes, std::size_t topK, const Program& translated,
                             UipSelection sel = UipSelection::All, const EmitOptions& opts = {});

// Appends the constraints as headless rules.
Program augmentEncoding(const Program& p, const std::vector<LearnedConstraint>& constraints);
Program augmentEncoding(const Program& p, const std::vector<std::vector<SignedLiteral>>& constraints);

} // namespace nglearn
