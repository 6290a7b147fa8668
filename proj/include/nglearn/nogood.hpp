#pragma once

#include <nglearn/program.hpp>
#include <nglearn/substitution.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace nglearn {

using AtomId   = std::uint32_t;
using NoGoodId = std::uint32_t;

inline constexpr NoGoodId kNoAntecedent = static_cast<NoGoodId>(-1);

// Ground signed literal over the atom table.
struct GLit {
    AtomId atom{0};
    bool truth{true};

    [[nodiscard]] GLit complement() const { return {atom, !truth}; }
    [[nodiscard]] std::uint32_t code() const { return (atom << 1) | (truth ? 0u : 1u); }
    friend auto operator<=>(const GLit&, const GLit&) = default;
    friend bool operator==(const GLit&, const GLit&) = default;
};

enum class NoGoodKind : std::uint8_t { Static, Support, Learned, Internal };

// Which schema produced a nogood; BodyDef..Support follow the grounder's
// rule schema, the others are solver-side.
enum class NoGoodRole : std::uint8_t {
    BodyDef,    // {F β, T b1.., F b_m+1..}
    Head,       // {F h, T β}
    PosBody,    // {T β, F b_i}
    NegBody,    // {T β, T b_j}
    Support,    // {T h, F β}
    Constraint, // whole body of a constraint
    Completion, // {T h, F β1, .., F βk}
    Loop,       // unfounded-set nogood
    Blocking,   // enumeration
    Learned
};

const char* toString(NoGoodKind k);
const char* toString(NoGoodRole r);

// A ground nogood with its position-aligned non-ground twin: when the twin is
// present, ground[i] is the instance of nonground[i] under sigma.
struct NoGoodPair {
    std::vector<GLit> ground;
    // Shared by all instances of the same schema nogood.
    std::shared_ptr<const std::vector<SignedLiteral>> nonground;
    // Shared by all nogoods of one rule instance.
    std::shared_ptr<const Substitution> sigma;
    NoGoodKind kind{NoGoodKind::Internal};
    NoGoodRole role{NoGoodRole::Constraint};
    int sourceRule{-1};

    [[nodiscard]] bool hasTwin() const { return nonground != nullptr; }
};

} // namespace nglearn
