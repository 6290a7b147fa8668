#pragma once

#include <nglearn/grounder.hpp>
#include <nglearn/nogood.hpp>

#include <cstdint>
#include <vector>

namespace nglearn {

// U unassigned, F false, M must-be-true, T true.
enum class Truth : std::uint8_t { U, F, M, T };

const char* toString(Truth t);

struct AtomState {
    Truth truth{Truth::U};
    int dl{-1};
    NoGoodId antecedent{kNoAntecedent};
    std::uint32_t trailPos{0};

    [[nodiscard]] bool assigned() const { return truth != Truth::U; }
    [[nodiscard]] bool positive() const { return truth == Truth::T || truth == Truth::M; }
};

// Read-only view of a solver's state handed to conflict analysis.
struct AssignmentView {
    const std::vector<GroundAtom>* table{nullptr};
    const std::vector<NoGoodPair>* nogoods{nullptr};
    const std::vector<AtomState>* atoms{nullptr};
    int level{0};

    [[nodiscard]] const AtomState& state(AtomId a) const { return (*atoms)[a]; }
    [[nodiscard]] bool satisfied(GLit l) const {
        const auto& s = (*atoms)[l.atom];
        return l.truth ? s.positive() : s.truth == Truth::F;
    }
};

} // namespace nglearn
