#pragma once

#include <nglearn/program.hpp>

#include <optional>
#include <set>
#include <vector>

namespace nglearn {

class OracleError : public Error {
public:
    using Error::Error;
};

using Interpretation = std::set<Atom>;

// Brute-force stable models of `p` (choice rules are translated first) plus
// `facts`, projected to classical atoms. Enumerates every truth assignment to
// the derivable atoms occurring under default negation in non-constraint rules
// and keeps those reproduced by the least model of the reduct. Throws
// OracleError("base too large") when there are more than `atomCap` such atoms.
std::vector<Interpretation> enumerateStableModels(const Program& p, const std::vector<Atom>& facts,
                                                  std::size_t atomCap = 24);

struct EquivalenceResult {
    bool equivalent{true};
    std::optional<Interpretation> witness; // in exactly one of the two model sets
    bool witnessInFirst{false};
};

// Compares projected stable-model sets; empty `projection` keeps all classical
// predicates.
EquivalenceResult checkEquivalence(const Program& p1, const Program& p2, const std::vector<Atom>& facts,
                                   const std::set<PredicateSig>& projection = {}, std::size_t atomCap = 24);

} // namespace nglearn
