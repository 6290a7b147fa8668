#pragma once

#include <nglearn/program.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace nglearn {

struct HcpParams {
    int persons{1};
    int thingsPerPerson{1};
    int cabinets{1};
    int rooms{1};
    std::uint64_t seed{0};
};

// personTOthing/2, cabinetDomain/1 and roomDomain/1 facts; only the fact
// order depends on the seed.
std::vector<Atom> genHcp(const HcpParams& p);

// Chain of `length` blocks n12, n11, n21, n22 with links (n12,n11), (n12,n21),
// (n11,n21), (n11,n22), (n21,n22); consecutive blocks share n22 = next n12.
// The unsatisfiable variant adds a link from the first n12 to the last n22,
// which every 3-colouring forces to carry the same colour. Node labels and
// fact order are permuted by the seed.
std::vector<Atom> gen3cc(int length, bool satisfiable, std::uint64_t seed);

// Random HCP instance small enough for the oracle: at most 2 persons, 3 things,
// 2 cabinets and 2 rooms with things*cabinets + cabinets*rooms <= 8.
std::vector<Atom> genHcpTiny(std::uint64_t seed);

// Random graph on 2 to 5 nodes, each pair linked with probability 1/2.
std::vector<Atom> gen3ccTiny(std::uint64_t seed);

// One fact per line.
std::string factsToText(const std::vector<Atom>& facts);

} // namespace nglearn
