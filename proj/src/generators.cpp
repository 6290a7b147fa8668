#include <nglearn/generators.hpp>

#include <algorithm>
#include <numeric>
#include <random>

namespace nglearn {
namespace {
Term sym(const std::string& prefix, int i) {
    return Term::symbol(prefix + std::to_string(i));
}
} // namespace

std::vector<Atom> genHcp(const HcpParams& p) {
    std::vector<Atom> out;
    int thing = 0;
    for (int person = 1; person <= p.persons; ++person) {
        for (int k = 0; k < p.thingsPerPerson; ++k) {
            out.push_back(Atom::classical("personTOthing", {sym("p", person), sym("t", ++thing)}));
        }
    }
    for (int c = 1; c <= p.cabinets; ++c) {
        out.push_back(Atom::classical("cabinetDomain", {sym("c", c)}));
    }
    for (int r = 1; r <= p.rooms; ++r) {
        out.push_back(Atom::classical("roomDomain", {sym("r", r)}));
    }
    std::mt19937_64 rng(p.seed);
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

std::vector<Atom> gen3cc(int length, bool satisfiable, std::uint64_t seed) {
    const int nodes = 3 * length + 1;
    std::vector<int> label(static_cast<std::size_t>(nodes));
    std::iota(label.begin(), label.end(), 1);
    std::mt19937_64 rng(seed);
    std::shuffle(label.begin(), label.end(), rng);
    auto node = [&](int id) { return sym("n", label[static_cast<std::size_t>(id)]); };
    auto link = [&](int a, int b) { return Atom::classical("link", {node(a), node(b)}); };
    std::vector<Atom> out;
    for (int b = 0; b < length; ++b) {
        const int n12 = 3 * b, n11 = n12 + 1, n21 = n12 + 2, n22 = n12 + 3;
        out.push_back(link(n12, n11));
        out.push_back(link(n12, n21));
        out.push_back(link(n11, n21));
        out.push_back(link(n11, n22));
        out.push_back(link(n21, n22));
    }
    if (!satisfiable) {
        out.push_back(link(0, nodes - 1));
    }
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

std::vector<Atom> genHcpTiny(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    int persons = 1, things = 1, cabinets = 1, rooms = 1;
    do {
        persons  = pick(1, 2);
        things   = pick(1, 3);
        cabinets = pick(1, 2);
        rooms    = pick(1, 2);
    } while (things * cabinets + cabinets * rooms > 8);
    std::vector<Atom> out;
    for (int t = 1; t <= things; ++t) {
        out.push_back(Atom::classical("personTOthing", {sym("p", pick(1, persons)), sym("t", t)}));
    }
    for (int c = 1; c <= cabinets; ++c) {
        out.push_back(Atom::classical("cabinetDomain", {sym("c", c)}));
    }
    for (int r = 1; r <= rooms; ++r) {
        out.push_back(Atom::classical("roomDomain", {sym("r", r)}));
    }
    return out;
}

std::vector<Atom> gen3ccTiny(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int nodes = std::uniform_int_distribution<int>(2, 5)(rng);
    std::bernoulli_distribution coin(0.5);
    std::vector<Atom> out;
    for (int a = 1; a <= nodes; ++a) {
        for (int b = a + 1; b <= nodes; ++b) {
            if (!coin(rng)) {
                continue;
            }
            if (coin(rng)) {
                out.push_back(Atom::classical("link", {sym("n", a), sym("n", b)}));
            }
            else {
                out.push_back(Atom::classical("link", {sym("n", b), sym("n", a)}));
            }
        }
    }
    return out;
}

std::string factsToText(const std::vector<Atom>& facts) {
    std::string s;
    for (const auto& f : facts) {
        s += f.toString();
        s += ".\n";
    }
    return s;
}

} // namespace nglearn
