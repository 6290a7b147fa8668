#pragma once

#include <nglearn/nogood.hpp>
#include <nglearn/program.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nglearn {

class GroundingError : public Error {
public:
    using Error::Error;
};

struct GroundAtom {
    Atom atom;
    // Facts and true comparisons are fixed true, false comparisons and atoms
    // without any possible derivation fixed false; everything else is open.
    std::optional<bool> fixed;
};

struct GroundRuleRecord {
    int ruleId{0};
    std::shared_ptr<const Substitution> sigma;
    AtomId beta{0};
    std::optional<AtomId> head;
    std::vector<AtomId> posBody; // classical and hat atoms only
    std::vector<AtomId> negBody;
    std::vector<NoGoodId> nogoods;
};

struct GroundOptions {
    std::size_t maxGroundRules{5'000'000};
    // Emit twin-carrying support nogoods {T h, F β}; when off, such heads get
    // internal completion nogoods instead.
    bool supportNogoods{true};
};

class GroundProgram {
public:
    Program encoding; // choice-translated rules the ground rules refer to
    std::vector<GroundAtom> atoms;
    std::vector<NoGoodPair> nogoods;
    std::vector<GroundRuleRecord> rules;
    std::vector<AtomId> choiceAtoms; // β atoms of rules with an open NaF literal
    std::vector<std::string> warnings;

    [[nodiscard]] std::optional<AtomId> find(const Atom& a) const;
    [[nodiscard]] const Rule& rule(int id) const { return encoding.rules.at(static_cast<std::size_t>(id)); }
    [[nodiscard]] bool isOutputAtom(AtomId a) const { return atoms[a].atom.kind == AtomKind::Classical; }
    // One line per nogood: "kind \t ground \t nonground \t sigma".
    [[nodiscard]] std::string dumpNogoods() const;
    [[nodiscard]] std::string literalString(GLit l) const;

    AtomId addAtom(const Atom& a);

private:
    std::map<Atom, AtomId> index_;
};

// Constants of the encoding and the instance facts.
std::set<Term> computeUniverse(const Program& p, const std::vector<Atom>& instanceFacts);

// Predicates defined by exactly one non-fact rule of `p` and by no fact. Hat
// predicates appear with a "_hat_" name prefix.
std::set<PredicateSig> completionSupportSet(const Program& p);

// Emits the nogood schema for rule `r` under grounding substitution `sigma`
// without an atom table: ground literals are returned as atoms. Used by the
// grounder and directly testable.
struct SchemaNogood {
    std::vector<SignedLiteral> ground;
    std::vector<SignedLiteral> nonground;
    NoGoodKind kind;
    NoGoodRole role;
};
std::vector<SchemaNogood> emitNogoods(const Rule& r, const Substitution& sigma, bool withSupport);

// Semi-naive bottom-up grounding of a choice-translated program plus
// instance facts, producing ground rule records and the nogood store.
GroundProgram groundProgram(const Program& translated, const std::vector<Atom>& instanceFacts,
                            const GroundOptions& opts = {});

} // namespace nglearn
