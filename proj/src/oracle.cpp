#include <nglearn/oracle.hpp>
#include <nglearn/substitution.hpp>

#include <algorithm>
#include <map>
#include <tuple>

namespace nglearn {
namespace {

struct ORule {
    int head{-1};
    std::vector<int> pos;
    std::vector<int> neg;
};

using PredKey = std::tuple<AtomKind, std::string, int>;

PredKey keyOf(const Atom& a) {
    return {a.kind, a.predicate, a.arity()};
}

// Naive instantiation: every rule is matched against the full set of
// possibly-true atoms until nothing new appears.
class NaiveGrounder {
public:
    NaiveGrounder(const Program& p, const std::vector<Atom>& facts) : prog_(p), factAtoms_(facts) {
        for (const auto& f : facts) {
            addKnown(f);
        }
    }

    void run() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& r : prog_.rules) {
                if (!r.head) {
                    continue;
                }
                std::vector<Substitution> subs;
                instances(r, 0, Substitution{}, subs);
                for (const auto& s : subs) {
                    changed |= addKnown(s.apply(*r.head));
                }
            }
        }
    }

    // Ground rules over the final atom set, plus facts as bodiless rules.
    std::vector<ORule> rules() {
        std::vector<ORule> out;
        for (const auto& r : prog_.rules) {
            std::vector<Substitution> subs;
            instances(r, 0, Substitution{}, subs);
            for (const auto& s : subs) {
                ORule g;
                if (r.head) {
                    g.head = id(s.apply(*r.head));
                }
                for (const auto& l : r.body) {
                    if (l.atom.kind == AtomKind::Builtin) {
                        continue;
                    }
                    Atom a = s.apply(l.atom);
                    if (!l.naf) {
                        g.pos.push_back(id(a));
                    }
                    else if (known_.count(a)) {
                        g.neg.push_back(id(a));
                    }
                }
                out.push_back(std::move(g));
            }
        }
        for (const auto& f : factAtoms_) {
            ORule g;
            g.head = id(f);
            out.push_back(std::move(g));
        }
        return out;
    }

    int id(const Atom& a) {
        auto [it, inserted] = ids_.try_emplace(a, static_cast<int>(atoms_.size()));
        if (inserted) {
            atoms_.push_back(a);
        }
        return it->second;
    }

    const std::vector<Atom>& atoms() const { return atoms_; }

private:
    bool addKnown(const Atom& a) {
        if (!known_.insert(a).second) {
            return false;
        }
        byPred_[keyOf(a)].push_back(a);
        return true;
    }

    void instances(const Rule& r, std::size_t i, const Substitution& s, std::vector<Substitution>& out) {
        if (i == r.body.size()) {
            for (const auto& l : r.body) {
                if (l.atom.kind == AtomKind::Builtin) {
                    if (evalBuiltin(s.apply(l.atom)) == l.naf) {
                        return;
                    }
                }
            }
            out.push_back(s);
            return;
        }
        const auto& l = r.body[i];
        if (l.naf || l.atom.kind == AtomKind::Builtin) {
            instances(r, i + 1, s, out);
            return;
        }
        auto it = byPred_.find(keyOf(l.atom));
        if (it == byPred_.end()) {
            return;
        }
        const auto candidates = it->second; // copy, the list may grow
        for (const auto& a : candidates) {
            Substitution t = s;
            if (match(l.atom, a, t)) {
                instances(r, i + 1, t, out);
            }
        }
    }

    const Program& prog_;
    std::set<Atom> known_;
    std::vector<Atom> factAtoms_;
    std::map<PredKey, std::vector<Atom>> byPred_;
    std::map<Atom, int> ids_;
    std::vector<Atom> atoms_;
};

} // namespace

std::vector<Interpretation> enumerateStableModels(const Program& p, const std::vector<Atom>& facts,
                                                  std::size_t atomCap) {
    const Program tr = translateChoiceRules(p);
    NaiveGrounder g(tr, facts);
    g.run();
    const std::vector<ORule> rules = g.rules();
    const auto& atoms = g.atoms();
    const std::size_t n = atoms.size();

    std::vector<int> guessIndex(n, -1);
    std::vector<int> guessAtoms;
    for (const auto& r : rules) {
        if (r.head < 0) {
            continue;
        }
        for (int a : r.neg) {
            if (guessIndex[static_cast<std::size_t>(a)] < 0) {
                guessIndex[static_cast<std::size_t>(a)] = static_cast<int>(guessAtoms.size());
                guessAtoms.push_back(a);
            }
        }
    }
    if (guessAtoms.size() > atomCap) {
        throw OracleError("base too large: " + std::to_string(guessAtoms.size()) + " guessed atoms exceed cap " +
                          std::to_string(atomCap));
    }

    std::vector<std::vector<std::size_t>> occurs(n);
    for (std::size_t r = 0; r != rules.size(); ++r) {
        if (rules[r].head < 0) {
            continue;
        }
        for (int a : rules[r].pos) {
            occurs[static_cast<std::size_t>(a)].push_back(r);
        }
    }

    std::set<Interpretation> models;
    std::vector<char> inModel(n);
    std::vector<std::size_t> missing(rules.size());
    std::vector<int> queue;
    const std::uint64_t total = std::uint64_t{1} << guessAtoms.size();
    for (std::uint64_t mask = 0; mask != total; ++mask) {
        auto guessed = [&](int a) {
            const int gi = guessIndex[static_cast<std::size_t>(a)];
            return gi >= 0 && ((mask >> gi) & 1u);
        };
        std::fill(inModel.begin(), inModel.end(), 0);
        queue.clear();
        for (std::size_t r = 0; r != rules.size(); ++r) {
            const auto& rule = rules[r];
            if (rule.head < 0) {
                continue;
            }
            const bool blocked = std::any_of(rule.neg.begin(), rule.neg.end(), guessed);
            missing[r]         = blocked ? static_cast<std::size_t>(-1) : rule.pos.size();
            if (missing[r] == 0 && !inModel[static_cast<std::size_t>(rule.head)]) {
                inModel[static_cast<std::size_t>(rule.head)] = 1;
                queue.push_back(rule.head);
            }
        }
        for (std::size_t q = 0; q != queue.size(); ++q) {
            for (auto r : occurs[static_cast<std::size_t>(queue[q])]) {
                if (missing[r] != static_cast<std::size_t>(-1) && --missing[r] == 0) {
                    const int h = rules[r].head;
                    if (!inModel[static_cast<std::size_t>(h)]) {
                        inModel[static_cast<std::size_t>(h)] = 1;
                        queue.push_back(h);
                    }
                }
            }
        }
        bool stable = true;
        for (int a : guessAtoms) {
            if (static_cast<bool>(inModel[static_cast<std::size_t>(a)]) != guessed(a)) {
                stable = false;
                break;
            }
        }
        if (!stable) {
            continue;
        }
        for (const auto& rule : rules) {
            if (rule.head >= 0) {
                continue;
            }
            const bool posOk = std::all_of(rule.pos.begin(), rule.pos.end(),
                                           [&](int a) { return inModel[static_cast<std::size_t>(a)] != 0; });
            const bool negOk = std::none_of(rule.neg.begin(), rule.neg.end(),
                                            [&](int a) { return inModel[static_cast<std::size_t>(a)] != 0; });
            if (posOk && negOk) {
                stable = false;
                break;
            }
        }
        if (!stable) {
            continue;
        }
        Interpretation m;
        for (std::size_t a = 0; a != n; ++a) {
            if (inModel[a] && atoms[a].kind == AtomKind::Classical) {
                m.insert(atoms[a]);
            }
        }
        models.insert(std::move(m));
    }
    return {models.begin(), models.end()};
}

EquivalenceResult checkEquivalence(const Program& p1, const Program& p2, const std::vector<Atom>& facts,
                                   const std::set<PredicateSig>& projection, std::size_t atomCap) {
    auto project = [&](const std::vector<Interpretation>& ms) {
        std::set<Interpretation> out;
        for (const auto& m : ms) {
            Interpretation q;
            for (const auto& a : m) {
                if (projection.empty() || projection.count(a.signature())) {
                    q.insert(a);
                }
            }
            out.insert(std::move(q));
        }
        return out;
    };
    const auto m1 = project(enumerateStableModels(p1, facts, atomCap));
    const auto m2 = project(enumerateStableModels(p2, facts, atomCap));
    EquivalenceResult r;
    for (const auto& m : m1) {
        if (!m2.count(m)) {
            r.equivalent     = false;
            r.witness        = m;
            r.witnessInFirst = true;
            return r;
        }
    }
    for (const auto& m : m2) {
        if (!m1.count(m)) {
            r.equivalent = false;
            r.witness    = m;
            return r;
        }
    }
    return r;
}

} // namespace nglearn
