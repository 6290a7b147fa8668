#include <nglearn/canonical.hpp>
#include <nglearn/substitution.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <tuple>

namespace nglearn {
namespace {

int kindRank(AtomKind k) {
    switch (k) {
        case AtomKind::Classical: return 0;
        case AtomKind::ChoiceHat: return 1;
        case AtomKind::BodyRep: return 2;
        case AtomKind::Builtin: return 3;
    }
    return 4;
}

auto groupKey(const SignedLiteral& l) {
    return std::make_tuple(kindRank(l.atom.kind), l.atom.predicate, l.atom.arity(), !l.truth);
}

std::string varName(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "V%zu", i);
    return buf;
}

// Renders a term under `names`; unmapped variables are numbered on the fly
// starting at names.size() + 1 (recorded in `fresh`).
void renderTerm(const Term& t, const std::map<std::string, std::size_t>& names,
                std::map<std::string, std::size_t>& fresh, std::string& out) {
    switch (t.kind()) {
        case Term::Kind::Variable: {
            std::size_t idx;
            if (auto it = names.find(t.name()); it != names.end()) {
                idx = it->second;
            }
            else if (auto jt = fresh.find(t.name()); jt != fresh.end()) {
                idx = jt->second;
            }
            else {
                idx = names.size() + fresh.size() + 1;
                fresh.emplace(t.name(), idx);
            }
            // zero-padded so that string order agrees with index order
            char buf[16];
            std::snprintf(buf, sizeof buf, "V%06zu", idx);
            out += buf;
            return;
        }
        case Term::Kind::Function:
            out += t.name();
            out += '(';
            for (std::size_t i = 0; i != t.args().size(); ++i) {
                if (i) {
                    out += ',';
                }
                renderTerm(t.args()[i], names, fresh, out);
            }
            out += ')';
            return;
        case Term::Kind::Integer:
            out += '#';
            out += t.toString();
            return;
        case Term::Kind::Symbol: out += t.name(); return;
    }
}

std::string renderLiteral(const SignedLiteral& l, const std::map<std::string, std::size_t>& names,
                          std::map<std::string, std::size_t>& fresh) {
    std::string s;
    s += l.truth ? 'T' : 'F';
    s += static_cast<char>('0' + kindRank(l.atom.kind));
    s += l.atom.predicate;
    s += '(';
    for (std::size_t i = 0; i != l.atom.args.size(); ++i) {
        if (i) {
            s += ',';
        }
        renderTerm(l.atom.args[i], names, fresh, s);
    }
    s += ')';
    return s;
}

void variableOccurrences(const Term& t, std::vector<std::string>& out) {
    if (t.isVariable()) {
        out.push_back(t.name());
        return;
    }
    for (const auto& a : t.args()) {
        variableOccurrences(a, out);
    }
}

template <class T>
std::vector<std::size_t> compress(const std::vector<T>& sigs) {
    std::vector<T> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> out;
    out.reserve(sigs.size());
    for (const auto& s : sigs) {
        out.push_back(static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), s) - sorted.begin()));
    }
    return out;
}

// Renaming-invariant colour per literal by iterated refinement over the
// literal/variable incidence structure. Used only to break ties.
std::vector<std::size_t> literalColours(const std::vector<SignedLiteral>& lits) {
    std::vector<std::vector<std::string>> occ(lits.size());
    std::map<std::string, std::size_t> varIndex;
    std::vector<std::string> skeleton;
    for (std::size_t i = 0; i != lits.size(); ++i) {
        for (const auto& a : lits[i].atom.args) {
            variableOccurrences(a, occ[i]);
        }
        for (const auto& v : occ[i]) {
            varIndex.emplace(v, varIndex.size());
        }
        std::map<std::string, std::size_t> local;
        std::map<std::string, std::size_t> none;
        skeleton.push_back(renderLiteral(lits[i], none, local));
    }
    std::vector<std::size_t> lit = compress(skeleton);
    std::vector<std::size_t> var(varIndex.size(), 0);
    std::size_t classes = 0;
    for (int round = 0; round != 8; ++round) {
        std::vector<std::vector<std::size_t>> vsig(var.size());
        for (std::size_t v = 0; v != var.size(); ++v) {
            vsig[v].push_back(var[v]);
        }
        for (std::size_t i = 0; i != lits.size(); ++i) {
            for (std::size_t k = 0; k != occ[i].size(); ++k) {
                auto& sig = vsig[varIndex.at(occ[i][k])];
                sig.push_back(lit[i] * 1024 + k);
            }
        }
        for (auto& sig : vsig) {
            std::sort(sig.begin() + 1, sig.end());
        }
        var = compress(vsig);
        std::vector<std::vector<std::size_t>> lsig(lits.size());
        for (std::size_t i = 0; i != lits.size(); ++i) {
            lsig[i].push_back(lit[i]);
            for (const auto& v : occ[i]) {
                lsig[i].push_back(var[varIndex.at(v)]);
            }
        }
        lit = compress(lsig);
        const std::size_t n = lit.empty() ? 0 : *std::max_element(lit.begin(), lit.end()) + 1;
        if (n == classes) {
            break;
        }
        classes = n;
    }
    return lit;
}

class Search {
public:
    Search(const std::vector<SignedLiteral>& lits, std::vector<std::vector<std::size_t>> groups)
        : lits_(lits), groups_(std::move(groups)), colour_(literalColours(lits)) {}

    std::vector<std::size_t> run() {
        std::vector<std::size_t> order;
        std::vector<std::string> tokens;
        std::map<std::string, std::size_t> names;
        std::vector<bool> used(lits_.size(), false);
        dfs(0, order, tokens, names, used);
        return bestOrder_;
    }

private:
    void dfs(std::size_t group, std::vector<std::size_t>& order, std::vector<std::string>& tokens,
             std::map<std::string, std::size_t>& names, std::vector<bool>& used) {
        if (order.size() == lits_.size()) {
            if (bestOrder_.empty() || tokens < bestTokens_) {
                bestTokens_ = tokens;
                bestOrder_  = order;
            }
            return;
        }
        // prune: current prefix already worse than best
        if (!bestOrder_.empty()) {
            auto n = tokens.size();
            if (std::lexicographical_compare(bestTokens_.begin(), bestTokens_.begin() + static_cast<long>(n),
                                             tokens.begin(), tokens.end())) {
                return;
            }
        }
        const auto& members = groups_[group];
        bool groupDone = std::all_of(members.begin(), members.end(), [&](std::size_t i) { return used[i]; });
        if (groupDone) {
            dfs(group + 1, order, tokens, names, used);
            return;
        }
        std::string best;
        std::vector<std::pair<std::size_t, std::map<std::string, std::size_t>>> cands;
        for (std::size_t i : members) {
            if (used[i]) {
                continue;
            }
            std::map<std::string, std::size_t> fresh;
            std::string tok = renderLiteral(lits_[i], names, fresh);
            tok += '#';
            tok += std::to_string(colour_[i]);
            if (cands.empty() || tok < best) {
                best = tok;
                cands.clear();
            }
            if (tok == best) {
                // identical literals lead to identical subtrees
                bool dup = std::any_of(cands.begin(), cands.end(),
                                       [&](const auto& c) { return lits_[c.first] == lits_[i]; });
                if (!dup) {
                    cands.emplace_back(i, std::move(fresh));
                }
            }
        }
        for (auto& [i, fresh] : cands) {
            if (++nodes_ > kNodeLimit && !bestOrder_.empty()) {
                return;
            }
            used[i] = true;
            order.push_back(i);
            tokens.push_back(best);
            auto saved = names;
            for (const auto& [v, idx] : fresh) {
                names.emplace(v, idx);
            }
            dfs(group, order, tokens, names, used);
            names = std::move(saved);
            tokens.pop_back();
            order.pop_back();
            used[i] = false;
        }
    }

    static constexpr std::size_t kNodeLimit = 20000;
    const std::vector<SignedLiteral>& lits_;
    std::vector<std::vector<std::size_t>> groups_;
    std::vector<std::size_t> colour_;
    std::vector<std::string> bestTokens_;
    std::vector<std::size_t> bestOrder_;
    std::size_t nodes_{0};
};

} // namespace

CanonicalConstraint canonicalise(const std::vector<SignedLiteral>& nogood) {
    std::vector<std::size_t> idx(nogood.size());
    for (std::size_t i = 0; i != idx.size(); ++i) {
        idx[i] = i;
    }
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return groupKey(nogood[a]) < groupKey(nogood[b]); });
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k != idx.size(); ++k) {
        if (k == 0 || groupKey(nogood[idx[k]]) != groupKey(nogood[idx[k - 1]])) {
            groups.emplace_back();
        }
        groups.back().push_back(idx[k]);
    }
    std::vector<std::size_t> order = nogood.empty() ? std::vector<std::size_t>{} : Search(nogood, groups).run();

    // rename in first-occurrence order along the chosen order
    std::vector<std::string> vars;
    for (std::size_t i : order) {
        nogood[i].atom.collectVariables(vars);
    }
    Substitution rename;
    for (std::size_t k = 0; k != vars.size(); ++k) {
        rename.set(vars[k], Term::variable(varName(k + 1)));
    }
    CanonicalConstraint out;
    for (std::size_t i : order) {
        out.literals.push_back(rename.apply(nogood[i]));
    }
    out.key = printNogood(out.literals);
    return out;
}

std::vector<SignedLiteral> toNogood(const std::vector<Literal>& body) {
    std::vector<SignedLiteral> out;
    out.reserve(body.size());
    for (const auto& l : body) {
        out.push_back({l.atom, !l.naf});
    }
    return out;
}

std::vector<Literal> toBody(const std::vector<SignedLiteral>& nogood) {
    std::vector<Literal> out;
    out.reserve(nogood.size());
    for (const auto& l : nogood) {
        out.push_back({l.atom, !l.truth});
    }
    return out;
}

std::string printConstraint(const std::vector<SignedLiteral>& nogood) {
    std::string s = ":- ";
    for (std::size_t i = 0; i != nogood.size(); ++i) {
        const auto& l = nogood[i];
        if (l.atom.isInternal()) {
            throw Error("internal atom present: " + l.atom.toString());
        }
        if (i) {
            s += ", ";
        }
        if (!l.truth) {
            s += "not ";
        }
        s += l.atom.toString();
    }
    return s + ".";
}

std::string printNogood(const std::vector<SignedLiteral>& nogood) {
    std::string s = "{";
    for (std::size_t i = 0; i != nogood.size(); ++i) {
        if (i) {
            s += ", ";
        }
        s += nogood[i].toString();
    }
    return s + "}";
}

} // namespace nglearn
