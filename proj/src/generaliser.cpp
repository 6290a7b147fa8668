#include <nglearn/generaliser.hpp>

#include <algorithm>

namespace nglearn {

std::optional<Substitution> witnessOf(const ResolutionState& st, const std::vector<GroundAtom>& table) {
    if (st.omega.size() != st.Omega.size()) {
        return std::nullopt;
    }
    Substitution s;
    for (std::size_t i = 0; i != st.omega.size(); ++i) {
        if (st.omega[i].truth != st.Omega[i].truth || !match(st.Omega[i].atom, table[st.omega[i].atom].atom, s)) {
            return std::nullopt;
        }
    }
    return s;
}

Substitution unifyDuplicateLiterals(const std::vector<SignedLiteral>& Omega,
                                    const std::vector<SignedLiteral>& OmegaAnt, const std::vector<GLit>& omega,
                                    const std::vector<GLit>& omegaAnt, Substitution start) {
    for (std::size_t p = 0; p != omega.size(); ++p) {
        auto it = std::find(omegaAnt.begin(), omegaAnt.end(), omega[p]);
        if (it == omegaAnt.end()) {
            continue;
        }
        auto q = static_cast<std::size_t>(it - omegaAnt.begin());
        if (!unifyAtoms(Omega[p].atom, OmegaAnt[q].atom, start)) {
            throw Error("duplicate literals do not unify: " + Omega[p].toString() + " / " + OmegaAnt[q].toString());
        }
    }
    return start;
}

ResolutionState Generaliser::factor(std::vector<GLit> ground, std::vector<SignedLiteral> nonground) {
    Substitution s;
    std::vector<bool> drop(ground.size(), false);
    for (std::size_t p = 0; p != ground.size(); ++p) {
        for (std::size_t q = 0; q != p; ++q) {
            if (!drop[q] && ground[q] == ground[p]) {
                if (!unifyAtoms(nonground[q].atom, nonground[p].atom, s)) {
                    throw Error("duplicate literals do not unify: " + nonground[q].toString());
                }
                drop[p] = true;
                break;
            }
        }
    }
    ResolutionState out;
    for (std::size_t p = 0; p != ground.size(); ++p) {
        if (!drop[p]) {
            out.omega.push_back(ground[p]);
            out.Omega.push_back(s.apply(nonground[p]));
        }
    }
    return out;
}

std::vector<SignedLiteral> Generaliser::standardiseApart(const std::vector<SignedLiteral>& ng) {
    std::vector<std::string> vars;
    for (const auto& l : ng) {
        l.atom.collectVariables(vars);
    }
    Substitution rename;
    for (const auto& v : vars) {
        rename.set(v, Term::variable("_G" + std::to_string(++fresh_)));
    }
    std::vector<SignedLiteral> out;
    out.reserve(ng.size());
    for (const auto& l : ng) {
        out.push_back(rename.apply(l));
    }
    return out;
}

std::optional<GLit> Generaliser::findNextLiteral(const std::vector<GLit>& omega, const AssignmentView& view) const {
    std::optional<GLit> best;
    std::uint32_t bestPos = 0;
    const int minLevel    = view.level - opts_.lookback + 1;
    for (const auto& l : omega) {
        const auto& s = view.state(l.atom);
        if (s.antecedent == kNoAntecedent || s.dl < minLevel) {
            continue;
        }
        if (!best || s.trailPos > bestPos) {
            best    = l;
            bestPos = s.trailPos;
        }
    }
    return best;
}

ResolutionState Generaliser::resolve(const ResolutionState& st, GLit l, const NoGoodPair& antecedent) {
    if (!antecedent.hasTwin()) {
        throw Error("twin missing");
    }
    auto it = std::find(st.omega.begin(), st.omega.end(), l);
    if (it == st.omega.end()) {
        throw Error("resolution literal not in resolvent");
    }
    const auto i = static_cast<std::size_t>(it - st.omega.begin());
    ResolutionState ant = factor(antecedent.ground, standardiseApart(*antecedent.nonground));
    auto jt = std::find(ant.omega.begin(), ant.omega.end(), l.complement());
    if (jt == ant.omega.end()) {
        throw Error("antecedent does not contain the complement of the resolution literal");
    }
    const auto j = static_cast<std::size_t>(jt - ant.omega.begin());

    Substitution s;
    if (!unifyAtoms(st.Omega[i].atom, ant.Omega[j].atom, s)) {
        throw Error("resolution literals do not unify: " + st.Omega[i].toString() + " / " + ant.Omega[j].toString());
    }
    s = unifyDuplicateLiterals(st.Omega, ant.Omega, st.omega, ant.omega, std::move(s));

    ResolutionState out;
    out.omega.reserve(st.omega.size() + ant.omega.size());
    for (std::size_t p = 0; p != st.omega.size(); ++p) {
        if (p != i) {
            out.omega.push_back(st.omega[p]);
            out.Omega.push_back(s.apply(st.Omega[p]));
        }
    }
    for (std::size_t q = 0; q != ant.omega.size(); ++q) {
        if (q == j || std::find(st.omega.begin(), st.omega.end(), ant.omega[q]) != st.omega.end()) {
            continue;
        }
        out.omega.push_back(ant.omega[q]);
        out.Omega.push_back(s.apply(ant.Omega[q]));
    }
    lastUnifier_ = std::move(s);
    return out;
}

namespace {
std::string showGround(const std::vector<GLit>& w, const AssignmentView& view) {
    std::string s = "{";
    for (std::size_t i = 0; i != w.size(); ++i) {
        s += i ? ", " : "";
        s += (w[i].truth ? "T " : "F ") + (*view.table)[w[i].atom].atom.toString();
        s += "@" + std::to_string(view.state(w[i].atom).dl);
    }
    return s + "}";
}
} // namespace

AnalysisResult Generaliser::analyze(NoGoodId violated, const AssignmentView& view) {
    AnalysisResult r;
    if (view.level == 0) {
        r.unsat = true;
        return r;
    }
    const auto& ng = (*view.nogoods)[violated];
    if (!ng.hasTwin()) {
        r.twinMissing = true;
        return r;
    }
    fresh_ = 0;
    ResolutionState st = factor(ng.ground, standardiseApart(*ng.nonground));
    auto inWindow = [&](const GLit& l) {
        const int dl = view.state(l.atom).dl;
        return opts_.uipWindow ? dl >= view.level - opts_.lookback + 1 : dl == view.level;
    };
    while (true) {
        auto l = findNextLiteral(st.omega, view);
        if (!l) {
            break;
        }
        if (r.steps >= opts_.stepBudget) {
            r.budgetExhausted = true;
            break;
        }
        const auto& ant = (*view.nogoods)[view.state(l->atom).antecedent];
        if (!ant.hasTwin()) {
            r.twinMissing = true;
            break;
        }
        st = resolve(st, *l, ant);
        ++r.steps;
        if (opts_.checkWitness) {
            ++r.witnessChecks;
            if (!witnessOf(st, *view.table)) {
                ++r.witnessViolations;
                if (opts_.trace) {
                    *opts_.trace << "witness violated\n";
                }
            }
        }
        if (opts_.trace) {
            *opts_.trace << "step " << r.steps << ": resolve on " << (l->truth ? "T " : "F ")
                         << (*view.table)[l->atom].atom.toString() << " | " << showGround(st.omega, view) << " | "
                         << printNogood(st.Omega) << " | " << lastUnifier_.toString() << '\n';
        }
        if (std::count_if(st.omega.begin(), st.omega.end(), inWindow) == 1) {
            r.ground.push_back(st.omega);
            r.nonground.push_back(st.Omega);
        }
    }
    return r;
}

const LearnedEntry* ConflictClass::topFirst() const {
    const LearnedEntry* best = nullptr;
    for (const auto& e : firstUip) {
        if (!best || e.count > best->count || (e.count == best->count && e.nogood.key < best->nogood.key)) {
            best = &e;
        }
    }
    return best;
}

const LearnedEntry* ConflictClass::topLast() const {
    const LearnedEntry* best = nullptr;
    for (const auto& e : lastUip) {
        if (!best || e.count > best->count || (e.count == best->count && e.nogood.key < best->nogood.key)) {
            best = &e;
        }
    }
    return best;
}

void ClassTable::add(std::vector<LearnedEntry>& list, const CanonicalConstraint& c, std::size_t idx,
                     std::uint64_t n) {
    for (auto& e : list) {
        if (e.nogood.key == c.key) {
            e.count += n;
            e.uipIndex = std::min(e.uipIndex, idx);
            return;
        }
    }
    list.push_back({c, idx, n});
}

void ClassTable::record(const NoGoodPair& violated, const AnalysisResult& result) {
    if (!violated.hasTwin() || result.unsat) {
        return;
    }
    auto key = canonicalise(*violated.nonground);
    auto [it, inserted] = classes_.try_emplace(key.key);
    auto& cls = it->second;
    if (inserted) {
        cls.key = key;
    }
    ++cls.violations;
    if (result.nonground.empty()) {
        return;
    }
    add(cls.firstUip, canonicalise(result.nonground.front()), 0, 1);
    // a single UIP is only recorded as first
    if (result.nonground.size() > 1) {
        add(cls.lastUip, canonicalise(result.nonground.back()), result.nonground.size() - 1, 1);
    }
    if (keepAll_) {
        for (std::size_t k = 0; k != result.nonground.size(); ++k) {
            add(cls.all, canonicalise(result.nonground[k]), k, 1);
        }
    }
}

void ClassTable::merge(const ClassTable& other) {
    for (const auto& [k, c] : other.classes_) {
        auto [it, inserted] = classes_.try_emplace(k, c);
        if (inserted) {
            continue;
        }
        auto& mine = it->second;
        mine.violations += c.violations;
        for (const auto& e : c.firstUip) {
            add(mine.firstUip, e.nogood, e.uipIndex, e.count);
        }
        for (const auto& e : c.lastUip) {
            add(mine.lastUip, e.nogood, e.uipIndex, e.count);
        }
        for (const auto& e : c.all) {
            add(mine.all, e.nogood, e.uipIndex, e.count);
        }
    }
}

std::vector<const ConflictClass*> ClassTable::ranked() const {
    std::vector<const ConflictClass*> out;
    for (const auto& [k, c] : classes_) {
        out.push_back(&c);
    }
    std::stable_sort(out.begin(), out.end(), [](const ConflictClass* a, const ConflictClass* b) {
        if (a->violations != b->violations) {
            return a->violations > b->violations;
        }
        return a->key.key < b->key.key;
    });
    return out;
}

const ConflictClass* ClassTable::find(const std::vector<SignedLiteral>& twin) const {
    auto it = classes_.find(canonicalise(twin).key);
    return it == classes_.end() ? nullptr : &it->second;
}

} // namespace nglearn
