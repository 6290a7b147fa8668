#include <nglearn/grounder.hpp>

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace nglearn {

const char* toString(NoGoodKind k) {
    switch (k) {
        case NoGoodKind::Static: return "static";
        case NoGoodKind::Support: return "support";
        case NoGoodKind::Learned: return "learned";
        case NoGoodKind::Internal: return "internal";
    }
    return "?";
}

const char* toString(NoGoodRole r) {
    switch (r) {
        case NoGoodRole::BodyDef: return "body";
        case NoGoodRole::Head: return "head";
        case NoGoodRole::PosBody: return "posbody";
        case NoGoodRole::NegBody: return "negbody";
        case NoGoodRole::Support: return "support";
        case NoGoodRole::Constraint: return "constraint";
        case NoGoodRole::Completion: return "completion";
        case NoGoodRole::Loop: return "loop";
        case NoGoodRole::Blocking: return "blocking";
        case NoGoodRole::Learned: return "learned";
    }
    return "?";
}

std::optional<AtomId> GroundProgram::find(const Atom& a) const {
    auto it = index_.find(a);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

AtomId GroundProgram::addAtom(const Atom& a) {
    auto [it, inserted] = index_.try_emplace(a, static_cast<AtomId>(atoms.size()));
    if (inserted) {
        atoms.push_back(GroundAtom{a, std::nullopt});
    }
    return it->second;
}

std::string GroundProgram::literalString(GLit l) const {
    return (l.truth ? "T " : "F ") + atoms[l.atom].atom.toString();
}

std::string GroundProgram::dumpNogoods() const {
    std::string out;
    for (const auto& ng : nogoods) {
        out += toString(ng.kind);
        out += '\t';
        out += '{';
        for (std::size_t i = 0; i != ng.ground.size(); ++i) {
            out += i ? ", " : "";
            out += literalString(ng.ground[i]);
        }
        out += "}\t";
        if (ng.nonground) {
            out += '{';
            for (std::size_t i = 0; i != ng.nonground->size(); ++i) {
                out += i ? ", " : "";
                out += (*ng.nonground)[i].toString();
            }
            out += '}';
        }
        else {
            out += '-';
        }
        out += '\t';
        out += ng.sigma ? ng.sigma->toString() : "-";
        out += '\n';
    }
    return out;
}

std::set<Term> computeUniverse(const Program& p, const std::vector<Atom>& instanceFacts) {
    auto out = p.universe();
    Program facts;
    for (const auto& f : instanceFacts) {
        Rule r;
        r.head = f;
        facts.rules.push_back(std::move(r));
    }
    auto more = facts.universe();
    out.insert(more.begin(), more.end());
    return out;
}

namespace {
PredicateSig headKey(const Atom& a) {
    return a.kind == AtomKind::ChoiceHat ? PredicateSig{"_hat_" + a.predicate, a.arity()} : a.signature();
}
} // namespace

std::set<PredicateSig> completionSupportSet(const Program& p) {
    std::map<PredicateSig, int> ruleCount;
    std::set<PredicateSig> withFacts;
    for (const auto& r : p.rules) {
        if (!r.head) {
            continue;
        }
        auto key = headKey(*r.head);
        if (r.isFact()) {
            withFacts.insert(key);
        }
        else {
            ++ruleCount[key];
        }
    }
    std::set<PredicateSig> out;
    for (const auto& [key, n] : ruleCount) {
        if (n == 1 && !withFacts.count(key)) {
            out.insert(key);
        }
    }
    return out;
}

std::vector<SchemaNogood> emitNogoods(const Rule& r, const Substitution& sigma, bool withSupport) {
    std::vector<SchemaNogood> out;
    auto groundOf = [&](const SignedLiteral& l) { return sigma.apply(l); };
    if (!r.head) {
        SchemaNogood ng{{}, {}, NoGoodKind::Static, NoGoodRole::Constraint};
        for (const auto& l : r.body) {
            SignedLiteral s{l.atom, !l.naf};
            ng.nonground.push_back(s);
            ng.ground.push_back(groundOf(s));
        }
        out.push_back(std::move(ng));
        return out;
    }
    std::vector<Term> varTerms;
    for (const auto& v : r.variables()) {
        varTerms.push_back(Term::variable(v));
    }
    const Atom beta = Atom::bodyRep(r.id, varTerms);
    auto push = [&](NoGoodKind k, NoGoodRole role, std::vector<SignedLiteral> lits) {
        SchemaNogood ng{{}, std::move(lits), k, role};
        for (const auto& l : ng.nonground) {
            ng.ground.push_back(groundOf(l));
        }
        out.push_back(std::move(ng));
    };
    std::vector<SignedLiteral> full{{beta, false}};
    for (const auto& l : r.body) {
        full.push_back({l.atom, !l.naf});
    }
    push(NoGoodKind::Static, NoGoodRole::BodyDef, std::move(full));
    push(NoGoodKind::Static, NoGoodRole::Head, {{*r.head, false}, {beta, true}});
    for (const auto& l : r.body) {
        if (!l.naf) {
            push(NoGoodKind::Static, NoGoodRole::PosBody, {{beta, true}, {l.atom, false}});
        }
        else {
            push(NoGoodKind::Static, NoGoodRole::NegBody, {{beta, true}, {l.atom, true}});
        }
    }
    if (withSupport) {
        push(NoGoodKind::Support, NoGoodRole::Support, {{*r.head, true}, {beta, false}});
    }
    return out;
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
        std::size_t h = v.size();
        for (auto x : v) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

class TermPool {
public:
    std::uint32_t intern(const Term& t) {
        auto [it, inserted] = ids_.try_emplace(t, static_cast<std::uint32_t>(terms_.size()));
        if (inserted) {
            terms_.push_back(t);
        }
        return it->second;
    }
    [[nodiscard]] const Term& term(std::uint32_t id) const { return terms_[id]; }

private:
    std::vector<Term> terms_;
    std::map<Term, std::uint32_t> ids_;
};

constexpr std::uint32_t kUnbound = static_cast<std::uint32_t>(-1);

struct CTerm {
    enum Kind { Var, Const, Complex } kind;
    std::uint32_t id; // var index or term id
    Term pattern;     // Complex only
};

struct CLit {
    std::uint32_t pred{0};
    std::vector<CTerm> args;
    std::vector<std::uint32_t> vars;
    const Literal* src{nullptr};
};

struct CRule {
    const Rule* rule{nullptr};
    std::vector<std::string> varNames;
    std::vector<CLit> pos;      // classical/hat positive body literals
    std::vector<CLit> neg;      // classical/hat NaF literals
    std::vector<CLit> builtins; // comparisons (either sign)
    std::optional<CLit> head;
    std::unordered_set<std::vector<std::uint32_t>, VecHash> seen;
};

struct Instance {
    std::size_t rule;
    std::vector<std::uint32_t> binding;
};

class Grounder {
public:
    Grounder(const Program& p, const std::vector<Atom>& facts, const GroundOptions& opts)
        : prog_(p), opts_(opts) {
        for (const auto& r : prog_.rules) {
            if (r.isFact() && r.head->isGround()) {
                addFact(*r.head);
            }
        }
        for (const auto& f : facts) {
            if (!f.isGround() || f.kind != AtomKind::Classical) {
                throw GroundingError("instance fact must be a ground classical atom: " + f.toString());
            }
            if (!prog_.inputPredicates.empty() && !prog_.inputPredicates.count(f.signature())) {
                warnings_.push_back("fact " + f.toString() + " uses undeclared input predicate " +
                                    f.signature().toString());
            }
            addFact(f);
        }
        for (const auto& r : prog_.rules) {
            if (r.isFact() && r.head->isGround()) {
                continue;
            }
            compile(r);
        }
    }

    GroundProgram run() {
        fixpoint();
        for (std::size_t i = 0; i != rules_.size(); ++i) {
            if (!rules_[i].rule->head) {
                const auto& cr = rules_[i];
                if (cr.pos.empty()) {
                    std::vector<std::uint32_t> b(cr.varNames.size(), kUnbound);
                    join(i, b, {}, 0, false, [&](const std::vector<std::uint32_t>& bind) { record(i, bind); });
                }
                else {
                    auto plan = makePlan(i, 0);
                    std::vector<std::uint32_t> b(cr.varNames.size(), kUnbound);
                    join(i, b, plan, 0, false, [&](const std::vector<std::uint32_t>& bind) { record(i, bind); });
                }
            }
        }
        return build();
    }

private:
    std::uint32_t predId(AtomKind kind, const std::string& name, int arity) {
        std::string key = std::to_string(static_cast<int>(kind)) + "/" + name + "/" + std::to_string(arity);
        auto [it, inserted] = predIds_.try_emplace(key, static_cast<std::uint32_t>(predAtoms_.size()));
        if (inserted) {
            predAtoms_.emplace_back();
        }
        return it->second;
    }

    std::vector<std::uint32_t> keyOf(const Atom& a) {
        std::vector<std::uint32_t> key{predId(a.kind, a.predicate, a.arity())};
        for (const auto& t : a.args) {
            key.push_back(pool_.intern(t));
        }
        return key;
    }

    void addFact(const Atom& a) {
        auto key = keyOf(a);
        facts_.insert(key);
        factAtoms_.insert(a);
        addDerivable(key, delta0_);
    }

    bool addDerivable(const std::vector<std::uint32_t>& key, std::vector<std::uint32_t>& newList) {
        auto [it, inserted] = derivable_.try_emplace(key, static_cast<std::uint32_t>(dAtoms_.size()));
        if (!inserted) {
            return false;
        }
        dAtoms_.push_back(key);
        newList.push_back(it->second);
        return true;
    }

    void publish(std::uint32_t d) {
        const auto& key = dAtoms_[d];
        predAtoms_[key[0]].push_back(d);
        for (std::size_t pos = 1; pos < key.size(); ++pos) {
            index_[indexKey(key[0], pos - 1, key[pos])].push_back(d);
        }
    }

    static std::uint64_t indexKey(std::uint32_t pred, std::size_t pos, std::uint32_t term) {
        return (static_cast<std::uint64_t>(pred) << 40) ^ (static_cast<std::uint64_t>(pos) << 32) ^ term;
    }

    CTerm compileTerm(const Term& t, const std::vector<std::string>& vars) {
        if (t.isVariable()) {
            auto it = std::find(vars.begin(), vars.end(), t.name());
            return {CTerm::Var, static_cast<std::uint32_t>(it - vars.begin()), {}};
        }
        if (t.isGround()) {
            return {CTerm::Const, pool_.intern(t), {}};
        }
        return {CTerm::Complex, 0, t};
    }

    CLit compileLit(const Literal& l, const std::vector<std::string>& vars, bool builtin) {
        CLit c;
        c.src  = &l;
        c.pred = builtin ? 0 : predId(l.atom.kind, l.atom.predicate, l.atom.arity());
        for (const auto& t : l.atom.args) {
            c.args.push_back(compileTerm(t, vars));
        }
        std::vector<std::string> lv;
        l.atom.collectVariables(lv);
        for (const auto& v : lv) {
            c.vars.push_back(static_cast<std::uint32_t>(std::find(vars.begin(), vars.end(), v) - vars.begin()));
        }
        return c;
    }

    void compile(const Rule& r) {
        CRule cr;
        cr.rule     = &r;
        cr.varNames = r.variables();
        for (const auto& l : r.body) {
            if (l.atom.kind == AtomKind::Builtin) {
                cr.builtins.push_back(compileLit(l, cr.varNames, true));
            }
            else if (l.naf) {
                cr.neg.push_back(compileLit(l, cr.varNames, false));
            }
            else {
                cr.pos.push_back(compileLit(l, cr.varNames, false));
            }
        }
        if (r.head) {
            Literal h{*r.head, false};
            headLits_.push_back(h);
            cr.head = compileLit(headLits_.back(), cr.varNames, false);
        }
        rules_.push_back(std::move(cr));
    }

    // Step of a join plan: positive literal index, or a check of a builtin
    // (kind 1) / NaF literal (kind 2) once its variables are bound.
    struct Step {
        int kind;
        std::size_t idx;
    };

    std::vector<Step> makePlan(std::size_t ruleIdx, std::size_t seed) const {
        const auto& cr = rules_[ruleIdx];
        std::vector<Step> plan;
        std::vector<bool> bound(cr.varNames.size(), false);
        std::vector<bool> usedPos(cr.pos.size(), false), usedB(cr.builtins.size(), false),
            usedN(cr.neg.size(), false);
        auto allBound = [&](const CLit& l) {
            return std::all_of(l.vars.begin(), l.vars.end(), [&](std::uint32_t v) { return bound[v]; });
        };
        auto addChecks = [&] {
            for (std::size_t i = 0; i != cr.builtins.size(); ++i) {
                if (!usedB[i] && allBound(cr.builtins[i])) {
                    usedB[i] = true;
                    plan.push_back({1, i});
                }
            }
            for (std::size_t i = 0; i != cr.neg.size(); ++i) {
                if (!usedN[i] && allBound(cr.neg[i])) {
                    usedN[i] = true;
                    plan.push_back({2, i});
                }
            }
        };
        auto take = [&](std::size_t i) {
            usedPos[i] = true;
            plan.push_back({0, i});
            for (auto v : cr.pos[i].vars) {
                bound[v] = true;
            }
            addChecks();
        };
        addChecks();
        if (!cr.pos.empty()) {
            take(seed);
        }
        for (std::size_t n = 1; n < cr.pos.size(); ++n) {
            std::size_t best  = cr.pos.size();
            int bestScore     = -1;
            for (std::size_t i = 0; i != cr.pos.size(); ++i) {
                if (usedPos[i]) {
                    continue;
                }
                int score = 0;
                for (const auto& a : cr.pos[i].args) {
                    if (a.kind == CTerm::Const || (a.kind == CTerm::Var && bound[a.id])) {
                        ++score;
                    }
                }
                if (score > bestScore) {
                    bestScore = score;
                    best      = i;
                }
            }
            take(best);
        }
        return plan;
    }

    bool matchTerm(const CTerm& p, std::uint32_t value, std::vector<std::uint32_t>& b,
                   std::vector<std::uint32_t>& trail, const std::vector<std::string>& names) {
        switch (p.kind) {
            case CTerm::Const: return p.id == value;
            case CTerm::Var:
                if (b[p.id] == kUnbound) {
                    b[p.id] = value;
                    trail.push_back(p.id);
                    return true;
                }
                return b[p.id] == value;
            case CTerm::Complex: return matchComplex(p.pattern, pool_.term(value), b, trail, names);
        }
        return false;
    }

    bool matchComplex(const Term& pat, const Term& val, std::vector<std::uint32_t>& b,
                      std::vector<std::uint32_t>& trail, const std::vector<std::string>& names) {
        if (pat.isVariable()) {
            auto idx = static_cast<std::uint32_t>(std::find(names.begin(), names.end(), pat.name()) - names.begin());
            auto v   = pool_.intern(val);
            if (b[idx] == kUnbound) {
                b[idx] = v;
                trail.push_back(idx);
                return true;
            }
            return b[idx] == v;
        }
        if (pat.kind() != val.kind() || pat.name() != val.name() || pat.args().size() != val.args().size()) {
            return false;
        }
        if (pat.kind() == Term::Kind::Integer) {
            return pat.value() == val.value();
        }
        for (std::size_t i = 0; i != pat.args().size(); ++i) {
            if (!matchComplex(pat.args()[i], val.args()[i], b, trail, names)) {
                return false;
            }
        }
        return true;
    }

    Term instantiate(const CTerm& t, const std::vector<std::uint32_t>& b, const std::vector<std::string>& names) {
        switch (t.kind) {
            case CTerm::Const: return pool_.term(t.id);
            case CTerm::Var: return pool_.term(b[t.id]);
            case CTerm::Complex: {
                Substitution s;
                for (std::size_t i = 0; i != names.size(); ++i) {
                    if (b[i] != kUnbound) {
                        s.set(names[i], pool_.term(b[i]));
                    }
                }
                return s.apply(t.pattern);
            }
        }
        return {};
    }

    std::uint32_t instantiateId(const CTerm& t, const std::vector<std::uint32_t>& b,
                                const std::vector<std::string>& names) {
        if (t.kind == CTerm::Const) {
            return t.id;
        }
        if (t.kind == CTerm::Var) {
            return b[t.id];
        }
        return pool_.intern(instantiate(t, b, names));
    }

    bool checkBuiltin(const CLit& l, const std::vector<std::uint32_t>& b, const std::vector<std::string>& names) {
        Atom a = l.src->atom;
        a.args = {instantiate(l.args[0], b, names), instantiate(l.args[1], b, names)};
        return evalBuiltin(a) != l.src->naf;
    }

    bool nafBlocked(const CLit& l, const std::vector<std::uint32_t>& b, const std::vector<std::string>& names) {
        std::vector<std::uint32_t> key{l.pred};
        for (const auto& t : l.args) {
            key.push_back(instantiateId(t, b, names));
        }
        return facts_.count(key) != 0;
    }

    template <class Fn>
    void join(std::size_t ruleIdx, std::vector<std::uint32_t>& b, const std::vector<Step>& plan, std::size_t step,
              bool seedDelta, Fn&& emit) {
        const auto& cr = rules_[ruleIdx];
        if (step == plan.size()) {
            // rules without positive literals still need their checks
            if (plan.empty()) {
                for (const auto& l : cr.builtins) {
                    if (!checkBuiltin(l, b, cr.varNames)) {
                        return;
                    }
                }
                for (const auto& l : cr.neg) {
                    if (nafBlocked(l, b, cr.varNames)) {
                        return;
                    }
                }
            }
            emit(b);
            return;
        }
        const Step s = plan[step];
        if (s.kind == 1) {
            if (checkBuiltin(cr.builtins[s.idx], b, cr.varNames)) {
                join(ruleIdx, b, plan, step + 1, seedDelta, emit);
            }
            return;
        }
        if (s.kind == 2) {
            if (!nafBlocked(cr.neg[s.idx], b, cr.varNames)) {
                join(ruleIdx, b, plan, step + 1, seedDelta, emit);
            }
            return;
        }
        const CLit& lit = cr.pos[s.idx];
        const std::vector<std::uint32_t>* cands = nullptr;
        if (seedDelta && step == firstPosStep(plan)) {
            cands = &deltaByPred_[lit.pred];
        }
        else {
            cands = &predAtoms_[lit.pred];
            for (std::size_t pos = 0; pos != lit.args.size(); ++pos) {
                const auto& a = lit.args[pos];
                std::uint32_t v = kUnbound;
                if (a.kind == CTerm::Const) {
                    v = a.id;
                }
                else if (a.kind == CTerm::Var && b[a.id] != kUnbound) {
                    v = b[a.id];
                }
                if (v == kUnbound) {
                    continue;
                }
                auto it = index_.find(indexKey(lit.pred, pos, v));
                if (it == index_.end()) {
                    return;
                }
                if (it->second.size() < cands->size()) {
                    cands = &it->second;
                }
            }
        }
        std::vector<std::uint32_t> trail;
        // copy: candidate lists may not grow during a round, but keep it safe
        for (std::size_t k = 0; k != cands->size(); ++k) {
            const auto& key = dAtoms_[(*cands)[k]];
            if (key[0] != lit.pred) {
                continue;
            }
            trail.clear();
            bool ok = true;
            for (std::size_t pos = 0; ok && pos != lit.args.size(); ++pos) {
                ok = matchTerm(lit.args[pos], key[pos + 1], b, trail, cr.varNames);
            }
            if (ok) {
                join(ruleIdx, b, plan, step + 1, seedDelta, emit);
            }
            for (auto v : trail) {
                b[v] = kUnbound;
            }
        }
    }

    static std::size_t firstPosStep(const std::vector<Step>& plan) {
        for (std::size_t i = 0; i != plan.size(); ++i) {
            if (plan[i].kind == 0) {
                return i;
            }
        }
        return plan.size();
    }

    bool record(std::size_t ruleIdx, const std::vector<std::uint32_t>& b) {
        auto& cr = rules_[ruleIdx];
        if (!cr.seen.insert(b).second) {
            return false;
        }
        instances_.push_back({ruleIdx, b});
        if (instances_.size() > opts_.maxGroundRules) {
            throw GroundingError("grounding explosion: more than " + std::to_string(opts_.maxGroundRules) +
                                 " ground rules");
        }
        return true;
    }

    void fixpoint() {
        std::vector<std::uint32_t> delta = delta0_;
        bool first = true;
        while (!delta.empty() || first) {
            for (auto d : delta) {
                publish(d);
            }
            deltaByPred_.assign(predAtoms_.size(), {});
            for (auto d : delta) {
                deltaByPred_[dAtoms_[d][0]].push_back(d);
            }
            std::vector<std::uint32_t> next;
            for (std::size_t i = 0; i != rules_.size(); ++i) {
                auto& cr = rules_[i];
                if (!cr.rule->head) {
                    continue;
                }
                auto onMatch = [&](const std::vector<std::uint32_t>& bind) {
                    if (!record(i, bind)) {
                        return;
                    }
                    std::vector<std::uint32_t> key{cr.head->pred};
                    for (const auto& t : cr.head->args) {
                        key.push_back(instantiateId(t, bind, cr.varNames));
                    }
                    addDerivable(key, next);
                };
                std::vector<std::uint32_t> b(cr.varNames.size(), kUnbound);
                if (cr.pos.empty()) {
                    if (first) {
                        join(i, b, {}, 0, false, onMatch);
                    }
                    continue;
                }
                for (std::size_t k = 0; k != cr.pos.size(); ++k) {
                    if (deltaByPred_.size() <= cr.pos[k].pred || deltaByPred_[cr.pos[k].pred].empty()) {
                        continue;
                    }
                    auto plan = makePlan(i, k);
                    join(i, b, plan, 0, true, onMatch);
                }
            }
            first = false;
            delta = std::move(next);
            if (predAtoms_.size() > deltaByPred_.size()) {
                deltaByPred_.resize(predAtoms_.size());
            }
        }
    }

    GroundProgram build() {
        GroundProgram gp;
        gp.encoding = prog_;
        gp.warnings = warnings_;
        const auto supportSet = completionSupportSet(prog_);

        // facts first so that they carry the lowest ids
        for (const auto& f : factAtoms_) {
            AtomId id = gp.addAtom(f);
            gp.atoms[id].fixed = true;
        }

        std::map<AtomId, std::vector<std::size_t>> headRules; // head atom -> record indices
        std::vector<bool> supportEmitted;
        std::map<std::pair<std::size_t, bool>, std::vector<std::shared_ptr<const std::vector<SignedLiteral>>>>
            twinCache;
        for (const auto& inst : instances_) {
            const auto& cr = rules_[inst.rule];
            const Rule& r  = *cr.rule;
            Substitution sigma;
            for (std::size_t v = 0; v != cr.varNames.size(); ++v) {
                sigma.set(cr.varNames[v], pool_.term(inst.binding[v]));
            }
            bool support = false;
            std::optional<Atom> head;
            if (r.head) {
                head = sigma.apply(*r.head);
                std::vector<std::string> hv;
                r.head->collectVariables(hv);
                support = opts_.supportNogoods && supportSet.count(headKey(*r.head)) &&
                          hv.size() == cr.varNames.size() && !factAtoms_.count(*head);
            }
            GroundRuleRecord rec;
            rec.ruleId = r.id;
            rec.sigma  = std::make_shared<const Substitution>(sigma);
            auto& twins = twinCache[{inst.rule, support}];
            const bool fresh = twins.empty();
            auto schema = emitNogoods(r, sigma, support);
            for (std::size_t k = 0; k != schema.size(); ++k) {
                auto& sng = schema[k];
                NoGoodPair ng;
                ng.kind       = sng.kind;
                ng.role       = sng.role;
                ng.sourceRule = r.id;
                ng.sigma      = rec.sigma;
                for (const auto& gl : sng.ground) {
                    ng.ground.push_back({gp.addAtom(gl.atom), gl.truth});
                }
                if (fresh) {
                    twins.push_back(std::make_shared<const std::vector<SignedLiteral>>(std::move(sng.nonground)));
                }
                ng.nonground = twins[k];
                rec.nogoods.push_back(static_cast<NoGoodId>(gp.nogoods.size()));
                gp.nogoods.push_back(std::move(ng));
            }
            if (r.head) {
                std::vector<Term> args;
                for (const auto& v : cr.varNames) {
                    args.push_back(*sigma.find(v));
                }
                rec.beta = gp.addAtom(Atom::bodyRep(r.id, std::move(args)));
                rec.head = gp.addAtom(*head);
                for (const auto& l : r.body) {
                    if (l.atom.kind == AtomKind::Builtin) {
                        continue;
                    }
                    AtomId a = gp.addAtom(sigma.apply(l.atom));
                    (l.naf ? rec.negBody : rec.posBody).push_back(a);
                }
                headRules[*rec.head].push_back(gp.rules.size());
                supportEmitted.push_back(support);
            }
            else {
                supportEmitted.push_back(false);
            }
            gp.rules.push_back(std::move(rec));
        }

        // fixed values for atoms that are not open
        for (AtomId a = 0; a != gp.atoms.size(); ++a) {
            auto& ga = gp.atoms[a];
            if (ga.fixed) {
                continue;
            }
            switch (ga.atom.kind) {
                case AtomKind::Builtin: ga.fixed = evalBuiltin(ga.atom); break;
                case AtomKind::BodyRep: break;
                default:
                    if (factAtoms_.count(ga.atom)) {
                        ga.fixed = true;
                    }
                    else if (!headRules.count(a)) {
                        ga.fixed = false;
                    }
                    break;
            }
        }

        // completion for heads without a twin-carrying support nogood
        for (const auto& [h, recs] : headRules) {
            if (gp.atoms[h].fixed) {
                continue;
            }
            if (recs.size() == 1 && supportEmitted[recs.front()]) {
                continue;
            }
            NoGoodPair ng;
            ng.kind = NoGoodKind::Internal;
            ng.role = NoGoodRole::Completion;
            ng.ground.push_back({h, true});
            for (auto ri : recs) {
                ng.ground.push_back({gp.rules[ri].beta, false});
            }
            gp.nogoods.push_back(std::move(ng));
        }

        for (const auto& rec : gp.rules) {
            if (!rec.head) {
                continue;
            }
            bool open = std::any_of(rec.negBody.begin(), rec.negBody.end(),
                                    [&](AtomId a) { return !gp.atoms[a].fixed.has_value(); });
            if (open) {
                gp.choiceAtoms.push_back(rec.beta);
            }
        }
        return gp;
    }

    const Program& prog_;
    GroundOptions opts_;
    std::vector<std::string> warnings_;
    TermPool pool_;
    std::map<std::string, std::uint32_t> predIds_;
    std::vector<std::vector<std::uint32_t>> predAtoms_;
    std::vector<std::vector<std::uint32_t>> deltaByPred_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> index_;
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> derivable_;
    std::vector<std::vector<std::uint32_t>> dAtoms_;
    std::unordered_set<std::vector<std::uint32_t>, VecHash> facts_;
    std::set<Atom> factAtoms_;
    std::vector<std::uint32_t> delta0_;
    std::deque<Literal> headLits_;
    std::vector<CRule> rules_;
    std::vector<Instance> instances_;
};

} // namespace

GroundProgram groundProgram(const Program& translated, const std::vector<Atom>& instanceFacts,
                            const GroundOptions& opts) {
    if (translated.choiceRuleCount() != 0) {
        throw GroundingError("program must be choice-translated before grounding");
    }
    return Grounder(translated, instanceFacts, opts).run();
}

} // namespace nglearn
