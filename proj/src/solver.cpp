#include <nglearn/solver.hpp>

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace nglearn {

const char* toString(Truth t) {
    switch (t) {
        case Truth::U: return "U";
        case Truth::F: return "F";
        case Truth::M: return "M";
        case Truth::T: return "T";
    }
    return "?";
}

const char* toString(SolveStatus s) {
    switch (s) {
        case SolveStatus::SAT: return "SAT";
        case SolveStatus::UNSAT: return "UNSAT";
        case SolveStatus::LIMIT: return "LIMIT";
    }
    return "?";
}

namespace {

std::uint64_t luby(std::uint64_t i) {
    // i >= 1
    std::uint64_t k = 1;
    while ((std::uint64_t{1} << k) - 1 < i) {
        ++k;
    }
    while (true) {
        if (i == (std::uint64_t{1} << k) - 1) {
            return std::uint64_t{1} << (k - 1);
        }
        i -= (std::uint64_t{1} << (k - 1)) - 1;
        k = 1;
        while ((std::uint64_t{1} << k) - 1 < i) {
            ++k;
        }
    }
}

std::vector<GLit> unique(const std::vector<GLit>& lits) {
    std::vector<GLit> out;
    out.reserve(lits.size());
    for (const auto& l : lits) {
        if (std::find(out.begin(), out.end(), l) == out.end()) {
            out.push_back(l);
        }
    }
    return out;
}

bool sameSet(std::vector<GLit> a, std::vector<GLit> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

} // namespace

Solver::Solver(const GroundProgram& gp, SolverOptions opts)
    : gp_(gp), opts_(opts), nogoods_(gp.nogoods), generaliser_(opts.generaliser) {
    const std::size_t n = gp.atoms.size();
    state_.resize(n);
    watches_.resize(2 * n);
    active_.resize(nogoods_.size());
    activity_.assign(n, 0.0);
    isChoice_.assign(n, false);
    for (auto a : gp.choiceAtoms) {
        isChoice_[a] = true;
    }
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::mt19937_64 rng(opts.seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    rank_.resize(n);
    for (std::uint32_t i = 0; i != n; ++i) {
        rank_[perm[i]] = i;
    }
    headRules_.resize(n);
    for (std::uint32_t r = 0; r != gp.rules.size(); ++r) {
        if (gp.rules[r].head) {
            headRules_[*gp.rules[r].head].push_back(r);
        }
    }
    recording_ = opts.recordTrace;

    for (AtomId a = 0; a != n; ++a) {
        if (gp.atoms[a].fixed) {
            assign(a, *gp.atoms[a].fixed ? Truth::T : Truth::F, kNoAntecedent);
        }
    }
    for (NoGoodId id = 0; id != nogoods_.size(); ++id) {
        std::vector<GLit> act;
        bool inert = false;
        for (const auto& l : nogoods_[id].ground) {
            const auto& fixed = gp.atoms[l.atom].fixed;
            if (fixed) {
                if (*fixed != l.truth) {
                    inert = true; // can never be violated
                    break;
                }
                continue;
            }
            if (std::find(act.begin(), act.end(), l.complement()) != act.end()) {
                inert = true;
                break;
            }
            if (std::find(act.begin(), act.end(), l) == act.end()) {
                act.push_back(l);
            }
        }
        if (inert) {
            continue;
        }
        if (act.empty()) {
            rootConflict_ = true;
            continue;
        }
        active_[id] = std::move(act);
        if (active_[id].size() == 1) {
            const GLit u = active_[id][0];
            if (satisfied(u)) {
                rootConflict_ = true;
            }
            else if (!falsified(u)) {
                assign(u.atom, u.truth ? Truth::F : Truth::T, id);
            }
            continue;
        }
        watch(id);
    }
}

AssignmentView Solver::view() const {
    return {&gp_.atoms, &nogoods_, &state_, level()};
}

void Solver::assign(AtomId a, Truth t, NoGoodId antecedent) {
    auto& s      = state_[a];
    s.truth      = t;
    s.dl         = level();
    s.antecedent = antecedent;
    s.trailPos   = static_cast<std::uint32_t>(trail_.size());
    trail_.push_back(a);
    if (recording_) {
        trace_.push_back({a, t, s.dl, antecedent});
    }
}

void Solver::watch(NoGoodId id) {
    const auto& lits = active_[id];
    watches_[lits[0].code()].push_back(id);
    watches_[lits[1].code()].push_back(id);
}

std::optional<NoGoodId> Solver::propagate() {
    while (propHead_ < trail_.size()) {
        const AtomId a  = trail_[propHead_++];
        const GLit sat{a, state_[a].truth != Truth::F};
        auto& ws = watches_[sat.code()];
        std::size_t j = 0;
        for (std::size_t i = 0; i != ws.size(); ++i) {
            const NoGoodId id = ws[i];
            auto& lits        = active_[id];
            if (lits[0] == sat) {
                std::swap(lits[0], lits[1]);
            }
            if (falsified(lits[0])) {
                ws[j++] = id;
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k != lits.size(); ++k) {
                if (!satisfied(lits[k])) {
                    std::swap(lits[1], lits[k]);
                    watches_[lits[1].code()].push_back(id);
                    moved = true;
                    break;
                }
            }
            if (moved) {
                continue;
            }
            ws[j++] = id;
            if (satisfied(lits[0])) {
                for (++i; i != ws.size(); ++i) {
                    ws[j++] = ws[i];
                }
                ws.resize(j);
                propHead_ = trail_.size();
                return id;
            }
            const GLit u = lits[0];
            Truth t      = Truth::F;
            if (!u.truth) {
                t = nogoods_[id].role == NoGoodRole::Head ? Truth::M : Truth::T;
            }
            assign(u.atom, t, id);
            ++propagations_;
        }
        ws.resize(j);
    }
    return std::nullopt;
}

void Solver::decide(GLit l) {
    levelStart_.push_back(trail_.size());
    assign(l.atom, l.truth ? Truth::T : Truth::F, kNoAntecedent);
}

void Solver::backjump(int target) {
    if (target >= level()) {
        return;
    }
    const std::size_t keep = levelStart_[static_cast<std::size_t>(target)];
    while (trail_.size() > keep) {
        auto& s      = state_[trail_.back()];
        s.truth      = Truth::U;
        s.dl         = -1;
        s.antecedent = kNoAntecedent;
        trail_.pop_back();
    }
    levelStart_.resize(static_cast<std::size_t>(target));
    propHead_ = std::min(propHead_, trail_.size());
}

std::vector<GLit> Solver::analyzeGround(NoGoodId violated) {
    const int dl           = level();
    std::vector<GLit> omega = unique(nogoods_[violated].ground);
    while (true) {
        const GLit* next = nullptr;
        for (const auto& l : omega) {
            const auto& s = state_[l.atom];
            if (s.dl == dl && s.antecedent != kNoAntecedent &&
                (!next || s.trailPos > state_[next->atom].trailPos)) {
                next = &l;
            }
        }
        if (!next) {
            return omega;
        }
        const GLit l            = *next;
        const auto& ant         = nogoods_[state_[l.atom].antecedent].ground;
        std::vector<GLit> out;
        out.reserve(omega.size() + ant.size());
        for (const auto& x : omega) {
            if (x != l) {
                out.push_back(x);
            }
        }
        for (const auto& x : ant) {
            if (x != l.complement() && std::find(out.begin(), out.end(), x) == out.end()) {
                out.push_back(x);
            }
        }
        omega = std::move(out);
        auto atLevel = std::count_if(omega.begin(), omega.end(), [&](GLit x) { return state_[x.atom].dl == dl; });
        if (atLevel == 1) {
            return omega;
        }
    }
}

NoGoodId Solver::addNogood(NoGoodPair ng) {
    const auto id = static_cast<NoGoodId>(nogoods_.size());
    std::vector<GLit> act = unique(ng.ground);
    nogoods_.push_back(std::move(ng));
    // watch the two literals that will be unassigned first
    auto better = [&](GLit a, GLit b) {
        const bool sa = satisfied(a), sb = satisfied(b);
        if (sa != sb) {
            return !sa;
        }
        return state_[a.atom].trailPos > state_[b.atom].trailPos;
    };
    for (std::size_t w = 0; w < 2 && w < act.size(); ++w) {
        std::size_t best = w;
        for (std::size_t k = w + 1; k < act.size(); ++k) {
            if (better(act[k], act[best])) {
                best = k;
            }
        }
        std::swap(act[w], act[best]);
    }
    active_.push_back(std::move(act));
    if (active_.back().size() >= 2) {
        watch(id);
    }
    return id;
}

std::vector<AtomId> Solver::unfoundedAtoms() const {
    const std::size_t n = gp_.atoms.size();
    std::vector<char> derived(n, 0);
    std::vector<AtomId> queue;
    for (AtomId a = 0; a != n; ++a) {
        if (gp_.atoms[a].fixed.value_or(false)) {
            derived[a] = 1;
            queue.push_back(a);
        }
    }
    std::vector<std::uint32_t> missing(gp_.rules.size(), 0);
    std::vector<std::vector<std::uint32_t>> occurs(n);
    for (std::uint32_t r = 0; r != gp_.rules.size(); ++r) {
        const auto& rec = gp_.rules[r];
        if (!rec.head) {
            continue;
        }
        bool blocked = std::any_of(rec.negBody.begin(), rec.negBody.end(),
                                   [&](AtomId b) { return state_[b].positive(); });
        if (blocked) {
            missing[r] = static_cast<std::uint32_t>(-1);
            continue;
        }
        for (auto b : rec.posBody) {
            if (!derived[b]) {
                ++missing[r];
                occurs[b].push_back(r);
            }
        }
        if (missing[r] == 0 && !derived[*rec.head]) {
            derived[*rec.head] = 1;
            queue.push_back(*rec.head);
        }
    }
    for (std::size_t q = 0; q != queue.size(); ++q) {
        for (auto r : occurs[queue[q]]) {
            if (--missing[r] == 0) {
                AtomId h = *gp_.rules[r].head;
                if (!derived[h]) {
                    derived[h] = 1;
                    queue.push_back(h);
                }
            }
        }
    }
    std::vector<AtomId> out;
    for (AtomId a = 0; a != n; ++a) {
        const auto k = gp_.atoms[a].atom.kind;
        if ((k == AtomKind::Classical || k == AtomKind::ChoiceHat) && state_[a].positive() && !derived[a]) {
            out.push_back(a);
        }
    }
    return out;
}

std::optional<GLit> Solver::pickDecision() {
    std::optional<AtomId> best;
    bool bestChoice = false;
    for (AtomId a = 0; a != state_.size(); ++a) {
        if (state_[a].assigned()) {
            continue;
        }
        const bool c = isChoice_[a];
        if (!best || (c && !bestChoice) ||
            (c == bestChoice && (activity_[a] > activity_[*best] ||
                                 (activity_[a] == activity_[*best] && rank_[a] < rank_[*best])))) {
            best       = a;
            bestChoice = c;
        }
    }
    if (!best) {
        return std::nullopt;
    }
    return GLit{*best, false};
}

void Solver::bump(const std::vector<GLit>& lits) {
    for (const auto& l : lits) {
        activity_[l.atom] += activityInc_;
        if (activity_[l.atom] > 1e100) {
            for (auto& x : activity_) {
                x *= 1e-100;
            }
            activityInc_ *= 1e-100;
        }
    }
    activityInc_ /= 0.95;
}

bool Solver::limitHit(const SolveLimits& limits, SolveReport& report) const {
    if (limits.maxConflicts && report.conflicts >= *limits.maxConflicts) {
        return true;
    }
    if (limits.maxTime) {
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (secs >= *limits.maxTime) {
            return true;
        }
    }
    return false;
}

bool Solver::handleConflict(NoGoodId violated, bool isConflict, SolveReport& report) {
    int maxDl = 0;
    for (const auto& l : nogoods_[violated].ground) {
        maxDl = std::max(maxDl, state_[l.atom].dl);
    }
    backjump(maxDl);
    if (isConflict) {
        ++report.conflicts;
    }
    if (level() == 0) {
        return false;
    }
    AnalysisResult gen;
    if (isConflict && opts_.learn) {
        gen = generaliser_.analyze(violated, view());
        report.resolutionSteps += gen.steps;
        report.witnessChecks += gen.witnessChecks;
        report.witnessViolations += gen.witnessViolations;
        report.twinMissing += gen.twinMissing ? 1 : 0;
        report.budgetExhausted += gen.budgetExhausted ? 1 : 0;
        report.classes.record(nogoods_[violated], gen);
    }
    std::vector<GLit> learned = analyzeGround(violated);
    if (recording_ && isConflict) {
        report.learnedGround.push_back(learned);
    }
    if (isConflict) {
        bump(learned);
    }
    const int dl = level();
    GLit asserting{};
    int bj = 0;
    for (const auto& l : learned) {
        const int ldl = state_[l.atom].dl;
        if (ldl == dl) {
            asserting = l;
        }
        else {
            bj = std::max(bj, ldl);
        }
    }
    NoGoodId antecedent = violated;
    if (!sameSet(learned, unique(nogoods_[violated].ground))) {
        NoGoodPair ng;
        ng.ground = learned;
        ng.kind   = NoGoodKind::Internal;
        ng.role   = NoGoodRole::Learned;
        if (!gen.ground.empty() && sameSet(gen.ground.front(), learned)) {
            ResolutionState st{gen.ground.front(), gen.nonground.front()};
            if (auto w = witnessOf(st, gp_.atoms)) {
                ng.ground    = st.omega;
                ng.nonground = std::make_shared<const std::vector<SignedLiteral>>(st.Omega);
                ng.sigma     = std::make_shared<const Substitution>(*w);
                ng.kind      = NoGoodKind::Learned;
            }
        }
        backjump(bj);
        antecedent = addNogood(std::move(ng));
    }
    else {
        backjump(bj);
    }
    ++report.backjumpDistances[dl - bj];
    assign(asserting.atom, asserting.truth ? Truth::F : Truth::T, antecedent);
    return true;
}

SolveReport Solver::solve(const SolveLimits& limits) {
    SolveReport report;
    start_ = std::chrono::steady_clock::now();
    auto finish = [&](SolveStatus st) {
        report.status       = st;
        report.propagations = propagations_;
        report.solveSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (recording_) {
            report.trace = trace_;
        }
        return report;
    };
    if (rootConflict_) {
        return finish(SolveStatus::UNSAT);
    }
    std::uint64_t restartIndex = 1, sinceRestart = 0;
    std::uint64_t steps = 0;
    while (true) {
        if (auto c = propagate()) {
            if (!handleConflict(*c, true, report)) {
                return finish(report.answerSets.empty() ? SolveStatus::UNSAT : SolveStatus::SAT);
            }
            if (limitHit(limits, report)) {
                return finish(SolveStatus::LIMIT);
            }
            if (opts_.restarts && ++sinceRestart >= 100 * luby(restartIndex)) {
                ++restartIndex;
                sinceRestart = 0;
                ++report.restarts;
                backjump(0);
            }
            continue;
        }
        if ((++steps & 255) == 0 && limits.maxTime && limitHit(limits, report)) {
            return finish(SolveStatus::LIMIT);
        }
        if (auto d = pickDecision()) {
            decide(*d);
            ++report.decisions;
            continue;
        }
        auto unfounded = unfoundedAtoms();
        if (!unfounded.empty()) {
            std::vector<bool> inU(state_.size(), false);
            for (auto a : unfounded) {
                inU[a] = true;
            }
            NoGoodPair loop;
            loop.kind = NoGoodKind::Internal;
            loop.role = NoGoodRole::Loop;
            loop.ground.push_back({unfounded.front(), true});
            for (auto a : unfounded) {
                for (auto r : headRules_[a]) {
                    const auto& rec = gp_.rules[r];
                    bool external   = std::none_of(rec.posBody.begin(), rec.posBody.end(),
                                                   [&](AtomId b) { return inU[b]; });
                    if (external) {
                        loop.ground.push_back({rec.beta, false});
                    }
                }
            }
            NoGoodId id = addNogood(std::move(loop));
            if (!handleConflict(id, true, report)) {
                return finish(report.answerSets.empty() ? SolveStatus::UNSAT : SolveStatus::SAT);
            }
            if (limitHit(limits, report)) {
                return finish(SolveStatus::LIMIT);
            }
            continue;
        }
        std::vector<Atom> model;
        for (AtomId a = 0; a != state_.size(); ++a) {
            if (gp_.atoms[a].atom.kind == AtomKind::Classical && state_[a].positive()) {
                model.push_back(gp_.atoms[a].atom);
            }
        }
        std::sort(model.begin(), model.end());
        report.answerSets.push_back(std::move(model));
        if (limits.targetAnswerSets != 0 && report.answerSets.size() >= limits.targetAnswerSets) {
            return finish(SolveStatus::SAT);
        }
        if (level() == 0) {
            return finish(SolveStatus::SAT);
        }
        NoGoodPair block;
        block.kind = NoGoodKind::Internal;
        block.role = NoGoodRole::Blocking;
        for (std::size_t k = 0; k != levelStart_.size(); ++k) {
            const AtomId a = trail_[levelStart_[k]];
            block.ground.push_back({a, state_[a].positive()});
        }
        NoGoodId id = addNogood(std::move(block));
        if (!handleConflict(id, false, report)) {
            return finish(SolveStatus::SAT);
        }
    }
}

std::string SolveReport::toJson(const GroundProgram& gp, std::size_t topK) const {
    (void)gp;
    nlohmann::ordered_json j;
    j["status"] = toString(status);
    auto& sets  = j["answer_sets"] = nlohmann::ordered_json::array();
    for (const auto& m : answerSets) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& a : m) {
            arr.push_back(a.toString());
        }
        sets.push_back(std::move(arr));
    }
    j["conflicts"]     = conflicts;
    j["decisions"]     = decisions;
    j["propagations"]  = propagations;
    j["restarts"]      = restarts;
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (const auto& [d, n] : backjumpDistances) {
        hist[std::to_string(d)] = n;
    }
    j["backjump_distances"] = hist;
    j["resolution_steps"]   = resolutionSteps;
    j["witness_checks"]     = witnessChecks;
    j["witness_violations"] = witnessViolations;
    j["twin_missing"]       = twinMissing;
    j["budget_exhausted"]   = budgetExhausted;
    j["solve_seconds"]      = solveSeconds;
    auto& cls = j["classes"] = nlohmann::ordered_json::array();
    std::size_t k = 0;
    for (const auto* c : classes.ranked()) {
        if (k++ == topK) {
            break;
        }
        nlohmann::ordered_json e;
        e["key"]        = c->key.key;
        e["violations"] = c->violations;
        if (const auto* f = c->topFirst()) {
            e["first_uip"] = f->nogood.key;
        }
        if (const auto* l = c->topLast()) {
            e["last_uip"] = l->nogood.key;
        }
        cls.push_back(std::move(e));
    }
    j["warnings"] = warnings;
    return j.dump(2);
}

SolveReport solveGround(const GroundProgram& gp, const SolveLimits& limits, const SolverOptions& opts) {
    Solver s(gp, opts);
    return s.solve(limits);
}

} // namespace nglearn
