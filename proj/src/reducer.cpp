#include <nglearn/oracle.hpp>
#include <nglearn/reducer.hpp>
#include <nglearn/substitution.hpp>

#include <algorithm>
#include <cstdio>
#include <map>

namespace nglearn {
namespace {

// Strict or non-strict "a before b" requirement between two terms.
struct OrderEdge {
    Term lo;
    Term hi;
};

std::optional<OrderEdge> orderEdge(const SignedLiteral& l) {
    const auto& op = l.atom.predicate;
    const Term& a  = l.atom.args[0];
    const Term& b  = l.atom.args[1];
    const bool forward = l.truth ? (op == "<" || op == "<=") : (op == ">" || op == ">=");
    const bool reverse = l.truth ? (op == ">" || op == ">=") : (op == "<" || op == "<=");
    if (forward) {
        return OrderEdge{a, b};
    }
    if (reverse) {
        return OrderEdge{b, a};
    }
    return std::nullopt;
}

bool isEquality(const SignedLiteral& l) {
    return (l.truth && l.atom.predicate == "=") || (!l.truth && l.atom.predicate == "!=");
}

std::string uniquePrefix(const std::set<Term>& universe, std::string p) {
    auto clash = [&] {
        return std::any_of(universe.begin(), universe.end(), [&](const Term& t) {
            return t.kind() == Term::Kind::Symbol && t.name().rfind(p, 0) == 0;
        });
    };
    while (clash()) {
        p += "k";
    }
    return p;
}

std::set<Interpretation> project(const std::vector<Interpretation>& ms, const std::set<PredicateSig>& proj) {
    std::set<Interpretation> out;
    for (const auto& m : ms) {
        Interpretation q;
        for (const auto& a : m) {
            if (proj.empty() || proj.count(a.signature())) {
                q.insert(a);
            }
        }
        out.insert(std::move(q));
    }
    return out;
}

} // namespace

const char* toString(SkolemVerdict v) {
    switch (v) {
    case SkolemVerdict::Unsat: return "unsat";
    case SkolemVerdict::Sat: return "sat";
    case SkolemVerdict::Limit: return "limit";
    case SkolemVerdict::NotApplicable: return "not-applicable";
    }
    return "?";
}

SkolemResult skolemTest(const std::vector<SignedLiteral>& bodyIn, const Program& encoding,
                        const ReduceOptions& opts) {
    std::vector<SignedLiteral> body = bodyIn;

    Substitution eq;
    for (const auto& l : body) {
        if (l.atom.kind == AtomKind::Builtin && isEquality(l)) {
            if (!unifyTerms(l.atom.args[0], l.atom.args[1], eq)) {
                return {SkolemVerdict::NotApplicable, "equality cannot hold"};
            }
        }
    }
    for (auto& l : body) {
        l = eq.apply(l);
    }

    std::vector<std::string> vars;
    for (const auto& l : body) {
        l.atom.collectVariables(vars);
    }
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i != vars.size(); ++i) {
        index[vars[i]] = i;
    }
    std::vector<std::vector<std::size_t>> succ(vars.size());
    std::vector<std::size_t> indeg(vars.size());
    for (const auto& l : body) {
        if (l.atom.kind != AtomKind::Builtin) {
            continue;
        }
        auto e = orderEdge(l);
        if (!e || !e->lo.isVariable() || !e->hi.isVariable()) {
            continue;
        }
        const auto a = index.at(e->lo.name());
        const auto b = index.at(e->hi.name());
        succ[a].push_back(b);
        ++indeg[b];
    }
    std::vector<std::size_t> order;
    std::vector<bool> done(vars.size());
    while (order.size() != vars.size()) {
        std::size_t next = vars.size();
        for (std::size_t i = 0; i != vars.size(); ++i) {
            if (!done[i] && indeg[i] == 0) {
                next = i;
                break;
            }
        }
        if (next == vars.size()) {
            return {SkolemVerdict::NotApplicable, "cyclic order between variables"};
        }
        done[next] = true;
        order.push_back(next);
        for (auto s : succ[next]) {
            --indeg[s];
        }
    }

    const auto encUniverse = encoding.universe();
    const std::string prefix = uniquePrefix(encUniverse, "sk");
    auto constant = [&](std::size_t k) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%03zu", k);
        return Term::symbol(prefix + buf);
    };
    Substitution sk;
    for (std::size_t k = 0; k != order.size(); ++k) {
        sk.set(vars[order[k]], constant(k));
    }
    std::set<Term> universe = encUniverse;
    for (std::size_t k = 0; k != order.size() + opts.extraConstants; ++k) {
        universe.insert(constant(k));
    }

    Program test = encoding;
    std::string dom = "skolem_dom";
    const auto preds = encoding.predicates();
    while (std::any_of(preds.begin(), preds.end(), [&](const PredicateSig& s) { return s.name == dom; })) {
        dom += "_";
    }
    for (const auto& sig : encoding.inputPredicates) {
        Rule r;
        r.isChoice = true;
        std::vector<Term> args;
        for (int i = 0; i != sig.arity; ++i) {
            Term x = Term::variable("X" + std::to_string(i + 1));
            args.push_back(x);
            r.body.push_back(Literal{Atom::classical(dom, {x}), false});
        }
        r.choice.push_back(ChoiceElement{Atom::classical(sig.name, args), {}});
        test.rules.push_back(std::move(r));
    }
    for (const auto& raw : body) {
        const SignedLiteral l = sk.apply(raw);
        if (l.atom.kind == AtomKind::Builtin) {
            if (!l.atom.isGround() || evalBuiltin(l.atom) != l.truth) {
                return {SkolemVerdict::NotApplicable, "builtin " + l.toString() + " cannot be satisfied"};
            }
            continue;
        }
        if (l.atom.isInternal()) {
            return {SkolemVerdict::NotApplicable, "internal atom present"};
        }
        Rule r;
        r.body.push_back(Literal{l.atom, l.truth});
        test.rules.push_back(std::move(r));
    }
    test.renumber();

    std::vector<Atom> facts;
    for (const auto& u : universe) {
        facts.push_back(Atom::classical(dom, {u}));
    }
    try {
        const Program tr = translateChoiceRules(test);
        GroundOptions go;
        go.maxGroundRules      = opts.skolemGroundRules;
        const GroundProgram gp = groundProgram(tr, facts, go);
        SolveLimits limits;
        limits.targetAnswerSets = 1;
        limits.maxConflicts     = opts.skolemConflicts;
        limits.maxTime          = opts.skolemSeconds;
        const SolveReport rep = solveGround(gp, limits);
        switch (rep.status) {
        case SolveStatus::UNSAT: return {SkolemVerdict::Unsat, ""};
        case SolveStatus::SAT: return {SkolemVerdict::Sat, "answer set found"};
        case SolveStatus::LIMIT: return {SkolemVerdict::Limit, "solver limit"};
        }
    }
    catch (const GroundingError& e) {
        return {SkolemVerdict::Limit, e.what()};
    }
    catch (const Error& e) {
        return {SkolemVerdict::NotApplicable, e.what()};
    }
    return {};
}

ReductionResult reduceConstraint(const LearnedConstraint& c, const Program& encoding, const OracleBattery& battery,
                                 const ReduceOptions& opts) {
    ReductionResult res;
    res.constraint = c;

    // Models of the encoding per battery instance; nullopt when too large.
    std::vector<std::optional<std::set<Interpretation>>> base;
    for (const auto& inst : battery.instances) {
        try {
            base.emplace_back(project(enumerateStableModels(encoding, inst, battery.atomCap), battery.projection));
        }
        catch (const OracleError&) {
            base.emplace_back(std::nullopt);
        }
    }

    // Literals whose predicate occurs most often in the body are tried first.
    std::vector<SignedLiteral> current = c.body;
    std::map<std::string, std::size_t> occurrences;
    for (const auto& l : current) {
        ++occurrences[l.atom.predicate];
    }
    std::vector<SignedLiteral> order = current;
    std::stable_sort(order.begin(), order.end(), [&](const SignedLiteral& a, const SignedLiteral& b) {
        return occurrences[a.atom.predicate] > occurrences[b.atom.predicate];
    });

    // Passes over the remaining literals until one pass drops nothing.
    std::size_t validations = 0;
    bool changed = true;
    while (changed && !res.partial) {
        changed = false;
        for (const auto& lit : order) {
            auto pos = std::find(current.begin(), current.end(), lit);
            if (pos == current.end()) {
                continue;
            }
            std::vector<SignedLiteral> cand = current;
            cand.erase(cand.begin() + (pos - current.begin()));
            if (cand.empty() || !isSafe(cand)) {
                continue;
            }
            if (validations == opts.maxValidations) {
                res.partial = true;
                break;
            }
            ++validations;
            ReductionStep step;
            step.candidate = printConstraint(cand);
            step.dropped   = lit.toString();
            step.skolem    = skolemTest(cand, encoding, opts).verdict;
            if (step.skolem == SkolemVerdict::Unsat) {
                step.oracleChecked    = true;
                step.oracleEquivalent = true;
                const Program aug     = augmentEncoding(encoding, std::vector<std::vector<SignedLiteral>>{cand});
                for (std::size_t k = 0; k != battery.instances.size() && step.oracleEquivalent; ++k) {
                    if (!base[k]) {
                        continue;
                    }
                    try {
                        const auto m = project(enumerateStableModels(aug, battery.instances[k], battery.atomCap),
                                               battery.projection);
                        ++step.oracleInstances;
                        step.oracleEquivalent = (m == *base[k]);
                    }
                    catch (const OracleError&) {
                    }
                }
                if (!battery.instances.empty() && step.oracleInstances == 0) {
                    step.oracleEquivalent = false;
                }
            }
            step.accepted = step.skolem == SkolemVerdict::Unsat && step.oracleEquivalent;
            res.log.push_back(step);
            if (step.accepted) {
                res.dropped.push_back(lit);
                current = std::move(cand);
                changed = true;
            }
        }
    }
    if (!res.dropped.empty()) {
        current = canonicalise(current).literals;
    }
    res.constraint.body    = current;
    res.constraint.partial = res.partial;
    return res;
}

} // namespace nglearn
