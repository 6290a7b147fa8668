#include <nglearn/emitter.hpp>
#include <nglearn/substitution.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace nglearn {
namespace {

std::set<std::string> varsOf(const Atom& a) {
    std::vector<std::string> v;
    a.collectVariables(v);
    return {v.begin(), v.end()};
}

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Variables bound by literals that are, or will become, positive classical
// literals once replacement is finished.
std::set<std::string> bindingVars(const std::vector<SignedLiteral>& ng) {
    std::set<std::string> out;
    for (const auto& l : ng) {
        const bool binds = (l.truth && (l.atom.kind == AtomKind::Classical || l.atom.kind == AtomKind::BodyRep)) ||
                           (!l.truth && l.atom.kind == AtomKind::ChoiceHat);
        if (binds) {
            auto v = varsOf(l.atom);
            out.insert(v.begin(), v.end());
        }
    }
    return out;
}

bool bindsItself(const SignedLiteral& l) {
    return (l.truth && l.atom.kind == AtomKind::Classical) || (!l.truth && l.atom.kind == AtomKind::ChoiceHat);
}

Substitution ruleInstance(const Rule& r, const Atom& beta) {
    const auto vars = r.variables();
    if (vars.size() != beta.args.size()) {
        throw EmitError("body atom " + beta.toString() + " does not match rule " + std::to_string(r.id));
    }
    Substitution s;
    for (std::size_t i = 0; i != vars.size(); ++i) {
        s.set(vars[i], beta.args[i]);
    }
    return s;
}

bool singleRuled(const Program& p, const Rule& r) {
    if (!r.head || r.head->kind != AtomKind::Classical) {
        return false;
    }
    std::size_t n = 0;
    for (const auto& q : p.rules) {
        if (q.head && q.head->kind == r.head->kind && q.head->signature() == r.head->signature()) {
            ++n;
        }
    }
    return n == 1;
}

void dedupe(std::vector<SignedLiteral>& ng) {
    std::vector<SignedLiteral> out;
    for (auto& l : ng) {
        if (std::find(out.begin(), out.end(), l) == out.end()) {
            out.push_back(std::move(l));
        }
    }
    ng = std::move(out);
}

} // namespace

bool isSafe(const std::vector<SignedLiteral>& ng) {
    std::set<std::string> bound;
    for (const auto& l : ng) {
        if (l.truth && l.atom.kind == AtomKind::Classical) {
            auto v = varsOf(l.atom);
            bound.insert(v.begin(), v.end());
        }
    }
    for (const auto& l : ng) {
        if (!subset(varsOf(l.atom), bound)) {
            return false;
        }
    }
    return true;
}

LearnedConstraint replaceInternalLiterals(const std::vector<SignedLiteral>& nogood, const Program& translated,
                                          const EmitOptions& opts) {
    std::vector<SignedLiteral> work = nogood;
    for (std::size_t guard = 0;; ++guard) {
        if (guard > 10'000) {
            throw EmitError("internal literal replacement does not terminate");
        }
        auto it = std::find_if(work.begin(), work.end(), [](const SignedLiteral& l) { return l.atom.isInternal(); });
        if (it == work.end()) {
            break;
        }
        const SignedLiteral lit = *it;
        std::vector<SignedLiteral> rest(work.begin(), it);
        rest.insert(rest.end(), std::next(it), work.end());

        if (lit.atom.kind == AtomKind::ChoiceHat) {
            rest.push_back({lit.atom.unhat(), !lit.truth});
            work = std::move(rest);
            dedupe(work);
            continue;
        }

        const auto rid = static_cast<std::size_t>(lit.atom.ruleId);
        if (lit.atom.ruleId < 0 || rid >= translated.rules.size()) {
            throw EmitError("irreplaceable internal literal " + lit.toString() + ": unknown rule");
        }
        const Rule& r      = translated.rules[rid];
        const Substitution theta = ruleInstance(r, lit.atom);

        if (lit.truth) {
            std::set<std::string> ruleVars;
            for (const auto& v : r.variables()) {
                ruleVars.insert(v);
            }
            if (opts.preferHead && singleRuled(translated, r) && subset(ruleVars, varsOf(*r.head))) {
                rest.push_back({theta.apply(*r.head), true});
            }
            else {
                for (const auto& l : toNogood(r.body)) {
                    rest.push_back(theta.apply(l));
                }
            }
            work = std::move(rest);
            dedupe(work);
            continue;
        }

        // F β: any literal implying the body is false will do.
        std::vector<SignedLiteral> options;
        if (r.head) {
            options.push_back({theta.apply(*r.head), false});
        }
        for (const auto& l : r.body) {
            options.push_back({theta.apply(l.atom), l.naf});
        }
        const auto bound = bindingVars(rest);
        auto pick = std::find_if(options.begin(), options.end(), [&](const SignedLiteral& o) {
            return bindsItself(o) || subset(varsOf(o.atom), bound);
        });
        if (pick == options.end()) {
            throw EmitError("irreplaceable internal literal " + lit.toString());
        }
        rest.push_back(*pick);
        work = std::move(rest);
        dedupe(work);
    }

    LearnedConstraint c;
    const auto canon = canonicalise(work);
    c.body           = canon.literals;
    c.quarantined    = !isSafe(c.body);
    if (c.quarantined) {
        c.notes.push_back("unsafe after replacement");
    }
    for (const auto& l : c.body) {
        if (l.atom.kind == AtomKind::Builtin && !l.truth) {
            c.notes.push_back("negated builtin " + l.atom.toString());
        }
    }
    return c;
}

ConstraintReport rankAndEmit(const ClassTable& classes, std::size_t topK, const Program& translated,
                             UipSelection sel, const EmitOptions& opts) {
    ConstraintReport rep;
    std::set<std::string> seen;
    std::ostringstream out;
    std::size_t taken = 0;
    for (const ConflictClass* cls : classes.ranked()) {
        if (taken == topK) {
            break;
        }
        ++taken;
        std::vector<std::pair<const LearnedEntry*, std::string>> picks;
        if (sel != UipSelection::Last) {
            picks.emplace_back(cls->topFirst(), "first");
        }
        if (sel != UipSelection::First) {
            picks.emplace_back(cls->topLast(), "last");
        }
        if (sel == UipSelection::All) {
            for (const auto& e : cls->all) {
                picks.emplace_back(&e, std::to_string(e.uipIndex));
            }
        }
        for (const auto& [entry, label] : picks) {
            if (!entry) {
                continue;
            }
            LearnedConstraint c;
            try {
                c = replaceInternalLiterals(entry->nogood.literals, translated, opts);
            }
            catch (const EmitError& e) {
                rep.diagnostics.push_back(std::string(e.what()) + " in " + entry->nogood.key);
                continue;
            }
            c.uip        = label;
            c.classKey   = cls->key.key;
            c.violations = cls->violations;
            if (c.quarantined) {
                rep.diagnostics.push_back("quarantined unsafe constraint " + printNogood(c.body));
                continue;
            }
            const auto key = canonicalise(c.body).key;
            if (!seen.insert(key).second) {
                continue;
            }
            out << "% class violations: " << c.violations << ", uip: " << c.uip << "\n";
            for (const auto& n : c.notes) {
                out << "% note: " << n << "\n";
            }
            out << c.text() << "\n";
            rep.constraints.push_back(std::move(c));
        }
    }
    rep.text = out.str();
    return rep;
}

Program augmentEncoding(const Program& p, const std::vector<std::vector<SignedLiteral>>& constraints) {
    Program out = p;
    for (const auto& ng : constraints) {
        Rule r;
        r.body = toBody(ng);
        out.rules.push_back(std::move(r));
    }
    out.renumber();
    return out;
}

Program augmentEncoding(const Program& p, const std::vector<LearnedConstraint>& constraints) {
    std::vector<std::vector<SignedLiteral>> bodies;
    for (const auto& c : constraints) {
        bodies.push_back(c.body);
    }
    return augmentEncoding(p, bodies);
}

} // namespace nglearn
