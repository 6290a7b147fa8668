#include <nglearn/substitution.hpp>

namespace nglearn {

const Term* Substitution::find(const std::string& var) const {
    auto it = map_.find(var);
    return it == map_.end() ? nullptr : &it->second;
}

namespace {
Term replaceVar(const Term& t, const std::string& var, const Term& by) {
    if (t.isVariable()) {
        return t.name() == var ? by : t;
    }
    if (t.kind() != Term::Kind::Function) {
        return t;
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) {
        args.push_back(replaceVar(a, var, by));
    }
    return Term::function(t.name(), std::move(args));
}
} // namespace

void Substitution::bind(const std::string& var, const Term& t) {
    for (auto& [k, v] : map_) {
        if (v.contains(var)) {
            v = replaceVar(v, var, t);
        }
    }
    map_[var] = t;
}

Term Substitution::apply(const Term& t) const {
    switch (t.kind()) {
        case Term::Kind::Variable: {
            const Term* b = find(t.name());
            return b ? *b : t;
        }
        case Term::Kind::Function: {
            std::vector<Term> args;
            args.reserve(t.args().size());
            for (const auto& a : t.args()) {
                args.push_back(apply(a));
            }
            return Term::function(t.name(), std::move(args));
        }
        default: return t;
    }
}

Atom Substitution::apply(const Atom& a) const {
    Atom out = a;
    for (auto& t : out.args) {
        t = apply(t);
    }
    return out;
}

SignedLiteral Substitution::apply(const SignedLiteral& l) const {
    return {apply(l.atom), l.truth};
}

Literal Substitution::apply(const Literal& l) const {
    return {apply(l.atom), l.naf};
}

Substitution Substitution::then(const Substitution& other) const {
    Substitution out;
    for (const auto& [k, v] : map_) {
        out.map_[k] = other.apply(v);
    }
    for (const auto& [k, v] : other.map_) {
        out.map_.try_emplace(k, v);
    }
    // drop identity bindings X -> X
    for (auto it = out.map_.begin(); it != out.map_.end();) {
        if (it->second.isVariable() && it->second.name() == it->first) {
            it = out.map_.erase(it);
        }
        else {
            ++it;
        }
    }
    return out;
}

bool Substitution::isGroundingFor(const std::vector<std::string>& vars) const {
    for (const auto& v : vars) {
        const Term* t = find(v);
        if (!t || !t->isGround()) {
            return false;
        }
    }
    return true;
}

std::string Substitution::toString() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [k, v] : map_) {
        if (!first) {
            s += ", ";
        }
        first = false;
        s += k + "->" + v.toString();
    }
    return s + "}";
}

bool unifyTerms(const Term& a0, const Term& b0, Substitution& s) {
    Term a = s.apply(a0);
    Term b = s.apply(b0);
    if (a == b) {
        return true;
    }
    if (!a.isVariable() && b.isVariable()) {
        std::swap(a, b);
    }
    if (a.isVariable()) {
        if (b.contains(a.name())) {
            return false;
        }
        s.bind(a.name(), b);
        return true;
    }
    if (a.kind() != Term::Kind::Function || b.kind() != Term::Kind::Function || a.name() != b.name() ||
        a.args().size() != b.args().size()) {
        return false;
    }
    for (std::size_t i = 0; i != a.args().size(); ++i) {
        if (!unifyTerms(a.args()[i], b.args()[i], s)) {
            return false;
        }
    }
    return true;
}

bool unifyAtoms(const Atom& a, const Atom& b, Substitution& s) {
    if (a.kind != b.kind || a.predicate != b.predicate || a.args.size() != b.args.size() || a.ruleId != b.ruleId) {
        return false;
    }
    for (std::size_t i = 0; i != a.args.size(); ++i) {
        if (!unifyTerms(a.args[i], b.args[i], s)) {
            return false;
        }
    }
    return true;
}

std::optional<Substitution> unify(const Atom& a, const Atom& b) {
    Substitution s;
    if (!unifyAtoms(a, b, s)) {
        return std::nullopt;
    }
    return s;
}

bool match(const Term& pattern, const Term& target, Substitution& s) {
    if (pattern.isVariable()) {
        if (const Term* b = s.find(pattern.name())) {
            return *b == target;
        }
        s.set(pattern.name(), target);
        return true;
    }
    if (pattern.kind() != target.kind()) {
        return false;
    }
    if (pattern.kind() != Term::Kind::Function) {
        return pattern == target;
    }
    if (pattern.name() != target.name() || pattern.args().size() != target.args().size()) {
        return false;
    }
    for (std::size_t i = 0; i != pattern.args().size(); ++i) {
        if (!match(pattern.args()[i], target.args()[i], s)) {
            return false;
        }
    }
    return true;
}

bool match(const Atom& pattern, const Atom& target, Substitution& s) {
    if (pattern.kind != target.kind || pattern.predicate != target.predicate ||
        pattern.args.size() != target.args.size() || pattern.ruleId != target.ruleId) {
        return false;
    }
    for (std::size_t i = 0; i != pattern.args.size(); ++i) {
        if (!match(pattern.args[i], target.args[i], s)) {
            return false;
        }
    }
    return true;
}

} // namespace nglearn
