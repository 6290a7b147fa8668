#include <nglearn/term.hpp>

#include <algorithm>

namespace nglearn {

Term Term::variable(std::string name) {
    Term t;
    t.kind_ = Kind::Variable;
    t.name_ = std::move(name);
    return t;
}

Term Term::symbol(std::string name) {
    Term t;
    t.kind_ = Kind::Symbol;
    t.name_ = std::move(name);
    return t;
}

Term Term::integer(std::int64_t value) {
    Term t;
    t.kind_  = Kind::Integer;
    t.value_ = value;
    return t;
}

Term Term::function(std::string name, std::vector<Term> args) {
    if (args.empty()) {
        return symbol(std::move(name));
    }
    Term t;
    t.kind_ = Kind::Function;
    t.name_ = std::move(name);
    t.args_ = std::move(args);
    return t;
}

bool Term::isGround() const {
    switch (kind_) {
        case Kind::Variable: return false;
        case Kind::Function:
            return std::all_of(args_.begin(), args_.end(), [](const Term& a) { return a.isGround(); });
        default: return true;
    }
}

bool Term::contains(const std::string& var) const {
    if (kind_ == Kind::Variable) {
        return name_ == var;
    }
    return std::any_of(args_.begin(), args_.end(), [&](const Term& a) { return a.contains(var); });
}

void Term::collectVariables(std::vector<std::string>& out) const {
    if (kind_ == Kind::Variable) {
        if (std::find(out.begin(), out.end(), name_) == out.end()) {
            out.push_back(name_);
        }
        return;
    }
    for (const auto& a : args_) {
        a.collectVariables(out);
    }
}

std::string Term::toString() const {
    switch (kind_) {
        case Kind::Variable:
        case Kind::Symbol: return name_;
        case Kind::Integer: return std::to_string(value_);
        case Kind::Function: {
            std::string s = name_ + "(";
            for (std::size_t i = 0; i != args_.size(); ++i) {
                if (i) {
                    s += ",";
                }
                s += args_[i].toString();
            }
            return s + ")";
        }
    }
    return {};
}

namespace {
int rank(Term::Kind k) {
    switch (k) {
        case Term::Kind::Variable: return 0;
        case Term::Kind::Integer: return 1;
        default: return 2; // symbols are 0-ary functions
    }
}
} // namespace

std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (auto c = rank(a.kind_) <=> rank(b.kind_); c != 0) {
        return c;
    }
    switch (rank(a.kind_)) {
        case 0: return a.name_ <=> b.name_;
        case 1: return a.value_ <=> b.value_;
        default: break;
    }
    if (auto c = a.args_.size() <=> b.args_.size(); c != 0) {
        return c;
    }
    if (auto c = a.name_ <=> b.name_; c != 0) {
        return c;
    }
    for (std::size_t i = 0; i != a.args_.size(); ++i) {
        if (auto c = a.args_[i] <=> b.args_[i]; c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

} // namespace nglearn
