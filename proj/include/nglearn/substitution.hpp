#pragma once

#include <nglearn/program.hpp>

#include <map>
#include <optional>
#include <string>

namespace nglearn {

// Mapping from variable names to terms, kept idempotent: no variable in the
// domain occurs in any bound term.
class Substitution {
public:
    [[nodiscard]] const Term* find(const std::string& var) const;
    // Binds var to t (t must already be normalised under *this and not contain var).
    void bind(const std::string& var, const Term& t);
    // Raw insert without normalisation; apply() stays simultaneous, so this
    // is suitable for renamings and for matching against ground targets.
    void set(const std::string& var, const Term& t) { map_[var] = t; }

    [[nodiscard]] Term apply(const Term& t) const;
    [[nodiscard]] Atom apply(const Atom& a) const;
    [[nodiscard]] SignedLiteral apply(const SignedLiteral& l) const;
    [[nodiscard]] Literal apply(const Literal& l) const;

    // this ∘ other: applies *this first, then other.
    [[nodiscard]] Substitution then(const Substitution& other) const;

    [[nodiscard]] bool empty() const { return map_.empty(); }
    [[nodiscard]] std::size_t size() const { return map_.size(); }
    [[nodiscard]] const std::map<std::string, Term>& bindings() const { return map_; }
    // True if every variable in `vars` is mapped to a ground term.
    [[nodiscard]] bool isGroundingFor(const std::vector<std::string>& vars) const;
    [[nodiscard]] std::string toString() const;

    friend bool operator==(const Substitution&, const Substitution&) = default;

private:
    std::map<std::string, Term> map_;
};

// Extends `s` with a most general unifier of a·s and b·s (occurs check on).
// On failure `s` is left in an unspecified state.
bool unifyTerms(const Term& a, const Term& b, Substitution& s);
bool unifyAtoms(const Atom& a, const Atom& b, Substitution& s);

// Most general unifier of two atoms, or nullopt on clash / occurs violation.
std::optional<Substitution> unify(const Atom& a, const Atom& b);

// One-way matching: extends `s` so that pattern·s == target. Variables of
// `target` are treated as constants.
bool match(const Term& pattern, const Term& target, Substitution& s);
bool match(const Atom& pattern, const Atom& target, Substitution& s);

} // namespace nglearn
