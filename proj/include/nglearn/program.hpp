#pragma once

#include <nglearn/term.hpp>

#include <compare>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nglearn {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column);
    [[nodiscard]] int line() const { return line_; }
    [[nodiscard]] int column() const { return column_; }

private:
    int line_;
    int column_;
};

enum class AtomKind : std::uint8_t { Classical, Builtin, BodyRep, ChoiceHat };

struct PredicateSig {
    std::string name;
    int arity{0};
    friend auto operator<=>(const PredicateSig&, const PredicateSig&) = default;
    [[nodiscard]] std::string toString() const { return name + "/" + std::to_string(arity); }
};

// Classical atom p(t1,...,tn), builtin comparison (predicate is the operator),
// body-representing atom of rule `ruleId` (args list vars of the rule), or the
// hat complement of a classical atom introduced by choice translation (same
// predicate and args as the wrapped atom).
struct Atom {
    AtomKind kind{AtomKind::Classical};
    std::string predicate;
    std::vector<Term> args;
    int ruleId{-1};

    static Atom classical(std::string pred, std::vector<Term> args = {});
    static Atom builtin(std::string op, Term lhs, Term rhs);
    static Atom bodyRep(int ruleId, std::vector<Term> args);
    static Atom hat(const Atom& wrapped);

    [[nodiscard]] int arity() const { return static_cast<int>(args.size()); }
    [[nodiscard]] PredicateSig signature() const { return {predicate, arity()}; }
    [[nodiscard]] bool isGround() const;
    [[nodiscard]] bool isInternal() const { return kind == AtomKind::BodyRep || kind == AtomKind::ChoiceHat; }
    // The classical atom a for a hat atom â.
    [[nodiscard]] Atom unhat() const;
    void collectVariables(std::vector<std::string>& out) const;
    [[nodiscard]] std::string toString() const;

    friend auto operator<=>(const Atom&, const Atom&) = default;
    friend bool operator==(const Atom&, const Atom&) = default;
};

bool isComparisonOperator(const std::string& op);
// Evaluates a ground builtin atom.
bool evalBuiltin(const Atom& a);

// Body literal of a rule: atom or `not atom`.
struct Literal {
    Atom atom;
    bool naf{false};
    [[nodiscard]] std::string toString() const;
    friend auto operator<=>(const Literal&, const Literal&) = default;
    friend bool operator==(const Literal&, const Literal&) = default;
};

// Boolean signed literal of a nogood: T atom (truth=true) or F atom.
struct SignedLiteral {
    Atom atom;
    bool truth{true};
    [[nodiscard]] SignedLiteral complement() const { return {atom, !truth}; }
    [[nodiscard]] std::string toString() const;
    friend auto operator<=>(const SignedLiteral&, const SignedLiteral&) = default;
    friend bool operator==(const SignedLiteral&, const SignedLiteral&) = default;
};

struct ChoiceElement {
    Atom atom;
    std::vector<Literal> condition;
    friend bool operator==(const ChoiceElement&, const ChoiceElement&) = default;
};

struct Rule {
    int id{0};
    std::optional<Atom> head;
    std::vector<Literal> body;
    std::vector<ChoiceElement> choice; // non-empty only for untranslated choice rules
    bool isChoice{false};

    [[nodiscard]] bool isConstraint() const { return !head && !isChoice; }
    [[nodiscard]] bool isFact() const { return head && !isChoice && body.empty(); }
    // vars(r) in first-occurrence order: head, then body.
    [[nodiscard]] std::vector<std::string> variables() const;
    [[nodiscard]] std::string toString() const;
    friend bool operator==(const Rule& a, const Rule& b) {
        return a.head == b.head && a.body == b.body && a.choice == b.choice && a.isChoice == b.isChoice;
    }
};

struct Program {
    std::vector<Rule> rules;
    std::set<PredicateSig> inputPredicates;

    [[nodiscard]] std::set<Term> universe() const;
    [[nodiscard]] std::size_t choiceElementCount() const;
    [[nodiscard]] std::size_t choiceRuleCount() const;
    // Predicates occurring anywhere in the program (heads, bodies, choices).
    [[nodiscard]] std::set<PredicateSig> predicates() const;
    [[nodiscard]] std::set<PredicateSig> headPredicates() const;
    // Throws if a declared input predicate occurs in a head.
    void checkInputPredicates() const;
    void renumber();
    void append(const Program& other);
    [[nodiscard]] std::string toString() const;
};

// Replaces every choice rule with n elements by 2n normal rules
// a :- body, cond, not â.   â :- body, cond, not a.
Program translateChoiceRules(const Program& p);

// Heads of ground bodiless rules.
std::vector<Atom> factsOf(const Program& p);

} // namespace nglearn
