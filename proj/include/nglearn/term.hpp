#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace nglearn {

// A first-order term: variable, symbolic constant, integer, or function term.
// Ground terms are totally ordered: integers before symbols and functions,
// symbols and functions by (arity, name, arguments).
class Term {
public:
    enum class Kind : std::uint8_t { Variable, Integer, Symbol, Function };

    Term() = default;

    static Term variable(std::string name);
    static Term symbol(std::string name);
    static Term integer(std::int64_t value);
    static Term function(std::string name, std::vector<Term> args);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool isVariable() const { return kind_ == Kind::Variable; }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] std::int64_t value() const { return value_; }
    [[nodiscard]] const std::vector<Term>& args() const { return args_; }

    [[nodiscard]] bool isGround() const;
    [[nodiscard]] bool contains(const std::string& var) const;
    // Appends variables not yet in `out`, in first-occurrence order.
    void collectVariables(std::vector<std::string>& out) const;

    [[nodiscard]] std::string toString() const;

    friend std::strong_ordering operator<=>(const Term& a, const Term& b);
    friend bool operator==(const Term& a, const Term& b) { return (a <=> b) == 0; }

private:
    Kind kind_{Kind::Symbol};
    std::string name_;
    std::int64_t value_{0};
    std::vector<Term> args_;
};

} // namespace nglearn
