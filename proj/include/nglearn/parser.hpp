#pragma once

#include <nglearn/program.hpp>

#include <string_view>
#include <vector>

namespace nglearn {

// Parses the supported ASP-Core-2 subset: facts, normal rules, constraints,
// default negation, comparisons, and bound-free choice rules with element
// conditions. Choice rules are returned untranslated. Input predicates come
// from `inputPreds` and from "% #input p/n." comment directives.
//
// Throws ParseError for syntax errors and unsafe rules, and ParseError with an
// "unsupported construct" message for aggregates, weak constraints,
// disjunction, strong negation, intervals, and arithmetic.
Program parseProgram(std::string_view text, const std::vector<PredicateSig>& inputPreds = {});

// Parses "name/arity".
PredicateSig parsePredicateSig(std::string_view text);

// Parses a single constraint ":- body." into its body literals.
std::vector<Literal> parseConstraint(std::string_view text);

} // namespace nglearn
