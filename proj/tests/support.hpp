#pragma once

#include <nglearn/oracle.hpp>
#include <nglearn/parser.hpp>
#include <nglearn/pipeline.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

namespace testing {

inline nglearn::Program encoding(const std::string& name) {
    return nglearn::loadEncoding(nglearn::readFile(std::string(NGLEARN_SOURCE_DIR) + "/encodings/" + name));
}

inline std::vector<nglearn::Atom> facts(const std::string& text) {
    return nglearn::parseInstance("inline", text).facts;
}

using ModelSet = std::set<nglearn::Interpretation>;

inline ModelSet solverModels(const nglearn::Program& p, const std::vector<nglearn::Atom>& f,
                             nglearn::SolverOptions opts = {}) {
    const auto gp = nglearn::groundProgram(nglearn::translateChoiceRules(p), f);
    nglearn::SolveLimits limits;
    limits.targetAnswerSets = 0;
    const auto rep = nglearn::solveGround(gp, limits, opts);
    ModelSet out;
    for (const auto& m : rep.answerSets) {
        out.insert(nglearn::Interpretation(m.begin(), m.end()));
    }
    return out;
}

inline ModelSet oracleModels(const nglearn::Program& p, const std::vector<nglearn::Atom>& f) {
    const auto ms = nglearn::enumerateStableModels(p, f);
    return {ms.begin(), ms.end()};
}

// Random safe normal program over p/1, q/1, r/1, s/0, t/0 with domain d/1
// (two constants) and an occasional choice rule or constraint. The guessed
// part stays well below the oracle's 24-atom cap.
inline std::string randomProgram(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
    const char* unary[] = {"p", "q", "r"};
    const char* nullary[] = {"s", "t"};
    std::string text = "d(1). d(2).\n";
    auto lit = [&](bool withVar) {
        std::string l = pick(3) == 0 ? "not " : "";
        if (withVar && pick(3) != 0) {
            return l + unary[pick(3)] + "(X)";
        }
        return l + nullary[pick(2)];
    };
    const int rules = 2 + pick(5);
    for (int i = 0; i != rules; ++i) {
        const int shape = pick(10);
        std::string body = "d(X)";
        const int n = pick(3);
        for (int k = 0; k != n; ++k) {
            body += ", " + lit(true);
        }
        if (shape == 0) {
            text += "{ " + std::string(unary[pick(3)]) + "(X) } :- " + body + ".\n";
        }
        else if (shape == 1) {
            text += ":- " + body + ".\n";
        }
        else if (shape == 2) {
            std::string b = lit(false);
            text += std::string(nullary[pick(2)]) + " :- " + b + ".\n";
        }
        else {
            text += std::string(unary[pick(3)]) + "(X) :- " + body + ".\n";
        }
    }
    return text;
}

} // namespace testing
