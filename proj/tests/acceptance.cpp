// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "support.hpp"

#include <nglearn/generators.hpp>
#include <nglearn/oracle.hpp>
#include <nglearn/parser.hpp>
#include <nglearn/pipeline.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

using namespace nglearn;

namespace {

// Pinned thresholds and settings.
constexpr double kWitnessSeconds      = 120;
constexpr std::uint64_t kWitnessMinConflicts = 1000;
constexpr double kHcpSeconds          = 10;
constexpr double kReduceSeconds       = 60;
constexpr std::size_t kBatteryPerDomain = 50;
constexpr double kSpeedupShare        = 0.80;
constexpr double kSpeedupSeconds      = 600;
constexpr std::size_t kRandomPrograms = 100;

// Criterion 2: HCP with 2 persons, 2 things each, 2 cabinets, 2 rooms.
const HcpParams kHcpInstance{2, 2, 2, 2, 1};
constexpr std::uint64_t kHcpSolverSeed = 1;
constexpr std::uint64_t kHcpConflicts  = 50;

// Criterion 5: learn on the length-5 unsatisfiable chain, then re-solve
// lengths 5..50 (four satisfiable, one unsatisfiable per length).
constexpr std::uint64_t kCcLearnSeed   = 6;
constexpr int kCcLookback              = 2;
constexpr std::uint64_t kCcLearnConflicts = 200;

const char* kConstraint2 = ":- cabinetTOthing(C,T1), personTOthing(P1,T1), cabinetTOthing(C,T2), "
                           "personTOthing(P2,T2), P1 < P2.";
const char* kConstraint3 = ":- roomTOcabinet(R,C), cabinetTOthing(C,T1), personTOthing(P1,T1), "
                           "cabinetTOthing(C,T2), personTOthing(P2,T2), P1 < P2.";
const char* kConstraint9 = ":- roomTOcabinet(R,C), roomDomain(R), cabinet(C), cabinetTOthing(C,T1), "
                           "personTOthing(P1,T1), cabinetTOthing(C,T2), personTOthing(P2,T2), P1 < P2.";
const char* kClassTwin   = ":- personTOroom(P1,R), personTOroom(P2,R), P1 < P2.";

int failures = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", n, what.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Program encoding(const char* name) {
    return testing::encoding(name);
}

std::vector<SignedLiteral> nogood(const char* constraint) {
    return toNogood(parseConstraint(constraint));
}

std::string key(const std::vector<SignedLiteral>& ng) {
    return canonicalise(ng).key;
}

double median(std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n == 0 ? 0 : n % 2 ? static_cast<double>(v[n / 2]) : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

struct HcpRun {
    std::vector<LearnedConstraint> emitted;
    std::optional<LearnedConstraint> firstUip;
};

HcpRun criterion2(const Program& house) {
    const auto t0          = std::chrono::steady_clock::now();
    const Program tr       = translateChoiceRules(house);
    const GroundProgram gp = groundProgram(tr, genHcp(kHcpInstance));
    SolverOptions o;
    o.learn = true;
    o.seed  = kHcpSolverSeed;
    SolveLimits l;
    l.maxConflicts  = kHcpConflicts;
    const auto rep  = solveGround(gp, l, o);
    const double dt = since(t0);

    HcpRun run;
    run.emitted = rankAndEmit(rep.classes, 5, tr).constraints;
    const ConflictClass* cls = rep.classes.find(nogood(kClassTwin));
    bool first = false, last = false;
    if (cls) {
        for (const auto& e : cls->firstUip) {
            try {
                const auto c = replaceInternalLiterals(e.nogood.literals, tr);
                if (key(c.body) == key(nogood(kConstraint3))) {
                    first         = true;
                    run.firstUip = c;
                }
            }
            catch (const EmitError&) {
            }
        }
        for (const auto& e : cls->lastUip) {
            try {
                last |= key(replaceInternalLiterals(e.nogood.literals, tr).body) == key(nogood(kConstraint9));
            }
            catch (const EmitError&) {
            }
        }
    }
    std::ostringstream d;
    d << "class " << (cls ? "recorded" : "missing") << ", first-UIP constraint " << (first ? "found" : "missing")
      << ", last-UIP constraint " << (last ? "found" : "missing") << ", " << rep.conflicts << " conflicts, " << dt << " s";
    report(2, cls && first && last && dt < kHcpSeconds, "HCP first- and last-UIP constraints reproduced", d.str());
    return run;
}

std::optional<LearnedConstraint> criterion3(const Program& house, const std::optional<LearnedConstraint>& c3) {
    if (!c3) {
        report(3, false, "HCP first-UIP constraint reduces to the redundant constraint", "no first-UIP constraint to reduce");
        return std::nullopt;
    }
    const auto t0 = std::chrono::steady_clock::now();
    OracleBattery b;
    for (std::uint64_t s = 0; s != kBatteryPerDomain; ++s) {
        b.instances.push_back(genHcpTiny(s));
    }
    const auto r    = reduceConstraint(*c3, house, b);
    const double dt = since(t0);
    const bool onlyR2c = r.dropped.size() == 1 && r.dropped[0].atom.predicate == "roomTOcabinet";
    const bool is2     = key(r.constraint.body) == key(nogood(kConstraint2));
    bool validated     = false;
    for (const auto& s : r.log) {
        if (s.accepted) {
            validated = s.skolem == SkolemVerdict::Unsat && s.oracleEquivalent && s.oracleInstances > 0;
        }
    }
    std::ostringstream d;
    d << "dropped " << r.dropped.size() << " literal(s)" << (onlyR2c ? " (roomTOcabinet)" : "") << ", result "
      << r.constraint.text() << ", " << dt << " s";
    report(3, onlyR2c && is2 && validated && !r.partial && dt < kReduceSeconds,
           "HCP first-UIP constraint reduces to the redundant constraint", d.str());
    return r.constraint;
}

void criterion1() {
    const auto t0   = std::chrono::steady_clock::now();
    const Program h = translateChoiceRules(encoding("house.asp"));
    const Program c = translateChoiceRules(encoding("3cc.asp"));
    std::uint64_t conflicts = 0, checks = 0, violations = 0, steps = 0;
    auto run = [&](const Program& p, const std::vector<Atom>& facts, int lookback, std::uint64_t seed) {
        SolverOptions o;
        o.learn                = true;
        o.seed                 = seed;
        o.generaliser.lookback = lookback;
        SolveLimits l;
        l.maxConflicts   = 200;
        l.maxTime        = 10;
        const auto rep   = solveGround(groundProgram(p, facts), l, o);
        conflicts += rep.conflicts;
        checks += rep.witnessChecks;
        violations += rep.witnessViolations;
        steps += rep.resolutionSteps;
    };
    const HcpParams hcp[] = {{2, 2, 2, 2, 1}, {2, 3, 2, 2, 2}, {3, 2, 3, 2, 3}, {2, 2, 3, 3, 4}, {3, 3, 3, 3, 5}};
    for (std::size_t i = 0; i != std::size(hcp); ++i) {
        run(h, genHcp(hcp[i]), 1 + static_cast<int>(i % 2), i);
    }
    for (int i = 0; i != 20; ++i) {
        run(c, gen3cc(4 + i, i % 4 == 3 ? false : true, static_cast<std::uint64_t>(i)), 1 + i % 3,
            static_cast<std::uint64_t>(i));
    }
    const double dt = since(t0);
    std::ostringstream d;
    d << "5 HCP + 20 3CC runs, " << conflicts << " conflicts, " << steps << " resolution steps, " << checks
      << " witness checks, " << violations << " violations, " << dt << " s";
    report(1, violations == 0 && checks > 0 && conflicts >= kWitnessMinConflicts && dt < kWitnessSeconds,
           "witness invariant holds at every resolution step", d.str());
}

struct CcRun {
    PipelineResult result;
    double seconds{0};
};

CcRun runCcPipeline(const Program& col) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Instance> inst;
    for (int len = 5; len <= 50; len += 5) {
        for (std::uint64_t s = 1; s <= 4; ++s) {
            inst.push_back({"sat_" + std::to_string(len) + "_" + std::to_string(s), gen3cc(len, true, s)});
        }
        inst.push_back({"unsat_" + std::to_string(len) + "_5", gen3cc(len, false, 5)});
    }
    PipelineConfig cfg;
    cfg.training                          = {{"unsat_5_5", gen3cc(5, false, 5)}};
    cfg.learn.limits.maxConflicts         = kCcLearnConflicts;
    cfg.learn.solver.seed                 = kCcLearnSeed;
    cfg.learn.solver.generaliser.lookback = kCcLookback;
    cfg.benchSolver.seed                  = kCcLearnSeed;
    cfg.threads                           = 4;
    CcRun run;
    run.result  = runPipeline(col, inst, cfg);
    run.seconds = since(t0);
    return run;
}

void criterion5(const CcRun& run) {
    std::map<std::string, std::map<std::string, const BenchmarkRecord*>> rows;
    for (const auto& r : run.result.records) {
        rows[r.instance][r.variant] = &r;
    }
    std::size_t sat = 0, fewer = 0, statusChanges = 0;
    std::map<std::string, std::vector<std::uint64_t>> conflicts;
    for (const auto& [name, byVariant] : rows) {
        const auto* o = byVariant.at("original");
        for (const auto& [v, r] : byVariant) {
            conflicts[v].push_back(r->conflicts);
            statusChanges += r->status != o->status;
        }
        if (o->status == SolveStatus::SAT) {
            ++sat;
            fewer += byVariant.at("reduced")->conflicts < o->conflicts;
        }
    }
    const double share = sat ? static_cast<double>(fewer) / sat : 0;
    const double mo = median(conflicts["original"]), mf = median(conflicts["first-uip"]);
    std::ostringstream d;
    d << rows.size() << " instances, reduced fewer conflicts on " << fewer << "/" << sat << " SAT, " << statusChanges
      << " status changes, median conflicts original " << mo << " first-uip " << mf << " reduced "
      << median(conflicts["reduced"]) << ", " << run.seconds << " s";
    report(5, rows.size() >= 50 && share >= kSpeedupShare && statusChanges == 0 && mf < mo &&
                  run.seconds < kSpeedupSeconds,
           "3CC re-solving with learned constraints needs fewer conflicts", d.str());
}

void criterion4(const Program& house, const std::vector<LearnedConstraint>& hcp, const Program& col,
                const std::vector<LearnedConstraint>& cc) {
    std::size_t checks = 0, failed = 0, skipped = 0;
    std::string firstFailure;
    auto battery = [&](const Program& e, const std::vector<LearnedConstraint>& cs,
                       const std::function<std::vector<Atom>(std::uint64_t)>& gen) {
        for (const auto& c : cs) {
            const Program aug = augmentEncoding(e, std::vector<LearnedConstraint>{c});
            for (std::uint64_t s = 0; s != kBatteryPerDomain; ++s) {
                try {
                    ++checks;
                    if (!checkEquivalence(e, aug, gen(1000 + s)).equivalent) {
                        ++failed;
                        if (firstFailure.empty()) {
                            firstFailure = c.text();
                        }
                    }
                }
                catch (const OracleError&) {
                    --checks;
                    ++skipped;
                }
            }
        }
    };
    battery(house, hcp, genHcpTiny);
    battery(col, cc, gen3ccTiny);
    std::ostringstream d;
    d << hcp.size() << " HCP and " << cc.size() << " 3CC constraints, " << checks << " equivalence checks, " << failed
      << " failures, " << skipped << " skipped";
    if (!firstFailure.empty()) {
        d << ", first failing " << firstFailure;
    }
    report(4, failed == 0 && skipped == 0 && !hcp.empty() && !cc.empty(),
           "learned and reduced constraints preserve answer sets on tiny instances", d.str());
}

void criterion6() {
    struct Case {
        Program p;
        std::vector<Atom> facts;
    };
    std::vector<Case> cases{{translateChoiceRules(encoding("house.asp")), genHcp({2, 2, 2, 2, 1})},
                            {translateChoiceRules(encoding("house.asp")), genHcp({3, 2, 2, 2, 7})},
                            {translateChoiceRules(encoding("3cc.asp")), gen3cc(8, false, 2)},
                            {translateChoiceRules(encoding("3cc.asp")), gen3cc(12, true, 3)}};
    std::size_t same = 0;
    std::uint64_t conflicts = 0;
    for (const auto& c : cases) {
        const GroundProgram gp = groundProgram(c.p, c.facts);
        for (int lookback : {1, 2}) {
            SolverOptions off;
            off.recordTrace = true;
            off.seed        = 5;
            SolverOptions on = off;
            on.learn         = true;
            on.generaliser.lookback = lookback;
            SolveLimits l;
            l.maxConflicts = 300;
            const auto a   = solveGround(gp, l, off);
            const auto b   = solveGround(gp, l, on);
            conflicts += a.conflicts;
            same += a.trace == b.trace && a.learnedGround == b.learnedGround && a.status == b.status;
        }
    }
    std::ostringstream d;
    d << same << "/" << cases.size() * 2 << " runs identical, " << conflicts << " conflicts compared";
    report(6, same == cases.size() * 2 && conflicts > 0, "learning leaves the ground search unchanged", d.str());
}

void criterion7() {
    std::size_t agree = 0, total = 0;
    for (std::uint64_t s = 0; s != kRandomPrograms; ++s) {
        const Program p = parseProgram(testing::randomProgram(s));
        ++total;
        agree += testing::solverModels(p, {}) == testing::oracleModels(p, {});
    }
    const Program h = encoding("house.asp");
    const Program c = encoding("3cc.asp");
    for (std::uint64_t s = 0; s != 25; ++s) {
        total += 2;
        agree += testing::solverModels(h, genHcpTiny(s)) == testing::oracleModels(h, genHcpTiny(s));
        agree += testing::solverModels(c, gen3ccTiny(s)) == testing::oracleModels(c, gen3ccTiny(s));
    }
    std::ostringstream d;
    d << agree << "/" << total << " programs (" << kRandomPrograms << " random, 25 HCP, 25 3CC) agree";
    report(7, agree == total, "solver enumeration equals oracle enumeration", d.str());
}

void criterion8(const CcRun& run) {
    const char* programs[] = {"a. :- a.", "p(1). q(X) :- p(X). :- q(1).", "a :- not b. b. :- not a.",
                              "d(1). d(2). e(X) :- d(X), X < 2. :- e(1)."};
    std::size_t unsat = 0;
    for (const char* text : programs) {
        const auto rep = solveGround(groundProgram(translateChoiceRules(parseProgram(text)), {}), {});
        unsat += rep.status == SolveStatus::UNSAT && rep.decisions == 0;
    }
    std::size_t unsatRows = 0, unsatOk = 0;
    for (const auto& r : run.result.records) {
        if (r.instance.rfind("unsat_", 0) == 0) {
            ++unsatRows;
            unsatOk += r.status == SolveStatus::UNSAT;
        }
    }
    std::ostringstream d;
    d << unsat << "/" << std::size(programs) << " level-0 conflicts UNSAT without decisions, " << unsatOk << "/"
      << unsatRows << " unsatisfiable 3CC rows UNSAT across " << run.result.variants.size() << " variants";
    report(8, unsat == std::size(programs) && unsatRows > 0 && unsatOk == unsatRows,
           "violated level-0 nogoods and non-3-colourable chains are UNSAT", d.str());
}

} // namespace

int main() {
    const Program house = encoding("house.asp");
    const Program col   = encoding("3cc.asp");

    criterion1();
    const HcpRun hcp = criterion2(house);
    const auto reducedFirst = criterion3(house, hcp.firstUip);
    const CcRun cc      = runCcPipeline(col);

    std::vector<LearnedConstraint> hcpAll = hcp.emitted;
    if (reducedFirst) {
        hcpAll.push_back(*reducedFirst);
    }
    std::vector<LearnedConstraint> ccAll = cc.result.learned.emitted.constraints;
    for (const auto& r : cc.result.reductions) {
        ccAll.push_back(r.constraint);
    }
    criterion4(house, hcpAll, col, ccAll);
    criterion5(cc);
    criterion6();
    criterion7();
    criterion8(cc);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
