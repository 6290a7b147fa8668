#pragma once

#include <nglearn/emitter.hpp>
#include <nglearn/reducer.hpp>
#include <nglearn/solver.hpp>

#include <string>
#include <vector>

namespace nglearn {

std::string readFile(const std::string& path);

// Parses an encoding; `extraInputs` are added to the "% #input" declarations.
Program loadEncoding(const std::string& text, const std::vector<PredicateSig>& extraInputs = {});

struct Instance {
    std::string name;
    std::vector<Atom> facts;
};

// Plain ASP facts; anything else is a ParseError.
Instance parseInstance(const std::string& name, const std::string& text);

struct LearnConfig {
    SolveLimits limits;
    SolverOptions solver; // learning is switched on regardless
    std::size_t topK{5};
    UipSelection uip{UipSelection::All};
    EmitOptions emit;
    GroundOptions ground;
};

struct LearnOutcome {
    std::vector<SolveReport> reports; // one per training instance
    std::vector<std::string> groundWarnings;
    ClassTable classes;               // merged over all training instances
    ConstraintReport emitted;
};

LearnOutcome learnConstraints(const Program& encoding, const std::vector<Instance>& training,
                              const LearnConfig& cfg);

// Battery for the two generated domains (recognised by their input
// predicates), otherwise the given instances themselves.
OracleBattery defaultBattery(const Program& encoding, const std::vector<Instance>& instances, std::size_t size,
                             std::uint64_t seed);

struct BenchmarkRecord {
    std::string instance;
    std::string variant; // original, first-uip, last-uip, reduced
    SolveStatus status{SolveStatus::LIMIT};
    std::uint64_t conflicts{0};
    std::uint64_t decisions{0};
    double groundSeconds{0};
    double solveSeconds{0};
    std::size_t answerSets{0};
    std::string error; // why a LIMIT row was recorded without solving
};

struct Variant {
    std::string name;
    Program encoding;
};

// Every instance under every variant; failures become LIMIT rows. With
// threads > 1 instances are spread over worker threads; rows come back in
// (instance, variant) order either way.
std::vector<BenchmarkRecord> runBenchmark(const std::vector<Variant>& variants, const std::vector<Instance>& instances,
                                          const SolveLimits& limits, const SolverOptions& opts, unsigned threads = 1,
                                          const GroundOptions& ground = {});

// Header: instance,variant,status,conflicts,decisions,ground_seconds,solve_seconds,answer_sets
std::string toCsv(const std::vector<BenchmarkRecord>& rows);

// Per variant, solve times of non-LIMIT rows sorted ascending and summed up:
// "variant solved cumulative_seconds" lines.
std::string cactusTable(const std::vector<BenchmarkRecord>& rows);

struct PipelineConfig {
    LearnConfig learn;
    std::vector<Instance> training; // when empty: the trainingCount smallest instances by fact count
    std::size_t trainingCount{1};
    bool reduce{true};
    ReduceOptions reduceOptions;
    std::size_t batterySize{50};
    std::uint64_t batterySeed{1};
    SolveLimits benchLimits;
    SolverOptions benchSolver;
    GroundOptions benchGround{1'000'000, true}; // per worker; long constraints can explode
    unsigned threads{1};
};

struct PipelineResult {
    std::vector<std::string> training;
    LearnOutcome learned;
    std::vector<ReductionResult> reductions;
    std::vector<Variant> variants;
    std::vector<BenchmarkRecord> records;
};

PipelineResult runPipeline(const Program& encoding, const std::vector<Instance>& instances,
                           const PipelineConfig& cfg);

} // namespace nglearn
