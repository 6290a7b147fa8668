// nglearn: ground, solve and learn non-ground constraints from conflicts.

#include <nglearn/generators.hpp>
#include <nglearn/parser.hpp>
#include <nglearn/pipeline.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace nglearn;

namespace {

enum Exit { kOk = 0, kUnsat = 1, kUsage = 2, kLimit = 3 };

struct Common {
    std::vector<std::string> inputPreds;
    std::size_t numAnswerSets{10};
    std::optional<std::uint64_t> maxConflicts;
    std::optional<double> maxTime;
    std::string uip{"all"};
    int lookback{1};
    std::size_t topK{5};
    std::uint64_t seed{0};
    std::string emitFile;
    std::string reportFile;
    bool verboseTrace{false};
    bool noSupport{false};
};

void addCommon(CLI::App* app, Common& c) {
    app->add_option("--input-pred", c.inputPreds, "Input predicate p/n (repeatable)");
    app->add_option("--num-answer-sets", c.numAnswerSets, "Answer sets to compute, 0 for all")->capture_default_str();
    app->add_option("--max-conflicts", c.maxConflicts, "Conflict limit");
    app->add_option("--max-time", c.maxTime, "Time limit in seconds");
    app->add_option("--uip", c.uip, "UIPs to emit")
        ->check(CLI::IsMember({"first", "last", "all"}))
        ->capture_default_str();
    app->add_option("--resolution-lookback", c.lookback, "Decision levels available for resolution")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--top-k", c.topK, "Conflict classes to emit")->capture_default_str();
    app->add_option("--seed", c.seed, "Heuristic tie-break seed")->capture_default_str();
    app->add_option("--emit-constraints", c.emitFile, "Write learned constraints here");
    app->add_option("--report", c.reportFile, "Write a JSON (solve, learn) or CSV (bench) report here");
    app->add_flag("--verbose-trace", c.verboseTrace, "Print the assignment or resolution trace to stderr");
    app->add_flag("--no-support", c.noSupport, "Do not emit support nogoods with twins");
}

std::vector<PredicateSig> inputSigs(const Common& c) {
    std::vector<PredicateSig> out;
    for (const auto& s : c.inputPreds) {
        out.push_back(parsePredicateSig(s));
    }
    return out;
}

SolveLimits limitsOf(const Common& c) {
    SolveLimits l;
    l.maxConflicts     = c.maxConflicts;
    l.maxTime          = c.maxTime;
    l.targetAnswerSets = c.numAnswerSets;
    return l;
}

UipSelection uipOf(const Common& c) {
    if (c.uip == "first") {
        return UipSelection::First;
    }
    if (c.uip == "last") {
        return UipSelection::Last;
    }
    return UipSelection::All;
}

std::vector<Instance> loadInstances(const std::vector<std::string>& files) {
    std::vector<Instance> out;
    for (const auto& f : files) {
        out.push_back(parseInstance(f, readFile(f)));
    }
    return out;
}

void writeOrPrint(const std::string& file, const std::string& text) {
    if (file.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(file);
    if (!out) {
        throw Error("cannot write " + file);
    }
    out << text;
}

int runSolve(const Common& c, const std::string& encFile, const std::vector<std::string>& instFiles) {
    const Program enc = loadEncoding(readFile(encFile), inputSigs(c));
    std::vector<Atom> facts;
    for (const auto& inst : loadInstances(instFiles)) {
        facts.insert(facts.end(), inst.facts.begin(), inst.facts.end());
    }
    GroundOptions go;
    go.supportNogoods       = !c.noSupport;
    const GroundProgram gp  = groundProgram(translateChoiceRules(enc), facts, go);
    SolverOptions opts;
    opts.seed               = c.seed;
    opts.recordTrace        = c.verboseTrace;
    const SolveReport rep   = solveGround(gp, limitsOf(c), opts);
    for (std::size_t i = 0; i != rep.answerSets.size(); ++i) {
        std::cout << "Answer: " << i + 1 << "\n";
        for (std::size_t k = 0; k != rep.answerSets[i].size(); ++k) {
            std::cout << (k ? " " : "") << rep.answerSets[i][k].toString();
        }
        std::cout << "\n";
    }
    if (c.verboseTrace) {
        for (const auto& e : rep.trace) {
            std::cerr << gp.atoms[e.atom].atom.toString() << " := " << toString(e.value) << " @" << e.dl
                      << (e.antecedent == kNoAntecedent ? "" : " by " + std::to_string(e.antecedent)) << "\n";
        }
    }
    for (const auto& w : gp.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    if (!c.reportFile.empty()) {
        writeOrPrint(c.reportFile, rep.toJson(gp, c.topK) + "\n");
    }
    switch (rep.status) {
    case SolveStatus::SAT: std::cout << "SATISFIABLE\n"; return kOk;
    case SolveStatus::UNSAT: std::cout << "UNSATISFIABLE\n"; return kUnsat;
    case SolveStatus::LIMIT:
        std::cout << (rep.answerSets.empty() ? "UNKNOWN\n" : "SATISFIABLE (limit)\n");
        return kLimit;
    }
    return kOk;
}

int runLearn(const Common& c, const std::string& encFile, const std::vector<std::string>& instFiles) {
    const Program enc = loadEncoding(readFile(encFile), inputSigs(c));
    LearnConfig cfg;
    cfg.limits                    = limitsOf(c);
    cfg.solver.seed               = c.seed;
    cfg.solver.generaliser.lookback = c.lookback;
    cfg.solver.generaliser.trace  = c.verboseTrace ? &std::cerr : nullptr;
    cfg.solver.keepAllUips        = c.uip == "all";
    cfg.topK                      = c.topK;
    cfg.uip                       = uipOf(c);
    cfg.ground.supportNogoods     = !c.noSupport;
    std::vector<Instance> training = loadInstances(instFiles);
    if (training.empty()) {
        training.push_back({"(none)", {}});
    }
    const LearnOutcome out = learnConstraints(enc, training, cfg);
    for (const auto& d : out.emitted.diagnostics) {
        std::cerr << "diagnostic: " << d << "\n";
    }
    for (const auto& w : out.groundWarnings) {
        std::cerr << "warning: " << w << "\n";
    }
    writeOrPrint(c.emitFile, out.emitted.text);
    if (!c.reportFile.empty()) {
        const Program tr       = translateChoiceRules(enc);
        const GroundProgram gp = groundProgram(tr, training.back().facts, cfg.ground);
        writeOrPrint(c.reportFile, out.reports.back().toJson(gp, c.topK) + "\n");
    }
    return kOk;
}

int runReduce(const Common& c, const std::string& encFile, const std::string& constraintFile,
              const std::vector<std::string>& batteryFiles, std::size_t batterySize, std::size_t budget) {
    const Program enc  = loadEncoding(readFile(encFile), inputSigs(c));
    const Program cons = parseProgram(readFile(constraintFile));
    const auto insts   = loadInstances(batteryFiles);
    OracleBattery battery;
    if (insts.empty()) {
        battery = defaultBattery(enc, {}, batterySize, c.seed + 1);
    }
    else {
        for (const auto& i : insts) {
            battery.instances.push_back(i.facts);
        }
    }
    ReduceOptions opts;
    opts.maxValidations = budget;
    std::string text;
    for (const auto& r : cons.rules) {
        if (!r.isConstraint()) {
            continue;
        }
        LearnedConstraint lc;
        lc.body             = canonicalise(toNogood(r.body)).literals;
        const auto res      = reduceConstraint(lc, enc, battery, opts);
        text += "% reduced from: " + lc.text() + "\n";
        if (res.partial) {
            text += "% partial: validation budget exhausted\n";
        }
        text += res.constraint.text() + "\n";
    }
    writeOrPrint(c.emitFile, text);
    return kOk;
}

int runBench(const Common& c, const std::string& encFile, const std::vector<std::string>& instFiles,
             std::size_t training, const std::string& cactusFile, unsigned threads, bool noReduce,
             std::size_t maxGroundRules, const std::vector<std::string>& trainFiles) {
    const Program enc = loadEncoding(readFile(encFile), inputSigs(c));
    PipelineConfig cfg;
    cfg.learn.limits                      = limitsOf(c);
    cfg.learn.limits.maxConflicts         = c.maxConflicts ? c.maxConflicts : std::optional<std::uint64_t>(50);
    cfg.learn.solver.seed                 = c.seed;
    cfg.learn.solver.generaliser.lookback = c.lookback;
    cfg.learn.topK                        = c.topK;
    cfg.learn.uip                         = uipOf(c);
    cfg.learn.ground.supportNogoods       = !c.noSupport;
    cfg.trainingCount                     = training;
    cfg.training                          = loadInstances(trainFiles);
    cfg.reduce                            = !noReduce;
    cfg.batterySeed                       = c.seed + 1;
    cfg.benchLimits.targetAnswerSets      = c.numAnswerSets;
    cfg.benchLimits.maxTime               = c.maxTime;
    cfg.benchSolver.seed                  = c.seed;
    cfg.threads                           = threads;
    cfg.benchGround.maxGroundRules        = maxGroundRules;
    cfg.benchGround.supportNogoods        = !c.noSupport;
    const auto res = runPipeline(enc, loadInstances(instFiles), cfg);
    for (const auto& d : res.learned.emitted.diagnostics) {
        std::cerr << "diagnostic: " << d << "\n";
    }
    if (!c.emitFile.empty()) {
        std::string text = res.learned.emitted.text;
        for (const auto& r : res.reductions) {
            text += "% reduced" + std::string(r.partial ? " (partial)" : "") + "\n" + r.constraint.text() + "\n";
        }
        writeOrPrint(c.emitFile, text);
    }
    for (const auto& r : res.records) {
        if (!r.error.empty()) {
            std::cerr << r.instance << " (" << r.variant << "): " << r.error << "\n";
        }
    }
    writeOrPrint(c.reportFile, toCsv(res.records));
    if (!cactusFile.empty()) {
        writeOrPrint(cactusFile, cactusTable(res.records));
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conflict-driven learning of non-ground ASP constraints"};
    app.require_subcommand(1);

    Common c;
    std::string enc, constraints, out, cactus;
    std::vector<std::string> files;

    auto* solve = app.add_subcommand("solve", "Ground and solve an encoding with instance facts");
    addCommon(solve, c);
    solve->add_option("encoding", enc)->required()->check(CLI::ExistingFile);
    solve->add_option("instances", files)->check(CLI::ExistingFile);

    auto* learn = app.add_subcommand("learn", "Learn non-ground constraints on instances");
    addCommon(learn, c);
    learn->add_option("encoding", enc)->required()->check(CLI::ExistingFile);
    learn->add_option("instances", files)->check(CLI::ExistingFile);

    std::size_t batterySize = 50, budget = 64;
    auto* reduce = app.add_subcommand("reduce", "Minimise constraints by validated literal dropping");
    addCommon(reduce, c);
    reduce->add_option("encoding", enc)->required()->check(CLI::ExistingFile);
    reduce->add_option("constraints", constraints)->required()->check(CLI::ExistingFile);
    reduce->add_option("battery", files, "Instances for the oracle check (default: generated)")
        ->check(CLI::ExistingFile);
    reduce->add_option("--battery-size", batterySize)->capture_default_str();
    reduce->add_option("--validation-budget", budget)->capture_default_str();

    HcpParams hp;
    auto* genHcpCmd = app.add_subcommand("gen-hcp", "Generate an HCP instance");
    genHcpCmd->add_option("--persons", hp.persons)->check(CLI::PositiveNumber)->capture_default_str();
    genHcpCmd->add_option("--things", hp.thingsPerPerson, "Things per person")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    genHcpCmd->add_option("--cabinets", hp.cabinets)->check(CLI::PositiveNumber)->capture_default_str();
    genHcpCmd->add_option("--rooms", hp.rooms)->check(CLI::PositiveNumber)->capture_default_str();
    genHcpCmd->add_option("--seed", hp.seed)->capture_default_str();
    genHcpCmd->add_option("-o,--output", out);

    int length = 1;
    bool unsat = false;
    std::uint64_t seed3 = 0;
    auto* gen3ccCmd = app.add_subcommand("gen-3cc", "Generate a 3-colourable-chain instance");
    gen3ccCmd->add_option("--length", length)->check(CLI::PositiveNumber)->capture_default_str();
    gen3ccCmd->add_flag("--unsat", unsat, "Add the edge that makes the graph non-3-colourable");
    gen3ccCmd->add_option("--seed", seed3)->capture_default_str();
    gen3ccCmd->add_option("-o,--output", out);

    std::size_t training = 1;
    unsigned threads = 1;
    std::size_t maxGroundRules = 1'000'000;
    std::vector<std::string> trainFiles;
    bool noReduce = false;
    auto* bench = app.add_subcommand("bench", "Learn, reduce and re-solve all instances under each variant");
    addCommon(bench, c);
    bench->add_option("encoding", enc)->required()->check(CLI::ExistingFile);
    bench->add_option("instances", files)->check(CLI::ExistingFile);
    bench->add_option("--training", training, "Smallest instances used for learning")->capture_default_str();
    bench->add_option("--cactus", cactus, "Write the cumulative-time table here");
    bench->add_option("--threads", threads)->check(CLI::PositiveNumber)->capture_default_str();
    bench->add_flag("--no-reduce", noReduce);
    bench->add_option("--train", trainFiles, "Training instance (repeatable); overrides --training")
        ->check(CLI::ExistingFile);
    bench->add_option("--max-ground-rules", maxGroundRules, "Per-instance grounding cap; above it the row is LIMIT")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*solve) {
            return runSolve(c, enc, files);
        }
        if (*learn) {
            return runLearn(c, enc, files);
        }
        if (*reduce) {
            return runReduce(c, enc, constraints, files, batterySize, budget);
        }
        if (*genHcpCmd) {
            writeOrPrint(out, factsToText(genHcp(hp)));
            return kOk;
        }
        if (*gen3ccCmd) {
            writeOrPrint(out, factsToText(gen3cc(length, !unsat, seed3)));
            return kOk;
        }
        if (*bench) {
            return runBench(c, enc, files, training, cactus, threads, noReduce, maxGroundRules, trainFiles);
        }
    }
    catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kOk;
}
