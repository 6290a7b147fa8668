#include <nglearn/generators.hpp>
#include <nglearn/parser.hpp>
#include <nglearn/pipeline.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace nglearn {

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Program loadEncoding(const std::string& text, const std::vector<PredicateSig>& extraInputs) {
    Program p = parseProgram(text, extraInputs);
    p.checkInputPredicates();
    return p;
}

Instance parseInstance(const std::string& name, const std::string& text) {
    const Program p = parseProgram(text);
    Instance inst{name, {}};
    for (const auto& r : p.rules) {
        if (!r.isFact() || !r.head->isGround()) {
            throw Error(name + ": instance files may only contain ground facts, found " + r.toString());
        }
        inst.facts.push_back(*r.head);
    }
    return inst;
}

LearnOutcome learnConstraints(const Program& encoding, const std::vector<Instance>& training,
                              const LearnConfig& cfg) {
    LearnOutcome out;
    const Program tr = translateChoiceRules(encoding);
    SolverOptions opts = cfg.solver;
    opts.learn         = true;
    for (const auto& inst : training) {
        const GroundProgram gp = groundProgram(tr, inst.facts, cfg.ground);
        for (const auto& w : gp.warnings) {
            out.groundWarnings.push_back(inst.name + ": " + w);
        }
        SolveReport rep = solveGround(gp, cfg.limits, opts);
        out.classes.merge(rep.classes);
        out.reports.push_back(std::move(rep));
    }
    out.emitted = rankAndEmit(out.classes, cfg.topK, tr, cfg.uip, cfg.emit);
    return out;
}

OracleBattery defaultBattery(const Program& encoding, const std::vector<Instance>& instances, std::size_t size,
                             std::uint64_t seed) {
    OracleBattery b;
    const std::set<PredicateSig> hcp{{"personTOthing", 2}, {"cabinetDomain", 1}, {"roomDomain", 1}};
    const std::set<PredicateSig> threeCc{{"link", 2}};
    if (encoding.inputPredicates == hcp) {
        for (std::size_t i = 0; i != size; ++i) {
            b.instances.push_back(genHcpTiny(seed + i));
        }
    }
    else if (encoding.inputPredicates == threeCc) {
        for (std::size_t i = 0; i != size; ++i) {
            b.instances.push_back(gen3ccTiny(seed + i));
        }
    }
    else {
        for (std::size_t i = 0; i != instances.size() && i != size; ++i) {
            b.instances.push_back(instances[i].facts);
        }
    }
    return b;
}

namespace {

BenchmarkRecord benchOne(const Variant& v, const Program& translated, const Instance& inst, const SolveLimits& limits,
                         const SolverOptions& opts, const GroundOptions& ground) {
    BenchmarkRecord rec;
    rec.instance = inst.name;
    rec.variant  = v.name;
    try {
        const auto t0          = std::chrono::steady_clock::now();
        const GroundProgram gp = groundProgram(translated, inst.facts, ground);
        rec.groundSeconds      = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        SolverOptions o        = opts;
        o.learn                = false;
        const SolveReport rep  = solveGround(gp, limits, o);
        rec.status             = rep.status;
        rec.conflicts          = rep.conflicts;
        rec.decisions          = rep.decisions;
        rec.solveSeconds       = rep.solveSeconds;
        rec.answerSets         = rep.answerSets.size();
    }
    catch (const std::exception& e) {
        rec.status = SolveStatus::LIMIT;
        rec.error  = e.what();
    }
    return rec;
}

} // namespace

std::vector<BenchmarkRecord> runBenchmark(const std::vector<Variant>& variants, const std::vector<Instance>& instances,
                                          const SolveLimits& limits, const SolverOptions& opts, unsigned threads,
                                          const GroundOptions& ground) {
    std::vector<Program> translated;
    for (const auto& v : variants) {
        translated.push_back(translateChoiceRules(v.encoding));
    }
    const std::size_t n = instances.size() * variants.size();
    std::vector<BenchmarkRecord> rows(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < n; k = next++) {
            const std::size_t i = k / variants.size();
            const std::size_t v = k % variants.size();
            rows[k]             = benchOne(variants[v], translated[v], instances[i], limits, opts, ground);
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        worker();
    }
    else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t != threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    return rows;
}

std::string toCsv(const std::vector<BenchmarkRecord>& rows) {
    std::ostringstream out;
    out << "instance,variant,status,conflicts,decisions,ground_seconds,solve_seconds,answer_sets\n";
    for (const auto& r : rows) {
        out << r.instance << ',' << r.variant << ',' << toString(r.status) << ',' << r.conflicts << ','
            << r.decisions << ',' << r.groundSeconds << ',' << r.solveSeconds << ',' << r.answerSets << '\n';
    }
    return out.str();
}

std::string cactusTable(const std::vector<BenchmarkRecord>& rows) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<double>> times;
    for (const auto& r : rows) {
        if (!times.count(r.variant)) {
            order.push_back(r.variant);
        }
        auto& t = times[r.variant];
        if (r.status != SolveStatus::LIMIT) {
            t.push_back(r.solveSeconds);
        }
    }
    std::ostringstream out;
    out << "# variant solved cumulative_seconds\n";
    for (const auto& v : order) {
        auto t = times[v];
        std::sort(t.begin(), t.end());
        double sum = 0;
        for (std::size_t k = 0; k != t.size(); ++k) {
            sum += t[k];
            out << v << ' ' << k + 1 << ' ' << sum << '\n';
        }
    }
    return out.str();
}

PipelineResult runPipeline(const Program& encoding, const std::vector<Instance>& instances,
                           const PipelineConfig& cfg) {
    PipelineResult res;
    std::vector<std::size_t> bySize(instances.size());
    for (std::size_t i = 0; i != bySize.size(); ++i) {
        bySize[i] = i;
    }
    std::stable_sort(bySize.begin(), bySize.end(), [&](std::size_t a, std::size_t b) {
        return instances[a].facts.size() < instances[b].facts.size();
    });
    std::vector<Instance> training = cfg.training;
    if (training.empty()) {
        for (std::size_t k = 0; k != bySize.size() && k != cfg.trainingCount; ++k) {
            training.push_back(instances[bySize[k]]);
        }
    }
    for (const auto& t : training) {
        res.training.push_back(t.name);
    }

    res.variants.push_back({"original", encoding});
    if (!training.empty()) {
        res.learned = learnConstraints(encoding, training, cfg.learn);
        std::vector<LearnedConstraint> first, last;
        for (const auto& c : res.learned.emitted.constraints) {
            (c.uip == "first" ? first : last).push_back(c);
        }
        if (cfg.learn.uip != UipSelection::Last) {
            res.variants.push_back({"first-uip", augmentEncoding(encoding, first)});
        }
        if (cfg.learn.uip != UipSelection::First) {
            res.variants.push_back({"last-uip", augmentEncoding(encoding, last)});
        }
        if (cfg.reduce) {
            const OracleBattery battery = defaultBattery(encoding, instances, cfg.batterySize, cfg.batterySeed);
            std::vector<LearnedConstraint> reduced;
            std::set<std::string> seen;
            const auto& all = res.learned.emitted.constraints;
            for (std::size_t i = 0; i != all.size(); ++i) {
                ReductionResult r = reduceConstraint(all[i], encoding, battery, cfg.reduceOptions);
                r.constraint.reducedFrom = i;
                if (seen.insert(canonicalise(r.constraint.body).key).second) {
                    reduced.push_back(r.constraint);
                }
                res.reductions.push_back(std::move(r));
            }
            res.variants.push_back({"reduced", augmentEncoding(encoding, reduced)});
        }
    }
    res.records = runBenchmark(res.variants, instances, cfg.benchLimits, cfg.benchSolver, cfg.threads, cfg.benchGround);
    return res;
}

} // namespace nglearn
