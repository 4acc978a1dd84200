// Command-line front end: dataset generation, single-algorithm runs,
// candidate sweeps, criterion comparison and GA experiments, all emitting
// versioned JSON reports (plus flat CSV tables) so experiments can be
// reassembled and rerun from the reports alone.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "nkclust/baselines.hpp"
#include "nkclust/dataset.hpp"
#include "nkclust/ga.hpp"
#include "nkclust/validation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nkclust;

namespace {

constexpr int kSchemaVersion = 1;

Kernel kernel_from_string(const std::string& s) {
    if (s == "gaussian")
        return Kernel::Gaussian;
    if (s == "flat")
        return Kernel::Flat;
    throw std::invalid_argument("unknown kernel '" + s + "' (expected gaussian|flat)");
}

AriNoisePolicy ari_policy_from_string(const std::string& s) {
    if (s == "cluster")
        return AriNoisePolicy::NoiseAsCluster;
    if (s == "ignore")
        return AriNoisePolicy::IgnoreNoiseObjects;
    throw std::invalid_argument("unknown noise policy '" + s + "' (expected cluster|ignore)");
}

// Stop rules are written "secs:X", "gens:X" or "evals:X"; "secs:auto" is the
// paper protocol of N/2 wall-clock seconds.
StopRule parse_stop(const std::string& s, std::size_t n) {
    const auto colon = s.find(':');
    if (colon != std::string::npos) {
        const std::string kind = s.substr(0, colon);
        const std::string value = s.substr(colon + 1);
        try {
            if (kind == "secs")
                return StopRule::wall_clock(value == "auto" ? static_cast<double>(n) / 2.0
                                                            : std::stod(value));
            if (kind == "gens")
                return StopRule::generations(std::stoll(value));
            if (kind == "evals")
                return StopRule::evaluations(std::stoll(value));
        } catch (const std::logic_error&) {
            // fall through to the shared error below
        }
    }
    throw std::invalid_argument("unrecognised stop rule '" + s +
                                "' (expected secs:X|gens:X|evals:X, X numeric or secs:auto)");
}

json stop_to_json(const StopRule& stop) {
    switch (stop.kind) {
    case StopKind::Generations: return {{"kind", "generations"}, {"value", stop.count}};
    case StopKind::Evaluations: return {{"kind", "evaluations"}, {"value", stop.count}};
    case StopKind::WallClockSeconds: return {{"kind", "wall_clock_seconds"}, {"value", stop.seconds}};
    }
    return {};
}

void write_json_file(const fs::path& path, const json& j) {
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    os << j.dump(2) << '\n';
    if (!os)
        throw std::runtime_error("failed while writing '" + path.string() + "'");
}

// Quote a CSV field that may contain commas or quotes.
std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

double mean_of(const std::vector<double>& v) {
    double s = 0;
    for (double x : v)
        s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Population standard deviation (the reports describe the runs actually
// made, not a sample from a larger population).
double std_of(const std::vector<double>& v) {
    if (v.size() < 2)
        return 0.0;
    const double m = mean_of(v);
    double s = 0;
    for (double x : v)
        s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
}

// Builds scoring criteria from their textual spec:
//   nkcv2-k<K>   minimise the decomposable criterion with group size K+1
//   silhouette   maximise the exact silhouette width
//   file:P:min / file:P:max
//                scores read from file P, one per candidate in order (lets
//                externally computed criteria join the selection protocol)
// Contexts and the distance matrix are shared across criteria via the
// returned closures, so a factory outliving its criteria is not required.
class CriterionFactory {
public:
    CriterionFactory(const Dataset& ds, double cutoff, Kernel kernel)
        : ds_(ds), cutoff_(cutoff), kernel_(kernel) {}

    Criterion make(const std::string& spec) {
        if (spec == "silhouette") {
            auto dm = matrix();
            return {spec, Direction::Maximize,
                    [dm](const Partition& p) { return silhouette_width(p, *dm); }};
        }
        if (spec.rfind("nkcv2-k", 0) == 0) {
            const int k = std::stoi(spec.substr(7));
            auto ctx = context_for(k);
            return {spec, Direction::Minimize,
                    [ctx](const Partition& p) { return evaluate(p, *ctx); }};
        }
        if (spec.rfind("file:", 0) == 0) {
            const std::string rest = spec.substr(5);
            const auto colon = rest.rfind(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("file criterion needs file:<path>:<min|max>");
            const std::string path = rest.substr(0, colon);
            const std::string dir = rest.substr(colon + 1);
            if (dir != "min" && dir != "max")
                throw std::invalid_argument("file criterion direction must be min or max, got '" +
                                            dir + "'");
            std::ifstream is(path);
            if (!is)
                throw std::runtime_error("cannot read score file '" + path + "'");
            auto scores = std::make_shared<std::vector<double>>();
            double v;
            while (is >> v)
                scores->push_back(v);
            auto next = std::make_shared<std::size_t>(0);
            return {spec, dir == "min" ? Direction::Minimize : Direction::Maximize,
                    [scores, next, path](const Partition&) {
                        if (*next >= scores->size())
                            throw std::runtime_error("score file '" + path +
                                                     "' has fewer entries than candidates");
                        return (*scores)[(*next)++];
                    }};
        }
        throw std::invalid_argument("unrecognised criterion '" + spec +
                                    "' (expected nkcv2-k<INT>|silhouette|file:<path>:<min|max>)");
    }

private:
    std::shared_ptr<EvalContext> context_for(int k) {
        auto& slot = contexts_[k];
        if (!slot)
            slot = std::make_shared<EvalContext>(EvalContext::build(ds_, k, cutoff_, kernel_));
        return slot;
    }

    std::shared_ptr<DistanceMatrix> matrix() {
        if (!dm_) {
            // Reuse a context's matrix when one was already paid for.
            if (!contexts_.empty())
                dm_ = std::shared_ptr<DistanceMatrix>(contexts_.begin()->second,
                                                      &contexts_.begin()->second->dm);
            else
                dm_ = std::make_shared<DistanceMatrix>(pairwise_distances(ds_));
        }
        return dm_;
    }

    const Dataset& ds_;
    double cutoff_;
    Kernel kernel_;
    std::map<int, std::shared_ptr<EvalContext>> contexts_;
    std::shared_ptr<DistanceMatrix> dm_;
};

// ---------------------------------------------------------------------------
// generate

struct GenerateOpts {
    std::string out;
    int clusters = 2;
    int dims = 2;
    int n = 800;
    double noise = 0.0;
    std::string balance = "equal";
    std::uint64_t seed = 1;
};

void cmd_generate(const GenerateOpts& o) {
    GaussianModelConfig cfg;
    cfg.n_clusters = o.clusters;
    cfg.dims = o.dims;
    cfg.n_objects = o.n;
    cfg.noise_fraction = o.noise;
    cfg.balance = balance_from_string(o.balance);
    cfg.seed = o.seed;

    const GeneratedData gen = generate_gaussian_model(cfg);
    fs::create_directories(o.out);
    const fs::path dir(o.out);
    write_csv((dir / "data.csv").string(), gen.data);
    write_labels_csv((dir / "truth.csv").string(), gen.truth);

    const json report = {
        {"schema_version", kSchemaVersion},
        {"command", "generate"},
        {"config",
         {{"clusters", cfg.n_clusters},
          {"dims", cfg.dims},
          {"n", cfg.n_objects},
          {"noise", cfg.noise_fraction},
          {"balance", to_string(cfg.balance)},
          {"seed", cfg.seed}}},
        {"outputs", {{"data", "data.csv"}, {"truth", "truth.csv"}}},
        {"truth_clusters", count_clusters(gen.truth)},
    };
    write_json_file(dir / "config.json", report);
    std::cout << "wrote " << (dir / "data.csv").string() << " (" << gen.data.n() << " x "
              << gen.data.dims() << "), truth.csv, config.json\n";
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOpts {
    std::string dataset;
    std::string truth;
    std::string out;
    std::vector<std::string> criteria;
    std::uint64_t seed = 1;
    std::string ari_noise = "cluster";
    double cutoff = 0.02;
    std::string kernel = "gaussian";
};

void cmd_sweep(const SweepOpts& o) {
    const Dataset ds = load_csv(o.dataset).data;
    std::optional<Partition> truth;
    if (!o.truth.empty())
        truth = load_labels_csv(o.truth);
    const AriNoisePolicy policy = ari_policy_from_string(o.ari_noise);
    const Kernel kernel = kernel_from_string(o.kernel);

    std::vector<std::string> criteria = o.criteria;
    if (criteria.empty())
        criteria = {"nkcv2-k2", "nkcv2-k3", "nkcv2-k4", "silhouette"};

    Rng rng(o.seed);
    const CandidateSet set = candidate_grid(ds, rng, o.cutoff, kernel);

    const fs::path dir(o.out);
    fs::create_directories(dir / "candidates");
    json manifest = json::array();
    for (std::size_t i = 0; i < set.size(); ++i) {
        const std::string rel = "candidates/cand_" + std::to_string(i) + ".csv";
        write_labels_csv((dir / rel).string(), set.candidates[i].part);
        manifest.push_back({{"index", i},
                            {"algorithm", set.candidates[i].algorithm},
                            {"params", set.candidates[i].params},
                            {"clusters", count_clusters(set.candidates[i].part)},
                            {"labels", rel}});
    }
    write_json_file(dir / "manifest.json",
                    {{"schema_version", kSchemaVersion}, {"candidates", manifest}});

    CriterionFactory factory(ds, o.cutoff, kernel);
    json selections = json::array();
    std::ostringstream table;
    table << std::setprecision(std::numeric_limits<double>::max_digits10);
    table << "criterion,best_index,algorithm,params,score,clusters";
    if (truth)
        table << ",ari,truth_clusters,count_hit";
    table << '\n';

    for (const std::string& spec : criteria) {
        const Criterion crit = factory.make(spec);
        const SelectionResult sel = select_best(set, crit);
        const Candidate& best = set.candidates[sel.best_index];

        json row = {{"criterion", spec},
                    {"direction", crit.direction == Direction::Minimize ? "min" : "max"},
                    {"best_index", sel.best_index},
                    {"algorithm", best.algorithm},
                    {"params", best.params},
                    {"score", sel.scores[sel.best_index]},
                    {"clusters", count_clusters(best.part)},
                    {"scores", sel.scores}};
        table << spec << ',' << sel.best_index << ',' << best.algorithm << ','
              << csv_quote(best.params) << ',' << sel.scores[sel.best_index] << ','
              << count_clusters(best.part);
        if (truth) {
            const double ari = adjusted_rand_index(best.part, *truth, policy);
            const int want = count_clusters(*truth);
            const int got = count_clusters(best.part);
            row["ari"] = ari;
            row["truth_clusters"] = want;
            row["count_hit"] = got == want;
            table << ',' << ari << ',' << want << ',' << (got == want ? 1 : 0);
        }
        table << '\n';
        selections.push_back(std::move(row));
    }

    const json report = {
        {"schema_version", kSchemaVersion},
        {"command", "sweep"},
        {"config",
         {{"dataset", o.dataset},
          {"truth", o.truth},
          {"out", o.out},
          {"criteria", criteria},
          {"seed", o.seed},
          {"ari_noise", o.ari_noise},
          {"cutoff", o.cutoff},
          {"kernel", o.kernel}}},
        {"n_candidates", set.size()},
        {"selections", selections},
    };
    write_json_file(dir / "report.json", report);
    std::ofstream csv(dir / "report.csv");
    csv << table.str();
    if (!csv)
        throw std::runtime_error("failed while writing report.csv");
    std::cout << "wrote " << (dir / "report.json").string() << " (" << set.size()
              << " candidates, " << criteria.size() << " criteria)\n";
}

// ---------------------------------------------------------------------------
// ga

struct GaOpts {
    std::string dataset;
    std::string truth;
    std::string out;
    int k = 3;
    double pc = 0.6;
    int pop = 100;
    int runs = 25;
    std::uint64_t seed = 1;
    std::string stop = "secs:auto";
    std::string criterion; // default resolved to nkcv2-k<K>
    std::string ari_noise = "cluster";
    double cutoff = 0.02;
    std::string kernel = "gaussian";
};

int worker_count(int runs) {
    if (const char* env = std::getenv("NKCLUST_WORKERS")) {
        const int w = std::atoi(env);
        if (w >= 1)
            return std::min(w, runs);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return std::max(1, std::min<int>(runs, hw == 0 ? 1 : static_cast<int>(hw)));
}

void cmd_ga(const GaOpts& o) {
    const Dataset ds = load_csv(o.dataset).data;
    std::optional<Partition> truth;
    if (!o.truth.empty())
        truth = load_labels_csv(o.truth);
    const AriNoisePolicy policy = ari_policy_from_string(o.ari_noise);
    const Kernel kernel = kernel_from_string(o.kernel);
    if (o.runs < 1)
        throw std::invalid_argument("--runs must be at least 1");
    const std::string criterion_spec =
        o.criterion.empty() ? "nkcv2-k" + std::to_string(o.k) : o.criterion;

    GaConfig base;
    base.pop_size = o.pop;
    base.crossover_prob = o.pc;
    base.k_param = o.k;
    base.cutoff_fraction = o.cutoff;
    base.kernel = kernel;
    base.stop = parse_stop(o.stop, ds.n());

    // One context serves every run; it is read-only after construction.
    const EvalContext ctx = EvalContext::build(ds, o.k, o.cutoff, kernel);

    std::vector<RunResult> results(static_cast<std::size_t>(o.runs));
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::string first_error;
    const int workers = worker_count(o.runs);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int idx = next++; idx < o.runs; idx = next++) {
                try {
                    GaConfig cfg = base;
                    cfg.seed = o.seed + static_cast<std::uint64_t>(idx);
                    results[static_cast<std::size_t>(idx)] = run_ga(ctx, cfg);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (first_error.empty())
                        first_error = e.what();
                }
            }
        });
    for (std::thread& t : pool)
        t.join();
    if (!first_error.empty())
        throw std::runtime_error("GA run failed: " + first_error);

    const fs::path dir(o.out);
    fs::create_directories(dir);

    const json config = {{"dataset", o.dataset}, {"truth", o.truth},
                         {"out", o.out},         {"k", o.k},
                         {"pc", o.pc},           {"pop", o.pop},
                         {"runs", o.runs},       {"seed", o.seed},
                         {"stop", o.stop},       {"stop_resolved", stop_to_json(base.stop)},
                         {"criterion", criterion_spec},
                         {"ari_noise", o.ari_noise},
                         {"cutoff", o.cutoff},   {"kernel", o.kernel}};

    std::vector<double> fitnesses, aris;
    json run_rows = json::array();
    for (int i = 0; i < o.runs; ++i) {
        const RunResult& r = results[static_cast<std::size_t>(i)];
        const std::string labels_rel = "labels_run_" + std::to_string(i) + ".csv";
        write_labels_csv((dir / labels_rel).string(), r.best);

        json run = {{"schema_version", kSchemaVersion},
                    {"command", "ga"},
                    {"config", config},
                    {"run_index", i},
                    {"seed", r.seed},
                    {"best_fitness", r.best_fitness},
                    {"generations", r.generations},
                    {"evaluations", r.evaluations},
                    {"clusters", count_clusters(r.best)},
                    {"fitness_trace", r.fitness_trace},
                    {"labels_file", labels_rel},
                    {"labels", r.best.labels}};
        fitnesses.push_back(r.best_fitness);
        if (truth) {
            const double ari = adjusted_rand_index(r.best, *truth, policy);
            run["ari"] = ari;
            run["truth_clusters"] = count_clusters(*truth);
            aris.push_back(ari);
        }
        write_json_file(dir / ("run_" + std::to_string(i) + ".json"), run);
        run_rows.push_back({{"run", i},
                            {"seed", r.seed},
                            {"fitness", r.best_fitness},
                            {"evaluations", r.evaluations},
                            {"generations", r.generations},
                            {"clusters", count_clusters(r.best)}});
        if (truth)
            run_rows.back()["ari"] = aris.back();
    }

    // Best run under the chosen internal criterion (defaults to the GA's own
    // objective, in which case the scores equal the stored fitnesses).
    CandidateSet run_bests;
    for (int i = 0; i < o.runs; ++i)
        run_bests.candidates.push_back({results[static_cast<std::size_t>(i)].best, "ga",
                                        "run=" + std::to_string(i)});
    CriterionFactory factory(ds, o.cutoff, kernel);
    const Criterion crit = factory.make(criterion_spec);
    const SelectionResult sel = select_best(run_bests, crit);

    json summary_block = {{"fitness_mean", mean_of(fitnesses)},
                          {"fitness_std", std_of(fitnesses)},
                          {"fitness_best", *std::min_element(fitnesses.begin(), fitnesses.end())},
                          {"best_run", sel.best_index},
                          {"criterion", criterion_spec},
                          {"criterion_scores", sel.scores}};
    if (truth) {
        summary_block["ari_mean"] = mean_of(aris);
        summary_block["ari_std"] = std_of(aris);
        summary_block["ari_best_run"] = aris[sel.best_index];
    }

    write_json_file(dir / "summary.json", {{"schema_version", kSchemaVersion},
                                           {"command", "ga"},
                                           {"config", config},
                                           {"runs", run_rows},
                                           {"summary", summary_block}});

    std::ofstream csv(dir / "summary.csv");
    csv << std::setprecision(std::numeric_limits<double>::max_digits10);
    csv << "run,seed,fitness,evaluations,generations,clusters";
    if (truth)
        csv << ",ari";
    csv << '\n';
    for (int i = 0; i < o.runs; ++i) {
        const RunResult& r = results[static_cast<std::size_t>(i)];
        csv << i << ',' << r.seed << ',' << r.best_fitness << ',' << r.evaluations << ','
            << r.generations << ',' << count_clusters(r.best);
        if (truth)
            csv << ',' << aris[static_cast<std::size_t>(i)];
        csv << '\n';
    }
    if (!csv)
        throw std::runtime_error("failed while writing summary.csv");

    std::cout << "wrote " << (dir / "summary.json").string() << " (" << o.runs << " runs, best run "
              << sel.best_index << ")\n";
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateOpts {
    std::string pred;
    std::string truth;
    std::string dataset;
    std::string out;
    int k = 3;
    std::string ari_noise = "cluster";
    double cutoff = 0.02;
    std::string kernel = "gaussian";
};

void cmd_evaluate(const EvaluateOpts& o) {
    const Partition pred = load_labels_csv(o.pred);
    const Partition truth = load_labels_csv(o.truth);
    const AriNoisePolicy policy = ari_policy_from_string(o.ari_noise);

    json report = {{"schema_version", kSchemaVersion},
                   {"command", "evaluate"},
                   {"pred", o.pred},
                   {"truth", o.truth},
                   {"ari_noise", o.ari_noise},
                   {"ari", adjusted_rand_index(pred, truth, policy)},
                   {"pred_clusters", count_clusters(pred)},
                   {"truth_clusters", count_clusters(truth)},
                   {"count_hit", count_clusters(pred) == count_clusters(truth)}};

    if (!o.dataset.empty()) {
        const Dataset ds = load_csv(o.dataset).data;
        if (ds.n() != pred.size())
            throw std::invalid_argument("dataset has " + std::to_string(ds.n()) +
                                        " rows but predictions have " +
                                        std::to_string(pred.size()));
        const EvalContext ctx = EvalContext::build(ds, o.k, o.cutoff,
                                                   kernel_from_string(o.kernel));
        report["k"] = o.k;
        report["nkcv2"] = evaluate(pred, ctx);
        report["silhouette"] = silhouette_width(pred, ctx.dm);
    }

    std::cout << report.dump(2) << '\n';
    if (!o.out.empty())
        write_json_file(o.out, report);
}

// ---------------------------------------------------------------------------
// cluster (single baseline run)

struct ClusterOpts {
    std::string dataset;
    std::string truth;
    std::string out;
    std::string algo;
    int k = 2;
    int restarts = 20;
    double eps = 1.0;
    int min_pts = 4;
    int prototypes = 2;
    std::uint64_t seed = 1;
    std::string ari_noise = "cluster";
    double cutoff = 0.02;
    std::string kernel = "gaussian";
};

void cmd_cluster(const ClusterOpts& o) {
    const Dataset ds = load_csv(o.dataset).data;
    std::optional<Partition> truth;
    if (!o.truth.empty())
        truth = load_labels_csv(o.truth);

    Partition part(ds.n());
    json extras;
    std::string params;
    Rng rng(o.seed);
    if (o.algo == "kmeans") {
        const KmeansResult res = kmeans(ds, o.k, o.restarts, rng);
        part = res.part;
        params = "k=" + std::to_string(o.k) + ",restarts=" + std::to_string(o.restarts);
        extras = {{"objective", res.objective}, {"iterations", res.iterations}};
    } else if (o.algo == "dbscan") {
        part = dbscan(ds, o.eps, o.min_pts);
        std::ostringstream p;
        p << "eps=" << o.eps << ",min_pts=" << o.min_pts;
        params = p.str();
    } else if (o.algo == "dp") {
        part = density_peaks(ds, o.prototypes, o.cutoff, kernel_from_string(o.kernel));
        params = "n_prototypes=" + std::to_string(o.prototypes);
    } else {
        throw std::invalid_argument("unknown algorithm '" + o.algo +
                                    "' (expected kmeans|dbscan|dp)");
    }

    const fs::path dir(o.out);
    fs::create_directories(dir);
    write_labels_csv((dir / "labels.csv").string(), part);

    json report = {{"schema_version", kSchemaVersion},
                   {"command", "cluster"},
                   {"config",
                    {{"dataset", o.dataset},
                     {"truth", o.truth},
                     {"out", o.out},
                     {"algo", o.algo},
                     {"params", params},
                     {"seed", o.seed}}},
                   {"clusters", count_clusters(part)},
                   {"labels_file", "labels.csv"}};
    if (!extras.is_null())
        report["result"] = extras;
    if (truth) {
        report["ari"] = adjusted_rand_index(part, *truth, ari_policy_from_string(o.ari_noise));
        report["truth_clusters"] = count_clusters(*truth);
    }
    write_json_file(dir / "report.json", report);
    std::cout << "wrote " << (dir / "report.json").string() << " (" << count_clusters(part)
              << " clusters)\n";
}

// ---------------------------------------------------------------------------
// inspect (interaction-graph dump)

struct InspectOpts {
    std::string dataset;
    std::string out;
    int k = 3;
    double cutoff = 0.02;
    std::string kernel = "gaussian";
};

void cmd_inspect(const InspectOpts& o) {
    const Dataset ds = load_csv(o.dataset).data;
    const EvalContext ctx = EvalContext::build(ds, o.k, o.cutoff, kernel_from_string(o.kernel));

    const fs::path dir(o.out);
    fs::create_directories(dir);
    std::ofstream edges(dir / "edges.csv");
    write_edge_list(edges, ctx.graph);
    if (!edges)
        throw std::runtime_error("failed while writing edges.csv");

    write_json_file(dir / "graph.json",
                    {{"schema_version", kSchemaVersion},
                     {"command", "inspect"},
                     {"config",
                      {{"dataset", o.dataset},
                       {"out", o.out},
                       {"k", o.k},
                       {"cutoff", o.cutoff},
                       {"kernel", o.kernel}}},
                     {"n", ctx.n()},
                     {"k_out", ctx.graph.k_out()},
                     {"epsilon", ctx.profile.epsilon},
                     {"thresholds",
                      {{"c1", ctx.thresholds.c1},
                       {"c2", ctx.thresholds.c2},
                       {"c3", ctx.thresholds.c3},
                       {"c_rho", ctx.thresholds.c_rho}}}});
    std::cout << "wrote " << (dir / "edges.csv").string() << " (" << ctx.n() * (ctx.k() + 1)
              << " edges)\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"NK-landscape clustering engine and experiment harness"};
    app.require_subcommand(1);

    GenerateOpts gen;
    CLI::App* g = app.add_subcommand("generate", "draw a Gaussian-model benchmark dataset");
    g->add_option("--out", gen.out, "output directory")->required();
    g->add_option("--clusters", gen.clusters, "number of clusters");
    g->add_option("--dims", gen.dims, "attribute count");
    g->add_option("--n", gen.n, "total objects, noise included");
    g->add_option("--noise", gen.noise, "noise fraction in [0,1)");
    g->add_option("--balance", gen.balance, "cluster size profile")
        ->check(CLI::IsMember({"equal", "first10pct", "first60pct"}));
    g->add_option("--seed", gen.seed, "generator seed");

    SweepOpts sweep;
    CLI::App* s = app.add_subcommand("sweep", "candidate grid + per-criterion best selection");
    s->add_option("--dataset", sweep.dataset, "dataset CSV")->required();
    s->add_option("--truth", sweep.truth, "ground-truth label file (one label per line)");
    s->add_option("--out", sweep.out, "output directory")->required();
    s->add_option("--criterion", sweep.criteria,
                  "criterion spec, repeatable (default: nkcv2-k2 nkcv2-k3 nkcv2-k4 silhouette)");
    s->add_option("--seed", sweep.seed, "seed for the candidate algorithms");
    s->add_option("--ari-noise", sweep.ari_noise, "ARI noise handling")
        ->check(CLI::IsMember({"cluster", "ignore"}));
    s->add_option("--cutoff", sweep.cutoff, "density cutoff fraction");
    s->add_option("--kernel", sweep.kernel, "density kernel")
        ->check(CLI::IsMember({"gaussian", "flat"}));

    GaOpts ga;
    CLI::App* a = app.add_subcommand("ga", "hybrid GA experiment (R independent runs)");
    a->add_option("--dataset", ga.dataset, "dataset CSV")->required();
    a->add_option("--truth", ga.truth, "ground-truth label file");
    a->add_option("--out", ga.out, "output directory")->required();
    a->add_option("--K", ga.k, "interaction-graph group size parameter");
    a->add_option("--pc", ga.pc, "crossover probability");
    a->add_option("--pop", ga.pop, "population size");
    a->add_option("--runs", ga.runs, "independent runs");
    a->add_option("--seed", ga.seed, "base seed; run r uses seed+r");
    a->add_option("--stop", ga.stop, "budget: secs:X|gens:X|evals:X (secs:auto = N/2 seconds)");
    a->add_option("--criterion", ga.criterion, "best-run selection criterion (default nkcv2-k<K>)");
    a->add_option("--ari-noise", ga.ari_noise, "ARI noise handling")
        ->check(CLI::IsMember({"cluster", "ignore"}));
    a->add_option("--cutoff", ga.cutoff, "density cutoff fraction");
    a->add_option("--kernel", ga.kernel, "density kernel")
        ->check(CLI::IsMember({"gaussian", "flat"}));

    EvaluateOpts ev;
    CLI::App* e = app.add_subcommand("evaluate", "score a predicted labelling against truth");
    e->add_option("--pred", ev.pred, "predicted label file")->required();
    e->add_option("--truth", ev.truth, "ground-truth label file")->required();
    e->add_option("--dataset", ev.dataset, "dataset CSV (enables silhouette and NKCV2)");
    e->add_option("--K", ev.k, "group size parameter for NKCV2");
    e->add_option("--out", ev.out, "also write the report JSON here");
    e->add_option("--ari-noise", ev.ari_noise, "ARI noise handling")
        ->check(CLI::IsMember({"cluster", "ignore"}));
    e->add_option("--cutoff", ev.cutoff, "density cutoff fraction");
    e->add_option("--kernel", ev.kernel, "density kernel")
        ->check(CLI::IsMember({"gaussian", "flat"}));

    ClusterOpts cl;
    CLI::App* c = app.add_subcommand("cluster", "run one baseline algorithm");
    c->add_option("--dataset", cl.dataset, "dataset CSV")->required();
    c->add_option("--truth", cl.truth, "ground-truth label file");
    c->add_option("--out", cl.out, "output directory")->required();
    c->add_option("--algo", cl.algo, "algorithm")->required()
        ->check(CLI::IsMember({"kmeans", "dbscan", "dp"}));
    c->add_option("--k", cl.k, "k-means cluster count");
    c->add_option("--restarts", cl.restarts, "k-means restarts");
    c->add_option("--eps", cl.eps, "dbscan radius");
    c->add_option("--min-pts", cl.min_pts, "dbscan core threshold");
    c->add_option("--prototypes", cl.prototypes, "density-peaks prototype count");
    c->add_option("--seed", cl.seed, "seed for randomised algorithms");
    c->add_option("--ari-noise", cl.ari_noise, "ARI noise handling")
        ->check(CLI::IsMember({"cluster", "ignore"}));
    c->add_option("--cutoff", cl.cutoff, "density cutoff fraction");
    c->add_option("--kernel", cl.kernel, "density kernel")
        ->check(CLI::IsMember({"gaussian", "flat"}));

    InspectOpts in;
    CLI::App* i = app.add_subcommand("inspect", "dump the interaction graph and thresholds");
    i->add_option("--dataset", in.dataset, "dataset CSV")->required();
    i->add_option("--out", in.out, "output directory")->required();
    i->add_option("--K", in.k, "group size parameter");
    i->add_option("--cutoff", in.cutoff, "density cutoff fraction");
    i->add_option("--kernel", in.kernel, "density kernel")
        ->check(CLI::IsMember({"gaussian", "flat"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (g->parsed())
            cmd_generate(gen);
        else if (s->parsed())
            cmd_sweep(sweep);
        else if (a->parsed())
            cmd_ga(ga);
        else if (e->parsed())
            cmd_evaluate(ev);
        else if (c->parsed())
            cmd_cluster(cl);
        else if (i->parsed())
            cmd_inspect(in);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
    return 0;
}
