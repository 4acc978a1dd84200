// Python bindings for the core operations: dataset generation and I/O, the
// decomposable criterion (full and incremental evaluation), the baseline
// algorithms, the validation metrics and the hybrid GA.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nkclust/baselines.hpp"
#include "nkclust/dataset.hpp"
#include "nkclust/ga.hpp"
#include "nkclust/validation.hpp"

namespace py = pybind11;
using namespace nkclust;

namespace {

Dataset dataset_from_rows(const std::vector<std::vector<double>>& rows) {
    return Dataset::from_rows(rows);
}

Partition partition_from_labels(const std::vector<Label>& labels) {
    return Partition(labels);
}

Kernel kernel_arg(const std::string& s) {
    if (s == "gaussian")
        return Kernel::Gaussian;
    if (s == "flat")
        return Kernel::Flat;
    throw std::invalid_argument("kernel must be 'gaussian' or 'flat'");
}

AriNoisePolicy policy_arg(const std::string& s) {
    if (s == "cluster")
        return AriNoisePolicy::NoiseAsCluster;
    if (s == "ignore")
        return AriNoisePolicy::IgnoreNoiseObjects;
    throw std::invalid_argument("noise policy must be 'cluster' or 'ignore'");
}

} // namespace

PYBIND11_MODULE(nkclust, m) {
    m.doc() = "clustering engine: decomposable criterion, hybrid GA, baselines";

    py::class_<Dataset>(m, "Dataset")
        .def(py::init(&dataset_from_rows), py::arg("rows"))
        .def_property_readonly("n", &Dataset::n)
        .def_property_readonly("dims", &Dataset::dims)
        .def("row",
             [](const Dataset& ds, std::size_t i) {
                 if (i >= ds.n())
                     throw py::index_error();
                 const auto r = ds.row(i);
                 return std::vector<double>(r.begin(), r.end());
             },
             py::arg("i"))
        .def("__len__", &Dataset::n);

    py::class_<Partition>(m, "Partition")
        .def(py::init(&partition_from_labels), py::arg("labels"))
        .def_property_readonly("labels",
                               [](const Partition& p) { return p.labels; })
        .def("__len__", &Partition::size)
        .def("__getitem__",
             [](const Partition& p, std::size_t i) {
                 if (i >= p.size())
                     throw py::index_error();
                 return p[i];
             })
        .def("__eq__", [](const Partition& a, const Partition& b) { return a == b; });

    py::class_<GeneratedData>(m, "GeneratedData")
        .def_readonly("data", &GeneratedData::data)
        .def_readonly("truth", &GeneratedData::truth);

    m.def(
        "generate_gaussian_model",
        [](int clusters, int dims, int n, const std::string& balance, double noise,
           std::uint64_t seed) {
            GaussianModelConfig cfg;
            cfg.n_clusters = clusters;
            cfg.dims = dims;
            cfg.n_objects = n;
            cfg.balance = balance_from_string(balance);
            cfg.noise_fraction = noise;
            cfg.seed = seed;
            return generate_gaussian_model(cfg);
        },
        py::arg("clusters") = 2, py::arg("dims") = 2, py::arg("n") = 800,
        py::arg("balance") = "equal", py::arg("noise") = 0.0, py::arg("seed") = 1,
        "Draw a benchmark dataset from the Gaussian generative model.");

    m.def(
        "load_csv",
        [](const std::string& path, bool label_column) {
            const CsvData csv = load_csv(path, label_column);
            return py::make_tuple(csv.data, csv.labels);
        },
        py::arg("path"), py::arg("label_column") = false,
        "Load a numeric CSV; returns (Dataset, labels-or-None).");

    py::class_<EvalContext>(m, "EvalContext")
        .def(py::init([](const Dataset& ds, int k, double cutoff, const std::string& kernel) {
                 return EvalContext::build(ds, k, cutoff, kernel_arg(kernel));
             }),
             py::arg("dataset"), py::arg("k") = 3, py::arg("cutoff") = 0.02,
             py::arg("kernel") = "gaussian")
        .def_property_readonly("n", &EvalContext::n)
        .def_property_readonly("k", &EvalContext::k)
        .def_property_readonly("epsilon",
                               [](const EvalContext& c) { return c.profile.epsilon; })
        .def_property_readonly("thresholds", [](const EvalContext& c) {
            return py::make_tuple(c.thresholds.c1, c.thresholds.c2, c.thresholds.c3,
                                  c.thresholds.c_rho);
        })
        .def("group", [](const EvalContext& c, std::size_t i) {
            if (i >= c.n())
                throw py::index_error();
            const auto g = c.graph.group(i);
            return std::vector<std::size_t>(g.begin(), g.end());
        });

    m.def("evaluate", [](const Partition& p, const EvalContext& ctx) { return evaluate(p, ctx); },
          py::arg("partition"), py::arg("context"),
          "Full criterion value (lower is better).");
    m.def(
        "delta_evaluate",
        [](const Partition& p, std::size_t i, Label to, const EvalContext& ctx) {
            return delta_evaluate(p, i, to, ctx);
        },
        py::arg("partition"), py::arg("i"), py::arg("to"), py::arg("context"),
        "Criterion change if object i moved to label `to`.");

    m.def(
        "adjusted_rand_index",
        [](const Partition& a, const Partition& b, const std::string& noise) {
            return adjusted_rand_index(a, b, policy_arg(noise));
        },
        py::arg("a"), py::arg("b"), py::arg("noise") = "cluster");
    m.def(
        "silhouette_width",
        [](const Partition& p, const Dataset& ds) {
            return silhouette_width(p, pairwise_distances(ds));
        },
        py::arg("partition"), py::arg("dataset"));
    m.def("count_clusters", &count_clusters, py::arg("partition"));

    m.def(
        "kmeans",
        [](const Dataset& ds, int k, int restarts, std::uint64_t seed) {
            Rng rng(seed);
            const KmeansResult res = kmeans(ds, k, restarts, rng);
            return py::make_tuple(res.part, res.objective);
        },
        py::arg("dataset"), py::arg("k"), py::arg("restarts") = 20, py::arg("seed") = 1,
        "Best-of-restarts Lloyd; returns (Partition, objective).");
    m.def(
        "dbscan",
        [](const Dataset& ds, double eps, int min_pts) { return dbscan(ds, eps, min_pts); },
        py::arg("dataset"), py::arg("eps"), py::arg("min_pts"));
    m.def(
        "density_peaks",
        [](const Dataset& ds, int n_prototypes, double cutoff, const std::string& kernel) {
            return density_peaks(ds, n_prototypes, cutoff, kernel_arg(kernel));
        },
        py::arg("dataset"), py::arg("n_prototypes"), py::arg("cutoff") = 0.02,
        py::arg("kernel") = "gaussian");
    m.def(
        "candidate_grid",
        [](const Dataset& ds, std::uint64_t seed) {
            Rng rng(seed);
            const CandidateSet set = candidate_grid(ds, rng);
            std::vector<py::tuple> out;
            out.reserve(set.size());
            for (const Candidate& c : set.candidates)
                out.push_back(py::make_tuple(c.part, c.algorithm, c.params));
            return out;
        },
        py::arg("dataset"), py::arg("seed") = 1,
        "Standard baseline sweep; returns [(Partition, algorithm, params), ...].");

    m.def(
        "run_ga",
        [](const EvalContext& ctx, int pop, double pc, const std::string& stop_kind,
           double stop_value, std::uint64_t seed) {
            GaConfig cfg;
            cfg.pop_size = pop;
            cfg.crossover_prob = pc;
            cfg.k_param = ctx.k();
            cfg.seed = seed;
            if (stop_kind == "generations")
                cfg.stop = StopRule::generations(static_cast<long long>(stop_value));
            else if (stop_kind == "evaluations")
                cfg.stop = StopRule::evaluations(static_cast<long long>(stop_value));
            else if (stop_kind == "seconds")
                cfg.stop = StopRule::wall_clock(stop_value);
            else
                throw std::invalid_argument(
                    "stop_kind must be 'generations', 'evaluations' or 'seconds'");
            const RunResult res = run_ga(ctx, cfg);
            py::dict out;
            out["best"] = res.best;
            out["best_fitness"] = res.best_fitness;
            out["fitness_trace"] = res.fitness_trace;
            out["generations"] = res.generations;
            out["evaluations"] = res.evaluations;
            out["seed"] = res.seed;
            return out;
        },
        py::arg("context"), py::arg("pop") = 100, py::arg("pc") = 0.6,
        py::arg("stop_kind") = "generations", py::arg("stop_value") = 200, py::arg("seed") = 1,
        "One hybrid-GA run against a prebuilt context; returns a result dict.");
}
