#include "nkclust/baselines.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <numeric>

namespace nkclust {

namespace {

std::vector<std::size_t> forgy_seeds(std::size_t n, int k, Rng& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (int i = 0; i < k; ++i) {
        const std::size_t j =
            std::uniform_int_distribution<std::size_t>(i, n - 1)(rng);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

} // namespace

KmeansResult kmeans_single(const Dataset& ds, int k, Rng& rng, int max_iter) {
    const std::size_t n = ds.n();
    const std::size_t dims = ds.dims();
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw std::invalid_argument("kmeans: k must be in [1, n]");
    if (max_iter < 1)
        throw std::invalid_argument("kmeans: max_iter must be >= 1");

    std::vector<double> centroids(static_cast<std::size_t>(k) * dims);
    {
        const auto seeds = forgy_seeds(n, k, rng);
        for (int c = 0; c < k; ++c) {
            const auto row = ds.row(seeds[c]);
            std::copy(row.begin(), row.end(), centroids.begin() + static_cast<std::size_t>(c) * dims);
        }
    }

    KmeansResult res;
    std::vector<int> assign(n, -1), prev(n, -1);
    std::vector<std::size_t> sizes(k, 0);

    auto centroid = [&](int c) {
        return std::span<const double>(centroids.data() + static_cast<std::size_t>(c) * dims,
                                       dims);
    };
    auto assign_all = [&]() {
        std::fill(sizes.begin(), sizes.end(), std::size_t{0});
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = ds.row(i);
            int best = 0;
            double best_d = squared_euclidean(row, centroid(0));
            for (int c = 1; c < k; ++c) {
                const double d = squared_euclidean(row, centroid(c));
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            assign[i] = best;
            ++sizes[best];
        }
    };
    auto objective = [&]() {
        double obj = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            obj += squared_euclidean(ds.row(i), centroid(assign[i]));
        return obj;
    };

    for (int iter = 0; iter < max_iter; ++iter) {
        assign_all();

        // Re-seed empty clusters at the point farthest from its assigned
        // centroid; at most k passes (each pass fills at least one cluster).
        for (int pass = 0; pass < k; ++pass) {
            int empty = -1;
            for (int c = 0; c < k; ++c)
                if (sizes[c] == 0) {
                    empty = c;
                    break;
                }
            if (empty < 0)
                break;
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = squared_euclidean(ds.row(i), centroid(assign[i]));
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            std::copy(ds.row(far).begin(), ds.row(far).end(),
                      centroids.begin() + static_cast<std::size_t>(empty) * dims);
            assign_all();
        }

        res.iterations = iter + 1;
        res.objective_trace.push_back(objective());
        if (assign == prev)
            break;
        prev = assign;

        // Update step: centroids move to the mean of their members.
        std::fill(centroids.begin(), centroids.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double* c = centroids.data() + static_cast<std::size_t>(assign[i]) * dims;
            const auto row = ds.row(i);
            for (std::size_t d = 0; d < dims; ++d)
                c[d] += row[d];
        }
        for (int c = 0; c < k; ++c)
            if (sizes[c] > 0)
                for (std::size_t d = 0; d < dims; ++d)
                    centroids[static_cast<std::size_t>(c) * dims + d] /=
                        static_cast<double>(sizes[c]);
    }

    res.objective = res.objective_trace.back();
    res.part = Partition(n);
    for (std::size_t i = 0; i < n; ++i)
        res.part[i] = static_cast<Label>(assign[i] + 1);
    return res;
}

KmeansResult kmeans(const Dataset& ds, int k, int restarts, Rng& rng, int max_iter) {
    if (restarts < 1)
        throw std::invalid_argument("kmeans: restarts must be >= 1");
    KmeansResult best;
    for (int r = 0; r < restarts; ++r) {
        KmeansResult run = kmeans_single(ds, k, rng, max_iter);
        if (r == 0 || run.objective < best.objective)
            best = std::move(run);
    }
    return best;
}

Partition dbscan(const DistanceMatrix& dm, double eps, int min_pts) {
    if (!(eps > 0.0))
        throw std::invalid_argument("dbscan: eps must be positive");
    if (min_pts < 1)
        throw std::invalid_argument("dbscan: min_pts must be >= 1");
    const std::size_t n = dm.n();

    std::vector<std::uint8_t> core(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = dm.row(i);
        std::size_t count = 0;
        for (std::size_t j = 0; j < n; ++j)
            count += row[j] <= eps ? 1 : 0; // self included
        core[i] = count >= static_cast<std::size_t>(min_pts) ? 1 : 0;
    }

    Partition labels(n, 0);
    Label next = 0;
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] != 0 || !core[i])
            continue;
        labels[i] = ++next;
        queue.assign(1, i);
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            if (!core[u])
                continue; // border points join but do not expand
            const auto row = dm.row(u);
            for (std::size_t v = 0; v < n; ++v) {
                if (row[v] <= eps && labels[v] == 0) {
                    labels[v] = next;
                    queue.push_back(v);
                }
            }
        }
    }
    return labels;
}

Partition dbscan(const Dataset& ds, double eps, int min_pts) {
    return dbscan(DistanceMatrix::compute(ds), eps, min_pts);
}

Partition density_peaks(const DistanceMatrix& dm, const DensityProfile& prof, int n_prototypes) {
    const std::size_t n = dm.n();
    if (n_prototypes < 1 || static_cast<std::size_t>(n_prototypes) > n)
        throw std::invalid_argument("density_peaks: n_prototypes must be in [1, n]");

    // Prototypes: largest gamma = rho * delta (ties: lower index).
    std::vector<std::size_t> by_gamma(n);
    std::iota(by_gamma.begin(), by_gamma.end(), std::size_t{0});
    std::stable_sort(by_gamma.begin(), by_gamma.end(), [&](std::size_t a, std::size_t b) {
        return prof.rho[a] * prof.delta[a] > prof.rho[b] * prof.delta[b];
    });

    Partition labels(n, 0);
    std::vector<std::size_t> protos(by_gamma.begin(), by_gamma.begin() + n_prototypes);
    for (int p = 0; p < n_prototypes; ++p)
        labels[protos[p]] = static_cast<Label>(p + 1);

    // Everyone else inherits from its nearest higher-density object, walking
    // in decreasing density order so the target is always labelled first.
    std::vector<std::size_t> by_density(n);
    std::iota(by_density.begin(), by_density.end(), std::size_t{0});
    std::sort(by_density.begin(), by_density.end(), [&](std::size_t a, std::size_t b) {
        return denser(a, b, prof.rho);
    });
    for (std::size_t i : by_density) {
        if (labels[i] != 0)
            continue;
        const std::size_t target = static_cast<std::size_t>(prof.nhd[i]);
        if (labels[target] != 0) {
            labels[i] = labels[target];
        } else {
            // Only the density maximum can point at an unlabelled object (its
            // nhd is merely its nearest neighbour); snap it to the nearest
            // prototype instead.
            std::size_t best = protos[0];
            for (std::size_t p : protos)
                if (dm.at(i, p) < dm.at(i, best) || (dm.at(i, p) == dm.at(i, best) && p < best))
                    best = p;
            labels[i] = labels[best];
        }
    }
    return labels;
}

Partition density_peaks(const Dataset& ds, int n_prototypes, double cutoff_fraction,
                        Kernel kernel) {
    const DistanceMatrix dm = DistanceMatrix::compute(ds);
    const DensityProfile prof = DensityProfile::build(dm, cutoff_fraction, kernel);
    return density_peaks(dm, prof, n_prototypes);
}

namespace {

std::string fmt_param(const char* key, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s=%.17g", key, v);
    return buf;
}

// Mean distance to the k-th nearest neighbour (self excluded) over all
// objects.
double mean_knn_distance(const DistanceMatrix& dm, std::size_t k) {
    const std::size_t n = dm.n();
    k = std::min(k, n - 1);
    std::vector<double> row(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = dm.row(i);
        row.assign(r.begin(), r.end());
        // The self distance 0 occupies rank 0, so the k-th neighbour sits at
        // index k of the sorted row.
        std::nth_element(row.begin(), row.begin() + k, row.end());
        sum += row[k];
    }
    return sum / static_cast<double>(n);
}

} // namespace

CandidateSet candidate_grid(const Dataset& ds, Rng& rng, double cutoff_fraction, Kernel kernel) {
    const std::size_t n = ds.n();
    if (n < 9)
        throw std::invalid_argument("candidate_grid: need at least 9 objects");
    const int kmax = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));

    CandidateSet set;

    for (int k = 2; k <= kmax; ++k) {
        KmeansResult r = kmeans(ds, k, 20, rng);
        set.candidates.push_back(
            {std::move(r.part), "kmeans", "k=" + std::to_string(k)});
    }

    const DistanceMatrix dm = DistanceMatrix::compute(ds);
    {
        const std::size_t l = ds.dims();
        const std::array<int, 3> taus =
            l == 2 ? std::array<int, 3>{3, 4, 5}
                   : std::array<int, 3>{3, static_cast<int>(l) + 1, 2 * static_cast<int>(l)};
        const std::array<std::size_t, 3> knn = {static_cast<std::size_t>(taus[0]),
                                                static_cast<std::size_t>(5 * taus[1]),
                                                static_cast<std::size_t>(10 * taus[2])};
        std::array<double, 3> eps;
        for (int j = 0; j < 3; ++j)
            eps[j] = mean_knn_distance(dm, knn[j]);
        for (int j = 0; j < 3; ++j)
            for (int m = 0; m < 3; ++m)
                set.candidates.push_back({dbscan(dm, eps[j], taus[m]), "dbscan",
                                          fmt_param("eps", eps[j]) +
                                              ",min_pts=" + std::to_string(taus[m])});
    }

    const DensityProfile prof = DensityProfile::build(dm, cutoff_fraction, kernel);
    for (int p = 2; p <= kmax; ++p)
        set.candidates.push_back({density_peaks(dm, prof, p), "density_peaks",
                                  "n_prototypes=" + std::to_string(p)});
    return set;
}

} // namespace nkclust
