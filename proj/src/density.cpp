#include "nkclust/density.hpp"

#include <algorithm>
#include <cmath>

namespace nkclust {

DistanceMatrix DistanceMatrix::compute(const Dataset& ds) {
    DistanceMatrix dm;
    dm.n_ = ds.n();
    dm.d_.assign(dm.n_ * dm.n_, 0.0);
    for (std::size_t i = 0; i < dm.n_; ++i) {
        const auto ri = ds.row(i);
        for (std::size_t j = i + 1; j < dm.n_; ++j) {
            const double d = euclidean(ri, ds.row(j));
            dm.d_[i * dm.n_ + j] = d;
            dm.d_[j * dm.n_ + i] = d;
        }
    }
    return dm;
}

double cutoff_distance(const DistanceMatrix& dm, double target_fraction) {
    const std::size_t n = dm.n();
    if (n < 2)
        throw std::invalid_argument("cutoff_distance: need at least 2 objects");
    if (!(target_fraction > 0.0 && target_fraction <= 1.0))
        throw std::invalid_argument("cutoff_distance: target_fraction must be in (0,1]");

    std::vector<double> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pairs.push_back(dm.at(i, j));

    const std::size_t p = pairs.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(target_fraction * p));
    rank = std::clamp<std::size_t>(rank, 1, p);
    std::nth_element(pairs.begin(), pairs.begin() + (rank - 1), pairs.end());
    double eps = pairs[rank - 1];

    if (eps <= 0.0) {
        // Heavy duplication pushed the rank into the zero block; fall back to
        // the smallest positive distance.
        eps = std::numeric_limits<double>::infinity();
        for (double d : pairs)
            if (d > 0.0)
                eps = std::min(eps, d);
        if (!std::isfinite(eps))
            throw std::runtime_error(
                "cutoff_distance: all pairwise distances are zero (duplicate-only dataset)");
    }
    return eps;
}

std::vector<double> local_densities(const DistanceMatrix& dm, double epsilon, Kernel kernel) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("local_densities: epsilon must be positive");
    const std::size_t n = dm.n();
    std::vector<double> rho(n, 0.0);
    if (kernel == Kernel::Gaussian) {
        const double inv = 1.0 / (2.0 * epsilon * epsilon);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = dm.row(i);
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                s += std::exp(-row[j] * row[j] * inv);
            rho[i] = s; // includes the j == i term, exp(0) == 1
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = dm.row(i);
            std::size_t count = 0;
            for (std::size_t j = 0; j < n; ++j)
                count += row[j] < epsilon ? 1 : 0; // j == i always counts
            rho[i] = static_cast<double>(count);
        }
    }
    return rho;
}

NearestHigher nearest_higher_density(const DistanceMatrix& dm, std::span<const double> rho) {
    const std::size_t n = dm.n();
    if (rho.size() != n)
        throw std::invalid_argument("nearest_higher_density: rho size does not match matrix");

    NearestHigher out;
    out.nhd.assign(n, -1);
    out.delta.assign(n, 0.0);

    double d_max = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            d_max = std::max(d_max, dm.at(i, j));

    for (std::size_t i = 0; i < n; ++i) {
        const auto row = dm.row(i);
        std::size_t best = n;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !denser(j, i, rho))
                continue;
            if (row[j] < best_d || (row[j] == best_d && j < best)) {
                best = j;
                best_d = row[j];
            }
        }
        if (best == n) {
            // Density maximum: point at the nearest object overall; delta is
            // the global distance diameter so the maximum tops the delta rank.
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i)
                    continue;
                if (row[j] < best_d || (row[j] == best_d && j < best)) {
                    best = j;
                    best_d = row[j];
                }
            }
            out.nhd[i] = static_cast<std::int32_t>(best);
            out.delta[i] = d_max;
        } else {
            out.nhd[i] = static_cast<std::int32_t>(best);
            out.delta[i] = best_d;
        }
    }
    return out;
}

DensityProfile DensityProfile::build(const DistanceMatrix& dm, double target_fraction,
                                     Kernel kernel) {
    DensityProfile prof;
    prof.epsilon = cutoff_distance(dm, target_fraction);
    prof.rho = local_densities(dm, prof.epsilon, kernel);
    NearestHigher nh = nearest_higher_density(dm, prof.rho);
    prof.nhd = std::move(nh.nhd);
    prof.delta = std::move(nh.delta);
    return prof;
}

} // namespace nkclust
