#pragma once

#include "nkclust/types.hpp"

namespace nkclust {

// Full symmetric Euclidean distance matrix, stored dense row-major.
class DistanceMatrix {
public:
    DistanceMatrix() = default;

    static DistanceMatrix compute(const Dataset& ds);

    double at(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {d_.data() + i * n_, n_}; }
    std::size_t n() const { return n_; }

private:
    std::vector<double> d_;
    std::size_t n_ = 0;
};

// Convenience wrapper matching the module's operation vocabulary.
inline DistanceMatrix pairwise_distances(const Dataset& ds) { return DistanceMatrix::compute(ds); }

enum class Kernel { Gaussian, Flat };

// Cutoff distance epsilon: the value at rank ceil(target_fraction * P) among
// the P = n(n-1)/2 sorted pairwise distances (rank 1 = smallest). If that
// value is zero (duplicate-heavy data) the smallest positive distance is used
// instead; a dataset with no positive distance at all is rejected.
double cutoff_distance(const DistanceMatrix& dm, double target_fraction = 0.02);

// Local density of each object. Gaussian: rho_i = sum_j exp(-d_ij^2 / (2 eps^2)),
// flat: rho_i = |{j : d_ij < eps}|. Both sums run over all j including i, so
// rho_i >= 1 always.
std::vector<double> local_densities(const DistanceMatrix& dm, double epsilon,
                                    Kernel kernel = Kernel::Gaussian);

// Density comparisons use a strict total order to break ties: object j beats
// i when rho_j > rho_i, or rho_j == rho_i and j < i.
inline bool denser(std::size_t j, std::size_t i, std::span<const double> rho) {
    return rho[j] > rho[i] || (rho[j] == rho[i] && j < i);
}

// Per object, the nearest object of higher density (`nhd`) and the distance
// to it (`delta`). The density maximum has no higher-density object; its nhd
// is its nearest neighbour overall and its delta is the largest pairwise
// distance in the dataset (so it ranks first on delta).
struct NearestHigher {
    std::vector<std::int32_t> nhd;
    std::vector<double> delta;
};

NearestHigher nearest_higher_density(const DistanceMatrix& dm, std::span<const double> rho);

// Densities and the nearest-higher-density lookup bundled together.
struct DensityProfile {
    std::vector<double> rho;
    std::vector<std::int32_t> nhd;
    std::vector<double> delta;
    double epsilon = 0.0;

    static DensityProfile build(const DistanceMatrix& dm, double target_fraction = 0.02,
                                Kernel kernel = Kernel::Gaussian);
};

} // namespace nkclust
