#pragma once

#include <string>

#include "nkclust/density.hpp"
#include "nkclust/types.hpp"

namespace nkclust {

struct KmeansResult {
    Partition part;
    double objective = 0.0; // sum of squared distances to assigned centroids
    int iterations = 0;
    std::vector<double> objective_trace; // objective after each assignment pass
};

// One Lloyd run from a Forgy initialisation (k distinct objects as seeds).
// Empty clusters are re-seeded at the point farthest from its assigned
// centroid. Stops when assignments stabilise or max_iter passes elapse.
KmeansResult kmeans_single(const Dataset& ds, int k, Rng& rng, int max_iter = 300);

// Best objective over `restarts` independent runs.
KmeansResult kmeans(const Dataset& ds, int k, int restarts, Rng& rng, int max_iter = 300);

// Classic density-based scan: core objects have at least min_pts neighbours
// within eps (d <= eps, self included); clusters grow from core objects in
// index order; unreachable objects keep the noise label 0.
Partition dbscan(const DistanceMatrix& dm, double eps, int min_pts);
Partition dbscan(const Dataset& ds, double eps, int min_pts);

// Density-peaks clustering: the n_prototypes objects with the largest
// gamma = rho * delta become prototypes (labels 1..n_prototypes in gamma
// order); every other object inherits the label of its nearest
// higher-density object, processed in decreasing density order.
Partition density_peaks(const DistanceMatrix& dm, const DensityProfile& prof, int n_prototypes);
Partition density_peaks(const Dataset& ds, int n_prototypes, double cutoff_fraction = 0.02,
                        Kernel kernel = Kernel::Gaussian);

struct Candidate {
    Partition part;
    std::string algorithm; // "kmeans" | "dbscan" | "density_peaks"
    std::string params;    // human-readable parameter summary
};

struct CandidateSet {
    std::vector<Candidate> candidates;
    std::size_t size() const { return candidates.size(); }
};

// Standard candidate sweep over a dataset with n objects and l dimensions:
//  - k-means for k = 2 .. floor(sqrt(n)), 20 restarts each;
//  - dbscan on a 3x3 grid: min_pts tau in {3,4,5} when l == 2, else
//    {3, l+1, 2l}; eps values are the mean k-NN distances at
//    k = tau_1, 5*tau_2, 10*tau_3 (clamped to n-1);
//  - density peaks for n_prototypes = 2 .. floor(sqrt(n)).
// Requires n >= 9 so the k ranges are non-trivial.
CandidateSet candidate_grid(const Dataset& ds, Rng& rng, double cutoff_fraction = 0.02,
                            Kernel kernel = Kernel::Gaussian);

} // namespace nkclust
