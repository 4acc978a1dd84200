#pragma once

#include "nkclust/graph.hpp"

namespace nkclust {

// Penalty for the (owner i, influencer j) pair given their labels, distance
// and densities. Three regimes:
//  - owner flagged noise: free only when j is far (d > c2) and i sits in a
//    low-density region (rho_i <= c_rho), otherwise costs rho_j;
//  - same cluster: free up to c1, then a linear ramp to rho_j at c3;
//  - different clusters: the mirror image (costly when close, free past c3).
// When c1 == c3 (zero distance spread) the ramp collapses to a step at c1.
inline double alpha(Label xi, Label xj, double d, double rho_i, double rho_j,
                    const Thresholds& t) {
    if (xi == 0)
        return (d > t.c2 && rho_i <= t.c_rho) ? 0.0 : rho_j;
    if (t.c3 <= t.c1) {
        if (xi == xj)
            return d < t.c1 ? 0.0 : rho_j;
        return d < t.c1 ? rho_j : 0.0;
    }
    if (xi == xj) {
        if (d < t.c1) return 0.0;
        if (d > t.c3) return rho_j;
        return (d - t.c1) / (t.c3 - t.c1) * rho_j;
    }
    if (d < t.c1) return rho_j;
    if (d > t.c3) return 0.0;
    return (t.c3 - d) / (t.c3 - t.c1) * rho_j;
}

// Everything the criterion needs about a dataset, built once and shared by
// all evaluations: distances, the density profile, the interaction graph,
// thresholds, and flat per-edge distance caches aligned with the graph's
// group table / out-edge CSR (so the hot paths never index the full matrix).
struct EvalContext {
    DistanceMatrix dm;
    DensityProfile profile;
    InteractionGraph graph;
    Thresholds thresholds;
    std::vector<double> group_dist; // d(i, member) per group slot
    std::vector<double> out_dist;   // d(owner, j) per out-edge slot of j

    static EvalContext build(const Dataset& ds, int k, double cutoff_fraction = 0.02,
                             Kernel kernel = Kernel::Gaussian);

    std::size_t n() const { return graph.n(); }
    int k() const { return graph.k(); }
};

// Score contribution of subfunction i: sum of alpha over i's group members.
double subfunction(std::size_t i, const Partition& x, const EvalContext& ctx);

// Full criterion value: sum of all subfunctions. Lower is better.
double evaluate(const Partition& x, const EvalContext& ctx);

// Exact fitness change from assigning label v to position i, computed from
// the subfunctions that read position i only: O(K + outdegree(i)) alpha
// terms instead of a full re-evaluation.
double delta_evaluate(const Partition& x, std::size_t i, Label v, const EvalContext& ctx);

} // namespace nkclust
