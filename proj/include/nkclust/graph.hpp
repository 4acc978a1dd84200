#pragma once

#include <iosfwd>

#include "nkclust/density.hpp"
#include "nkclust/types.hpp"

namespace nkclust {

// Sparse interaction structure of the criterion: subfunction i depends on the
// group M_i = {i, nhd(i)} plus the nearest remaining objects until
// |M_i| = K+1. Distance ties resolve to the lower index, so the graph is a
// deterministic function of (distances, densities, K).
class InteractionGraph {
public:
    static InteractionGraph build(const DistanceMatrix& dm, const DensityProfile& prof, int k);

    int k() const { return k_; }
    std::size_t n() const { return n_; }

    // Members of M_i, ascending, always containing i. Size k()+1.
    std::span<const std::int32_t> group(std::size_t i) const {
        return {groups_.data() + i * (k_ + 1), static_cast<std::size_t>(k_ + 1)};
    }

    // Subfunctions that read position j (i.e. all p with j in M_p, including
    // p == j). Ascending.
    std::span<const std::int32_t> out_edges(std::size_t j) const {
        return {out_edges_.data() + out_offsets_[j],
                static_cast<std::size_t>(out_offsets_[j + 1] - out_offsets_[j])};
    }

    // Start of j's slice in the out-edge CSR (for arrays aligned with it).
    std::size_t out_offset(std::size_t j) const {
        return static_cast<std::size_t>(out_offsets_[j]);
    }

    // Maximum out-degree: the largest number of groups any position appears in.
    int k_out() const { return k_out_; }

private:
    int k_ = 0;
    std::size_t n_ = 0;
    int k_out_ = 0;
    std::vector<std::int32_t> groups_;      // n * (k+1), each group sorted
    std::vector<std::int32_t> out_offsets_; // n + 1 (CSR)
    std::vector<std::int32_t> out_edges_;   // n * (k+1) incidences
};

// Writes "i,j" lines (0-based) meaning j is a member of M_i, self-loops
// included. For plotting / inspection.
void write_edge_list(std::ostream& out, const InteractionGraph& g);

// Distance thresholds of the scoring function, derived from the within-group
// distances (mean m_y, population std s_y over all d(i,j), j in M_i, j != i):
// c1 = m_y, c2 = m_y + s_y, c3 = m_y + 2 s_y. The density floor c_rho is
// m_rho - s_rho when positive, otherwise m_rho / 2.
struct Thresholds {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double c_rho = 0.0;
};

Thresholds compute_thresholds(const DistanceMatrix& dm, const InteractionGraph& g,
                              std::span<const double> rho);

} // namespace nkclust
