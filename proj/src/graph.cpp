#include "nkclust/graph.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace nkclust {

InteractionGraph InteractionGraph::build(const DistanceMatrix& dm, const DensityProfile& prof,
                                         int k) {
    const std::size_t n = dm.n();
    if (k < 1)
        throw std::invalid_argument("InteractionGraph: K must be >= 1");
    if (static_cast<std::size_t>(k) + 1 > n)
        throw std::invalid_argument("InteractionGraph: K+1 exceeds the number of objects");
    if (prof.rho.size() != n || prof.nhd.size() != n)
        throw std::invalid_argument("InteractionGraph: profile does not match the matrix");

    InteractionGraph g;
    g.k_ = k;
    g.n_ = n;
    g.groups_.assign(n * (k + 1), -1);

    std::vector<std::int32_t> scratch(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = dm.row(i);
        const std::int32_t a_i = prof.nhd[i];

        // Candidates: everything but i, ordered by (distance, index). Only the
        // k+1 nearest can ever be needed (the group holds k-1 of them beyond
        // {i, a_i}, and at most one prefix slot is burned on a_i itself).
        std::size_t m = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i)
                scratch[m++] = static_cast<std::int32_t>(j);
        auto closer = [&](std::int32_t a, std::int32_t b) {
            return row[a] < row[b] || (row[a] == row[b] && a < b);
        };
        const std::size_t take = std::min<std::size_t>(k + 1, m);
        std::nth_element(scratch.begin(), scratch.begin() + (take - 1), scratch.begin() + m,
                         closer);
        std::sort(scratch.begin(), scratch.begin() + take, closer);

        auto* members = g.groups_.data() + i * (k + 1);
        std::size_t count = 0;
        members[count++] = static_cast<std::int32_t>(i);
        members[count++] = a_i;
        for (std::size_t c = 0; c < take && count < static_cast<std::size_t>(k) + 1; ++c) {
            if (scratch[c] == a_i)
                continue;
            members[count++] = scratch[c];
        }
        std::sort(members, members + (k + 1));
    }

    // Transpose: out_edges(j) = subfunctions whose group contains j.
    std::vector<std::int32_t> degree(n, 0);
    for (std::int32_t j : g.groups_)
        ++degree[j];
    g.out_offsets_.assign(n + 1, 0);
    for (std::size_t j = 0; j < n; ++j)
        g.out_offsets_[j + 1] = g.out_offsets_[j] + degree[j];
    g.out_edges_.assign(g.out_offsets_.back(), -1);

    std::vector<std::int32_t> cursor(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
    for (std::size_t p = 0; p < n; ++p)
        for (std::int32_t j : g.group(p))
            g.out_edges_[cursor[j]++] = static_cast<std::int32_t>(p);

    g.k_out_ = *std::max_element(degree.begin(), degree.end());
    return g;
}

void write_edge_list(std::ostream& out, const InteractionGraph& g) {
    for (std::size_t i = 0; i < g.n(); ++i)
        for (std::int32_t j : g.group(i))
            out << i << ',' << j << '\n';
}

Thresholds compute_thresholds(const DistanceMatrix& dm, const InteractionGraph& g,
                              std::span<const double> rho) {
    // Within-group distance stats over all (i, j in M_i, j != i): exactly
    // n * k terms. The self-loop is excluded (it would contribute d == 0).
    double sum = 0.0, sumsq = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < g.n(); ++i) {
        for (std::int32_t j : g.group(i)) {
            if (static_cast<std::size_t>(j) == i)
                continue;
            const double d = dm.at(i, j);
            sum += d;
            sumsq += d * d;
            ++count;
        }
    }
    const double m_y = sum / static_cast<double>(count);
    const double var_y = std::max(0.0, sumsq / static_cast<double>(count) - m_y * m_y);
    const double s_y = std::sqrt(var_y);

    double rsum = 0.0, rsumsq = 0.0;
    for (double r : rho) {
        rsum += r;
        rsumsq += r * r;
    }
    const double m_rho = rsum / static_cast<double>(rho.size());
    const double var_rho = std::max(0.0, rsumsq / static_cast<double>(rho.size()) - m_rho * m_rho);
    const double s_rho = std::sqrt(var_rho);

    Thresholds t;
    t.c1 = m_y;
    t.c2 = m_y + s_y;
    t.c3 = m_y + 2.0 * s_y;
    t.c_rho = m_rho - s_rho > 0.0 ? m_rho - s_rho : m_rho / 2.0;
    return t;
}

} // namespace nkclust
