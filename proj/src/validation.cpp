#include "nkclust/validation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace nkclust {

double adjusted_rand_index(const Partition& a, const Partition& b, AriNoisePolicy policy) {
    if (a.size() != b.size())
        throw std::invalid_argument("adjusted_rand_index: partition sizes differ");

    std::map<std::pair<Label, Label>, long long> cells;
    std::map<Label, long long> rows, cols;
    long long total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (policy == AriNoisePolicy::IgnoreNoiseObjects && (a[i] == 0 || b[i] == 0))
            continue;
        ++cells[{a[i], b[i]}];
        ++rows[a[i]];
        ++cols[b[i]];
        ++total;
    }

    auto comb2 = [](long long x) { return 0.5 * static_cast<double>(x) * (x - 1); };
    double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
    for (const auto& [k, v] : cells)
        sum_cells += comb2(v);
    for (const auto& [k, v] : rows)
        sum_rows += comb2(v);
    for (const auto& [k, v] : cols)
        sum_cols += comb2(v);

    const double pairs = comb2(total);
    if (pairs == 0.0)
        return 1.0;
    const double expected = sum_rows * sum_cols / pairs;
    const double maximum = 0.5 * (sum_rows + sum_cols);
    if (maximum == expected)
        return 1.0; // both sides degenerate (single cluster / all singletons)
    return (sum_cells - expected) / (maximum - expected);
}

double silhouette_width(const Partition& p, const DistanceMatrix& dm) {
    const std::size_t n = dm.n();
    validate_partition(p, n);

    // Compact cluster ids; label 0 is just another cluster here.
    std::map<Label, int> ids;
    for (Label l : p.labels)
        ids.emplace(l, static_cast<int>(ids.size()));
    const std::size_t c = ids.size();
    if (c < 2)
        return 0.0;

    std::vector<int> id(n);
    std::vector<std::size_t> sizes(c, 0);
    for (std::size_t i = 0; i < n; ++i) {
        id[i] = ids[p[i]];
        ++sizes[id[i]];
    }

    double mean = 0.0;
    std::vector<double> sums(c);
    for (std::size_t i = 0; i < n; ++i) {
        if (sizes[id[i]] == 1)
            continue; // singleton scores 0
        std::fill(sums.begin(), sums.end(), 0.0);
        const auto row = dm.row(i);
        for (std::size_t j = 0; j < n; ++j)
            sums[id[j]] += row[j];

        const double a = sums[id[i]] / static_cast<double>(sizes[id[i]] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < c; ++k)
            if (k != static_cast<std::size_t>(id[i]))
                b = std::min(b, sums[k] / static_cast<double>(sizes[k]));

        const double denom = std::max(a, b);
        if (denom > 0.0)
            mean += (b - a) / denom;
    }
    return mean / static_cast<double>(n);
}

int count_clusters(const Partition& p) {
    std::set<Label> s;
    for (Label l : p.labels)
        if (l > 0)
            s.insert(l);
    return static_cast<int>(s.size());
}

SelectionResult select_best(const CandidateSet& candidates, const Criterion& criterion) {
    if (candidates.candidates.empty())
        throw std::invalid_argument("select_best: empty candidate set");

    SelectionResult res;
    res.scores.reserve(candidates.size());
    bool have_best = false;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double s = criterion.score(candidates.candidates[i].part);
        res.scores.push_back(s);
        if (!std::isfinite(s))
            continue;
        const bool wins =
            !have_best ||
            (criterion.direction == Direction::Minimize ? s < res.scores[res.best_index]
                                                        : s > res.scores[res.best_index]);
        if (wins) {
            res.best_index = i;
            have_best = true;
        }
    }
    if (!have_best)
        throw std::runtime_error("select_best: no candidate scored a finite value under '" +
                                 criterion.name + "'");
    return res;
}

} // namespace nkclust
