#pragma once

// Shared helpers for the unit and acceptance tests.

#include <cmath>
#include <numbers>
#include <vector>

#include "nkclust/dataset.hpp"
#include "nkclust/nkcv2.hpp"

namespace testsupport {

using namespace nkclust;

// Uniform random dataset in [0, scale]^dims.
inline Dataset random_dataset(std::size_t n, std::size_t dims, Rng& rng, double scale = 100.0) {
    std::uniform_real_distribution<double> u(0.0, scale);
    std::vector<double> v(n * dims);
    for (double& x : v)
        x = u(rng);
    return Dataset(std::move(v), n, dims);
}

// Random labelling with labels in {min_label..max_label}.
inline Partition random_partition(std::size_t n, Label max_label, Rng& rng, Label min_label = 1) {
    std::uniform_int_distribution<Label> d(min_label, max_label);
    Partition p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = d(rng);
    return p;
}

// Two tight, far-apart Gaussian blobs around (0,..,0) and (offset,..,offset).
inline std::pair<Dataset, Partition> two_blobs(std::size_t per_blob, std::size_t dims, Rng& rng,
                                               double spread = 1.0, double offset = 50.0) {
    std::normal_distribution<double> g(0.0, spread);
    std::vector<double> v;
    std::vector<Label> labels;
    v.reserve(2 * per_blob * dims);
    for (std::size_t i = 0; i < 2 * per_blob; ++i) {
        const double base = i < per_blob ? 0.0 : offset;
        for (std::size_t d = 0; d < dims; ++d)
            v.push_back(base + g(rng));
        labels.push_back(i < per_blob ? 1 : 2);
    }
    return {Dataset(std::move(v), 2 * per_blob, dims), Partition(std::move(labels))};
}

// A seven-point layout small enough to derive the interaction graph by hand:
// a four-object chain at the bottom and a three-object clump on top.
// With K=2 the group memberships are unambiguous and checkable on paper.
inline Dataset seven_point_layout() {
    return Dataset::from_rows({
        {-1.0, 0.0}, // 1 (index 0)
        {2.0, 0.0},  // 2
        {1.0, 0.0},  // 3 (density maximum)
        {0.0, 0.0},  // 4
        {1.5, 3.8},  // 5
        {1.0, 3.0},  // 6 (bridges towards the bottom chain)
        {0.5, 3.8},  // 7
    });
}

// Two clusters of duplicated points: every within-cluster distance is 0 and
// every cross distance is `gap`. With K=3, the true labelling scores exactly
// 0 and single-label merges have a closed-form positive score.
inline std::pair<Dataset, Partition> duplicate_tetrads(double gap = 10.0) {
    std::vector<std::vector<double>> rows;
    std::vector<Label> labels;
    for (int i = 0; i < 4; ++i) {
        rows.push_back({0.0, 0.0});
        labels.push_back(1);
    }
    for (int i = 0; i < 4; ++i) {
        rows.push_back({gap, 0.0});
        labels.push_back(2);
    }
    return {Dataset::from_rows(rows), Partition(std::move(labels))};
}

// Three-arm Archimedean spiral, `per_arm` points per arm, arms phase-shifted
// by 120 degrees. Consecutive intra-arm spacing stays well below the
// inter-arm gap, so the arms are unambiguous clusters.
inline std::pair<Dataset, Partition> spiral_arms(std::size_t per_arm = 104, double a = 1.0,
                                                 double b = 1.0, double t0 = 1.0,
                                                 double t1 = 7.5) {
    // Points are spaced evenly by arc length rather than by parameter value,
    // so the along-arm density stays homogeneous from hub to rim (sampling
    // uniformly in t would leave the outer windings several times sparser
    // than the inner ones). The cumulative arc length of r = a + b*t is
    // tabulated on a fine grid and inverted by linear interpolation.
    const std::size_t table_n = 20000;
    const double dt = (t1 - t0) / static_cast<double>(table_n);
    std::vector<double> cum(table_n + 1, 0.0);
    for (std::size_t s = 1; s <= table_n; ++s) {
        const double tm = t0 + dt * (static_cast<double>(s) - 0.5);
        const double rm = a + b * tm;
        cum[s] = cum[s - 1] + std::sqrt(rm * rm + b * b) * dt;
    }
    std::vector<double> v;
    std::vector<Label> labels;
    for (int arm = 0; arm < 3; ++arm) {
        const double phase = 2.0 * std::numbers::pi * arm / 3.0;
        std::size_t seg = 0; // targets are increasing, so the scan resumes
        for (std::size_t i = 0; i < per_arm; ++i) {
            const double target =
                cum[table_n] * static_cast<double>(i) / static_cast<double>(per_arm - 1);
            while (seg < table_n && cum[seg + 1] < target) ++seg;
            double t = t0 + dt * static_cast<double>(seg);
            if (seg < table_n)
                t += dt * (target - cum[seg]) / (cum[seg + 1] - cum[seg]);
            const double r = a + b * t;
            v.push_back(r * std::cos(t + phase));
            v.push_back(r * std::sin(t + phase));
            labels.push_back(arm + 1);
        }
    }
    return {Dataset(std::move(v), 3 * per_arm, 2), Partition(std::move(labels))};
}

} // namespace testsupport
