#pragma once

#include <functional>
#include <string>

#include "nkclust/baselines.hpp"
#include "nkclust/density.hpp"
#include "nkclust/types.hpp"

namespace nkclust {

// How label 0 is treated when comparing against a reference partition.
enum class AriNoisePolicy {
    NoiseAsCluster,     // label 0 participates as one ordinary cluster
    IgnoreNoiseObjects, // objects labelled 0 in either partition are dropped
};

// Adjusted-for-chance Rand agreement between two labellings of the same
// objects. 1 = identical up to relabelling, ~0 = random, negative = worse
// than chance. Degenerate comparisons with a zero adjustment denominator
// (e.g. both sides a single cluster) score 1.
double adjusted_rand_index(const Partition& a, const Partition& b,
                           AriNoisePolicy policy = AriNoisePolicy::NoiseAsCluster);

// Mean silhouette over all objects, computed exactly from the full distance
// matrix. Label 0 is treated as an ordinary cluster; singletons score 0; a
// partition with fewer than two clusters scores 0.
double silhouette_width(const Partition& p, const DistanceMatrix& dm);

// Number of distinct positive labels.
int count_clusters(const Partition& p);

enum class Direction { Minimize, Maximize };

// A scoring rule candidates compete under. `score` maps a partition to a
// value; `direction` says which end wins.
struct Criterion {
    std::string name;
    Direction direction;
    std::function<double(const Partition&)> score;
};

struct SelectionResult {
    std::size_t best_index = 0;
    std::vector<double> scores; // one per candidate, in order
};

// Scores every candidate and returns the winner (ties: lowest index).
// Non-finite scores never win; if every score is non-finite the call fails.
SelectionResult select_best(const CandidateSet& candidates, const Criterion& criterion);

} // namespace nkclust
