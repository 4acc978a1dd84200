#pragma once

#include "nkclust/nkcv2.hpp"

namespace nkclust {

// Result of applying a variation operator. When delta_valid is set the new
// fitness is old fitness + fitness_delta (exact, accumulated from the
// incremental evaluation); otherwise the operator changed too many positions
// for the incremental path to pay off and the caller should re-evaluate.
struct OpResult {
    Partition part;
    double fitness_delta = 0.0;
    bool delta_valid = true;
};

// Picks a random position and moves it to the label of the *other* group
// member with the lowest fitness change. The move applies even when every
// candidate worsens the score (selection downstream filters bad moves). Ties
// go to the lowest-index member.
OpResult mutation_nk(const Partition& x, const EvalContext& ctx, Rng& rng);

// Absorbs one cluster into another: the target is uniform over the current
// clusters, the absorbed cluster is drawn with probability proportional to
// the inverse distance between cluster prototypes (each cluster's
// highest-density member). No-op when fewer than two clusters exist.
OpResult mutation_merge(const Partition& x, const EvalContext& ctx, Rng& rng);

// Splits one cluster in two: the cluster is drawn proportionally to its
// size, its two highest-density members become prototypes, and members
// strictly closer to the second prototype move to a fresh label (the
// smallest positive label not in use). No-op when no cluster has two
// members.
OpResult mutation_split(const Partition& x, const EvalContext& ctx, Rng& rng);

// First-improvement local search: repeatedly picks a random position and
// applies the best group-member label if it does not worsen the fitness.
// Runs for max_proposals iterations (default 10 * n).
OpResult local_search(const Partition& x, const EvalContext& ctx, Rng& rng,
                      long long max_proposals = -1);

// Relabels `other` to match `reference` greedily: cluster pairs are matched
// by descending co-membership count (ties by label value), every matched
// cluster takes the reference label, unmatched clusters get fresh labels
// above the reference maximum. Noise stays 0.
Partition renumber(const Partition& reference, const Partition& other);

struct PxResult {
    Partition part;
    std::vector<std::uint8_t> from_p2; // 1 where the offspring took p2's label
    int components = 0;                // disagreement components found
    double fitness = 0.0;              // full evaluation of part
};

// Partition crossover: positions where the parents agree are fixed, the
// disagreeing positions split into connected components of the interaction
// graph, and each component independently inherits from whichever parent
// scores better on that component (ties prefer p2). The per-component scores
// account for every pairwise term touching the component, so the offspring
// is the best of all 2^q component recombinations.
PxResult partition_crossover(const Partition& p1, const Partition& p2, const EvalContext& ctx);

// Post-crossover repair: when a label is used by material inherited from
// both parents, the groups are distinct clusters that merely collided, so
// the smaller group (ties: the p2 group) moves to the smallest unused
// positive label.
Partition fix_labels(const Partition& x, std::span<const std::uint8_t> from_p2);

} // namespace nkclust
