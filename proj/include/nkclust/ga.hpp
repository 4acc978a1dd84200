#pragma once

#include "nkclust/operators.hpp"

namespace nkclust {

// Stop rule for a GA run. Exactly one budget applies.
enum class StopKind { Generations, Evaluations, WallClockSeconds };

struct StopRule {
    StopKind kind = StopKind::Generations;
    long long count = 200;  // generations or evaluations
    double seconds = 0.0;   // wall-clock budget

    static StopRule generations(long long g) { return {StopKind::Generations, g, 0.0}; }
    static StopRule evaluations(long long e) { return {StopKind::Evaluations, e, 0.0}; }
    static StopRule wall_clock(double s) { return {StopKind::WallClockSeconds, 0, s}; }
};

struct MutationMix {
    double nk = 0.6;
    double merge = 0.2;
    double split = 0.2;
};

struct GaConfig {
    int pop_size = 100;
    double crossover_prob = 0.6;
    int tournament_size = 3;
    int k_param = 3;                 // graph group size parameter K
    MutationMix mutation_mix;
    int diversity_period = 100;      // generations between diversity steps
    double replace_fraction = 0.3;   // population share replaced in a diversity step
    long long ls_budget_factor = 10; // local search proposals = factor * n
    int initial_label_max = 0;       // 0 = ceil(sqrt(n))
    double cutoff_fraction = 0.02;
    Kernel kernel = Kernel::Gaussian;
    StopRule stop;
    std::uint64_t seed = 1;
    // Test hook: re-evaluate every individual each generation and fail loudly
    // if the incremental bookkeeping drifted from the true fitness.
    bool check_fitness = false;
};

struct RunResult {
    Partition best;
    double best_fitness = 0.0;          // fresh evaluation of best
    std::vector<double> fitness_trace;  // best stored fitness per generation
    long long generations = 0;
    long long evaluations = 0;          // individual-level fitness establishments
    std::uint64_t seed = 0;
};

// Uniform random labelling with labels 1..label_max.
Partition random_individual(std::size_t n, Label label_max, Rng& rng);

// Tournament selection over stored fitness values (minimisation): draws
// `size` population indices with replacement, returns the index of the best
// (ties: lowest population index).
std::size_t tournament_select(std::span<const double> fitness, int size, Rng& rng);

// Full GA run: local-searched random initial population, elitism, tournament
// selection, crossover (renumber + partition crossover + label repair) vs.
// mutation mix, periodic diversity step (keep the best, local-search the top
// share, replace the rest with fresh local-searched individuals).
RunResult run_ga(const EvalContext& ctx, const GaConfig& cfg);

// Convenience overload that builds the context from the dataset.
RunResult run_ga(const Dataset& ds, const GaConfig& cfg);

} // namespace nkclust
