#include "nkclust/ga.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>

namespace nkclust {

Partition random_individual(std::size_t n, Label label_max, Rng& rng) {
    if (label_max < 1)
        throw std::invalid_argument("random_individual: label_max must be >= 1");
    Partition p(n);
    std::uniform_int_distribution<Label> dist(1, label_max);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = dist(rng);
    return p;
}

std::size_t tournament_select(std::span<const double> fitness, int size, Rng& rng) {
    assert(!fitness.empty() && size >= 1);
    std::uniform_int_distribution<std::size_t> pick(0, fitness.size() - 1);
    std::size_t best = pick(rng);
    for (int t = 1; t < size; ++t) {
        const std::size_t c = pick(rng);
        if (fitness[c] < fitness[best] || (fitness[c] == fitness[best] && c < best))
            best = c;
    }
    return best;
}

namespace {

struct Individual {
    Partition part;
    double fitness = 0.0;
};

std::size_t best_index(const std::vector<Individual>& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i)
        if (pop[i].fitness < pop[best].fitness)
            best = i;
    return best;
}

void validate_config(const GaConfig& cfg) {
    if (cfg.pop_size < 1)
        throw std::invalid_argument("GaConfig: pop_size must be >= 1");
    if (!(cfg.crossover_prob >= 0.0 && cfg.crossover_prob <= 1.0))
        throw std::invalid_argument("GaConfig: crossover_prob must be in [0,1]");
    if (cfg.tournament_size < 1)
        throw std::invalid_argument("GaConfig: tournament_size must be >= 1");
    const double mix = cfg.mutation_mix.nk + cfg.mutation_mix.merge + cfg.mutation_mix.split;
    if (std::abs(mix - 1.0) > 1e-9)
        throw std::invalid_argument("GaConfig: mutation mix must sum to 1");
    if (cfg.diversity_period < 1)
        throw std::invalid_argument("GaConfig: diversity_period must be >= 1");
    if (!(cfg.replace_fraction > 0.0 && cfg.replace_fraction < 1.0))
        throw std::invalid_argument("GaConfig: replace_fraction must be in (0,1)");
}

} // namespace

RunResult run_ga(const EvalContext& ctx, const GaConfig& cfg) {
    validate_config(cfg);
    const auto t_start = std::chrono::steady_clock::now();
    const std::size_t n = ctx.n();
    const std::size_t pop_size = static_cast<std::size_t>(cfg.pop_size);
    const long long ls_budget = cfg.ls_budget_factor * static_cast<long long>(n);
    const Label label_max = cfg.initial_label_max > 0
                                ? cfg.initial_label_max
                                : static_cast<Label>(std::ceil(std::sqrt(static_cast<double>(n))));

    Rng rng(cfg.seed);
    RunResult result;
    result.seed = cfg.seed;

    // Fresh random individual, locally optimised; one evaluation each.
    auto spawn = [&]() {
        Partition x = random_individual(n, label_max, rng);
        const double base = evaluate(x, ctx);
        OpResult ls = local_search(x, ctx, rng, ls_budget);
        ++result.evaluations;
        return Individual{std::move(ls.part), base + ls.fitness_delta};
    };

    std::vector<Individual> pop;
    pop.reserve(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i)
        pop.push_back(spawn());
    result.fitness_trace.push_back(pop[best_index(pop)].fitness);

    auto stopped = [&](long long generation) {
        switch (cfg.stop.kind) {
        case StopKind::Generations:
            return generation > cfg.stop.count;
        case StopKind::Evaluations:
            return result.evaluations >= cfg.stop.count;
        case StopKind::WallClockSeconds: {
            const std::chrono::duration<double> el = std::chrono::steady_clock::now() - t_start;
            return el.count() >= cfg.stop.seconds;
        }
        }
        return true;
    };

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<double> fitness(pop_size);
    std::vector<Individual> next;
    next.reserve(pop_size);

    long long generation = 1;
    for (; !stopped(generation); ++generation) {
        for (std::size_t i = 0; i < pop_size; ++i)
            fitness[i] = pop[i].fitness;

        next.clear();
        next.push_back(pop[best_index(pop)]); // elitism

        while (next.size() < pop_size) {
            const std::size_t a = tournament_select(fitness, cfg.tournament_size, rng);
            if (coin(rng) < cfg.crossover_prob) {
                const std::size_t b = tournament_select(fitness, cfg.tournament_size, rng);
                const Partition p2 = renumber(pop[a].part, pop[b].part);
                PxResult px = partition_crossover(pop[a].part, p2, ctx);
                Partition repaired = fix_labels(px.part, px.from_p2);
                // Relabelling can change label coincidences across groups, so
                // the crossover fitness only survives an identity repair.
                const double fit =
                    repaired == px.part ? px.fitness : evaluate(repaired, ctx);
                next.push_back({std::move(repaired), fit});
            } else {
                const double r = coin(rng);
                OpResult op = r < cfg.mutation_mix.nk
                                  ? mutation_nk(pop[a].part, ctx, rng)
                                  : (r < cfg.mutation_mix.nk + cfg.mutation_mix.merge
                                         ? mutation_merge(pop[a].part, ctx, rng)
                                         : mutation_split(pop[a].part, ctx, rng));
                const double fit = op.delta_valid ? pop[a].fitness + op.fitness_delta
                                                  : evaluate(op.part, ctx);
                next.push_back({std::move(op.part), fit});
            }
            ++result.evaluations;
        }

        if (generation % cfg.diversity_period == 0) {
            // Diversity step: pin the best into slot 0, locally optimise the
            // retained share, replace the rest with fresh individuals.
            next[0] = next[best_index(next)];
            const std::size_t keep = static_cast<std::size_t>(
                std::ceil((1.0 - cfg.replace_fraction) * static_cast<double>(pop_size)));
            for (std::size_t i = 0; i < keep; ++i) {
                OpResult ls = local_search(next[i].part, ctx, rng, ls_budget);
                next[i] = {std::move(ls.part), next[i].fitness + ls.fitness_delta};
                ++result.evaluations;
            }
            for (std::size_t i = keep; i < pop_size; ++i) {
                next[i] = spawn();
            }
        }

        pop.swap(next);
        result.fitness_trace.push_back(pop[best_index(pop)].fitness);

        if (cfg.check_fitness) {
            for (std::size_t i = 0; i < pop_size; ++i) {
                const double fresh = evaluate(pop[i].part, ctx);
                const double tol = 1e-9 * std::max(1.0, std::abs(fresh));
                if (std::abs(pop[i].fitness - fresh) > tol)
                    throw std::logic_error("run_ga: stored fitness drifted from evaluate() at generation " +
                                           std::to_string(generation));
            }
        }
    }

    result.generations = generation - 1;
    Individual& champion = pop[best_index(pop)];
    result.best = std::move(champion.part);
    result.best_fitness = evaluate(result.best, ctx); // fresh, drift-free value
    return result;
}

RunResult run_ga(const Dataset& ds, const GaConfig& cfg) {
    const EvalContext ctx = EvalContext::build(ds, cfg.k_param, cfg.cutoff_fraction, cfg.kernel);
    return run_ga(ctx, cfg);
}

} // namespace nkclust
