#include "nkclust/nkcv2.hpp"

#include <cassert>

namespace nkclust {

EvalContext EvalContext::build(const Dataset& ds, int k, double cutoff_fraction, Kernel kernel) {
    EvalContext ctx;
    ctx.dm = DistanceMatrix::compute(ds);
    ctx.profile = DensityProfile::build(ctx.dm, cutoff_fraction, kernel);
    ctx.graph = InteractionGraph::build(ctx.dm, ctx.profile, k);
    ctx.thresholds = compute_thresholds(ctx.dm, ctx.graph, ctx.profile.rho);

    const std::size_t n = ctx.graph.n();
    ctx.group_dist.resize(ctx.graph.group(0).size() * n);
    std::size_t slot = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::int32_t j : ctx.graph.group(i))
            ctx.group_dist[slot++] = ctx.dm.at(i, j);

    ctx.out_dist.resize(n * (k + 1));
    slot = 0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::int32_t p : ctx.graph.out_edges(j))
            ctx.out_dist[slot++] = ctx.dm.at(p, j);
    return ctx;
}

double subfunction(std::size_t i, const Partition& x, const EvalContext& ctx) {
    const auto members = ctx.graph.group(i);
    const double* dist = ctx.group_dist.data() + i * members.size();
    const double* rho = ctx.profile.rho.data();
    const Label xi = x[i];
    double f = 0.0;
    for (std::size_t s = 0; s < members.size(); ++s) {
        const std::int32_t j = members[s];
        if (static_cast<std::size_t>(j) == i)
            continue;
        f += alpha(xi, x[j], dist[s], rho[i], rho[j], ctx.thresholds);
    }
    return f;
}

double evaluate(const Partition& x, const EvalContext& ctx) {
    assert(x.size() == ctx.n());
    double f = 0.0;
    for (std::size_t i = 0; i < ctx.n(); ++i)
        f += subfunction(i, x, ctx);
    return f;
}

double delta_evaluate(const Partition& x, std::size_t i, Label v, const EvalContext& ctx) {
    const Label old = x[i];
    if (v == old)
        return 0.0;
    const double* rho = ctx.profile.rho.data();
    const auto& t = ctx.thresholds;
    double delta = 0.0;

    // Subfunction i itself: the owner label changes, every term moves.
    {
        const auto members = ctx.graph.group(i);
        const double* dist = ctx.group_dist.data() + i * members.size();
        for (std::size_t s = 0; s < members.size(); ++s) {
            const std::int32_t j = members[s];
            if (static_cast<std::size_t>(j) == i)
                continue;
            delta += alpha(v, x[j], dist[s], rho[i], rho[j], t) -
                     alpha(old, x[j], dist[s], rho[i], rho[j], t);
        }
    }

    // Other subfunctions that read position i: only their alpha(x_p, x_i)
    // term changes.
    {
        const auto owners = ctx.graph.out_edges(i);
        const double* dist = ctx.out_dist.data() + ctx.graph.out_offset(i);
        for (std::size_t s = 0; s < owners.size(); ++s) {
            const std::int32_t p = owners[s];
            if (static_cast<std::size_t>(p) == i)
                continue;
            delta += alpha(x[p], v, dist[s], rho[p], rho[i], t) -
                     alpha(x[p], old, dist[s], rho[p], rho[i], t);
        }
    }
    return delta;
}

} // namespace nkclust
