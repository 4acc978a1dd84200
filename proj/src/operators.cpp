#include "nkclust/operators.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace nkclust {

namespace {

// Distinct positive labels in ascending order.
std::vector<Label> used_labels(const Partition& x) {
    std::set<Label> s;
    for (Label l : x.labels)
        if (l > 0)
            s.insert(l);
    return {s.begin(), s.end()};
}

Label smallest_unused(const std::set<Label>& used) {
    Label l = 1;
    while (used.count(l))
        ++l;
    return l;
}

// Highest-density member of each cluster (ties: lowest index).
std::map<Label, std::size_t> cluster_prototypes(const Partition& x,
                                                std::span<const double> rho) {
    std::map<Label, std::size_t> proto;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Label l = x[i];
        if (l <= 0)
            continue;
        auto it = proto.find(l);
        if (it == proto.end() || rho[i] > rho[it->second])
            proto[l] = i;
    }
    return proto;
}

// Relabels `members` to `target` one position at a time, accumulating exact
// deltas, unless the touched volume makes a single full re-evaluation
// cheaper (k_out * moves >= n).
OpResult apply_moves(Partition x, const std::vector<std::size_t>& members, Label target,
                     const EvalContext& ctx) {
    OpResult res;
    const bool incremental =
        static_cast<double>(ctx.graph.k_out()) * static_cast<double>(members.size()) <
        static_cast<double>(ctx.n());
    if (incremental) {
        double delta = 0.0;
        for (std::size_t m : members) {
            delta += delta_evaluate(x, m, target, ctx);
            x[m] = target;
        }
        res.fitness_delta = delta;
        res.delta_valid = true;
    } else {
        for (std::size_t m : members)
            x[m] = target;
        res.delta_valid = false;
    }
    res.part = std::move(x);
    return res;
}

} // namespace

OpResult mutation_nk(const Partition& x, const EvalContext& ctx, Rng& rng) {
    const std::size_t n = ctx.n();
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);

    // Argmin over the other group members' labels; the move applies even if
    // every candidate worsens the fitness (selection filters bad moves).
    Label best_label = x[i];
    double best_delta = std::numeric_limits<double>::infinity();
    for (std::int32_t j : ctx.graph.group(i)) {
        if (static_cast<std::size_t>(j) == i)
            continue;
        const double d = delta_evaluate(x, i, x[j], ctx);
        if (d < best_delta) {
            best_delta = d;
            best_label = x[j];
        }
    }

    OpResult res;
    res.part = x;
    res.part[i] = best_label;
    res.fitness_delta = best_delta;
    res.delta_valid = true;
    return res;
}

OpResult mutation_merge(const Partition& x, const EvalContext& ctx, Rng& rng) {
    const std::vector<Label> labels = used_labels(x);
    if (labels.size() < 2)
        return {x, 0.0, true};

    const auto proto = cluster_prototypes(x, ctx.profile.rho);
    const Label target =
        labels[std::uniform_int_distribution<std::size_t>(0, labels.size() - 1)(rng)];
    const std::size_t target_proto = proto.at(target);

    // Absorb a cluster picked with probability ~ 1 / prototype distance.
    std::vector<Label> others;
    std::vector<double> weights;
    double total = 0.0;
    for (Label l : labels) {
        if (l == target)
            continue;
        const double d = ctx.dm.at(proto.at(l), target_proto);
        const double w = 1.0 / std::max(d, 1e-12);
        others.push_back(l);
        weights.push_back(w);
        total += w;
    }
    const double r = std::uniform_real_distribution<double>(0.0, total)(rng);
    Label absorbed = others.back();
    double cum = 0.0;
    for (std::size_t s = 0; s < others.size(); ++s) {
        cum += weights[s];
        if (r < cum) {
            absorbed = others[s];
            break;
        }
    }

    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] == absorbed)
            members.push_back(i);
    return apply_moves(x, members, target, ctx);
}

OpResult mutation_split(const Partition& x, const EvalContext& ctx, Rng& rng) {
    const std::vector<Label> labels = used_labels(x);
    if (labels.empty())
        return {x, 0.0, true};

    // Size-proportional cluster choice.
    std::map<Label, std::size_t> sizes;
    for (Label l : x.labels)
        if (l > 0)
            ++sizes[l];
    std::size_t total = 0;
    for (Label l : labels)
        total += sizes[l];
    const std::size_t r = std::uniform_int_distribution<std::size_t>(0, total - 1)(rng);
    Label chosen = labels.back();
    std::size_t cum = 0;
    for (Label l : labels) {
        cum += sizes[l];
        if (r < cum) {
            chosen = l;
            break;
        }
    }
    if (sizes[chosen] < 2)
        return {x, 0.0, true};

    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] == chosen)
            members.push_back(i);

    // Two highest-density members act as prototypes (ties: lowest index).
    const auto rho = std::span<const double>(ctx.profile.rho);
    std::size_t m1 = members[0];
    for (std::size_t m : members)
        if (rho[m] > rho[m1])
            m1 = m;
    std::size_t m2 = members[0] == m1 ? members[1] : members[0];
    for (std::size_t m : members)
        if (m != m1 && rho[m] > rho[m2])
            m2 = m;

    std::set<Label> used(labels.begin(), labels.end());
    const Label fresh = smallest_unused(used);

    std::vector<std::size_t> moved;
    for (std::size_t m : members)
        if (ctx.dm.at(m, m2) < ctx.dm.at(m, m1)) // strictly closer to the second prototype
            moved.push_back(m);
    return apply_moves(x, moved, fresh, ctx);
}

OpResult local_search(const Partition& x, const EvalContext& ctx, Rng& rng,
                      long long max_proposals) {
    const std::size_t n = ctx.n();
    if (max_proposals < 0)
        max_proposals = 10 * static_cast<long long>(n);

    OpResult res{x, 0.0, true};
    Partition& cur = res.part;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (long long it = 0; it < max_proposals; ++it) {
        const std::size_t i = pick(rng);
        Label best_label = cur[i];
        double best_delta = std::numeric_limits<double>::infinity();
        for (std::int32_t j : ctx.graph.group(i)) {
            const double d = delta_evaluate(cur, i, cur[j], ctx);
            if (d < best_delta) {
                best_delta = d;
                best_label = cur[j];
            }
        }
        // The position's own label is always among the candidates, so the
        // best move never worsens; the guard mirrors the accept-if-not-worse
        // rule.
        if (best_delta <= 0.0) {
            cur[i] = best_label;
            res.fitness_delta += best_delta;
        }
    }
    return res;
}

Partition renumber(const Partition& reference, const Partition& other) {
    assert(reference.size() == other.size());

    // Co-membership counts over positions clustered in both partitions.
    std::map<std::pair<Label, Label>, long long> counts; // (other, reference) -> n
    for (std::size_t i = 0; i < other.size(); ++i)
        if (reference[i] > 0 && other[i] > 0)
            ++counts[{other[i], reference[i]}];

    struct Entry {
        long long count;
        Label from, to;
    };
    std::vector<Entry> entries;
    entries.reserve(counts.size());
    for (const auto& [key, c] : counts)
        entries.push_back({c, key.first, key.second});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.count != b.count) return a.count > b.count;
        if (a.from != b.from) return a.from < b.from;
        return a.to < b.to;
    });

    std::map<Label, Label> mapping;
    std::set<Label> taken;
    for (const Entry& e : entries) {
        if (mapping.count(e.from) || taken.count(e.to))
            continue;
        mapping[e.from] = e.to;
        taken.insert(e.to);
    }

    // Unmatched clusters get fresh labels above the reference maximum.
    Label next = 0;
    for (Label l : reference.labels)
        next = std::max(next, l);
    ++next;
    for (Label l : used_labels(other)) {
        if (mapping.count(l))
            continue;
        mapping[l] = next++;
    }

    Partition out(other.size());
    for (std::size_t i = 0; i < other.size(); ++i)
        out[i] = other[i] > 0 ? mapping.at(other[i]) : 0;
    return out;
}

PxResult partition_crossover(const Partition& p1, const Partition& p2, const EvalContext& ctx) {
    assert(p1.size() == ctx.n() && p2.size() == ctx.n());
    const std::size_t n = ctx.n();

    std::vector<std::uint8_t> diff(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        diff[i] = p1[i] != p2[i] ? 1 : 0;

    PxResult res;
    res.part = p1;
    res.from_p2.assign(n, 0);

    // Score one parent on a disagreement component: the members' own
    // subfunctions plus every term owned by a *shared* position that reads a
    // member. Terms owned by other disagreeing positions belong to the same
    // component (graph adjacency) and are already counted via their owner.
    const auto component_score = [&](const std::vector<std::size_t>& comp,
                                     const Partition& parent) {
        const auto rho = std::span<const double>(ctx.profile.rho);
        double h = 0.0;
        for (std::size_t i : comp) {
            h += subfunction(i, parent, ctx);
            const auto owners = ctx.graph.out_edges(i);
            const double* dist = ctx.out_dist.data() + ctx.graph.out_offset(i);
            for (std::size_t s = 0; s < owners.size(); ++s) {
                const std::int32_t p = owners[s];
                if (diff[p])
                    continue; // covers p == i as well
                h += alpha(parent[p], parent[i], dist[s], rho[p], rho[i], ctx.thresholds);
            }
        }
        return h;
    };

    std::vector<std::uint8_t> visited(n, 0);
    std::vector<std::size_t> queue, comp;
    for (std::size_t start = 0; start < n; ++start) {
        if (!diff[start] || visited[start])
            continue;
        comp.clear();
        queue.assign(1, start);
        visited[start] = 1;
        while (!queue.empty()) {
            const std::size_t u = queue.back();
            queue.pop_back();
            comp.push_back(u);
            auto visit = [&](std::int32_t v) {
                if (diff[v] && !visited[v]) {
                    visited[v] = 1;
                    queue.push_back(static_cast<std::size_t>(v));
                }
            };
            for (std::int32_t v : ctx.graph.group(u))
                visit(v);
            for (std::int32_t v : ctx.graph.out_edges(u))
                visit(v);
        }
        ++res.components;

        const double h1 = component_score(comp, p1);
        const double h2 = component_score(comp, p2);
        if (h2 <= h1) {
            for (std::size_t i : comp) {
                res.part[i] = p2[i];
                res.from_p2[i] = 1;
            }
        }
    }

    res.fitness = evaluate(res.part, ctx);
    return res;
}

Partition fix_labels(const Partition& x, std::span<const std::uint8_t> from_p2) {
    assert(x.size() == from_p2.size());

    // Positions per (label, source parent). A label used by material from
    // both parents marks two distinct clusters that collided.
    std::map<Label, std::array<std::vector<std::size_t>, 2>> by_label;
    std::set<Label> used;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0)
            continue;
        by_label[x[i]][from_p2[i] ? 1 : 0].push_back(i);
        used.insert(x[i]);
    }

    Partition out = x;
    for (const auto& [label, groups] : by_label) {
        if (groups[0].empty() || groups[1].empty())
            continue;
        // The larger group keeps the label; ties keep the p1 group.
        const int loser = groups[0].size() >= groups[1].size() ? 1 : 0;
        const Label fresh = smallest_unused(used);
        used.insert(fresh);
        for (std::size_t i : groups[loser])
            out[i] = fresh;
    }
    return out;
}

} // namespace nkclust
