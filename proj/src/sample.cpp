#include "pdbs/sample.hpp"

#include <algorithm>
#include <string>

#include "pdbs/errors.hpp"

namespace pdbs {

void ModelParams::validate() const {
    if (n < 1) throw ParamError("n must be positive");
    if (k_right < 1 || k_left < 1) throw ParamError("planted sizes must be at least 1");
    if (k_right + k_left > n) throw ParamError("k_right + k_left must not exceed n");
    if (!(q > 0.0 && q < 1.0)) throw ParamError("q must lie strictly inside (0,1)");
    if (!(p > q)) throw ParamError("p must exceed q");
    if (p > 1.0) throw ParamError("p must not exceed 1");
}

std::vector<int> sample_subset(std::vector<int> pool, int k, Rng& rng) {
    if (k < 0 || static_cast<size_t>(k) > pool.size())
        throw ParamError("subset size " + std::to_string(k) + " out of range");
    // Partial Fisher-Yates: the first k slots end up a uniform k-subset.
    for (int i = 0; i < k; ++i) {
        uint64_t j = i + rng.below(pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

namespace {

std::vector<int> iota_vertices(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

PlantedSets draw_sets(const ModelParams& params, const Seed& seed) {
    Rng rng = seed.stream("sets");
    PlantedSets sets;
    sets.right = sample_subset(iota_vertices(params.n), params.k_right, rng);
    std::vector<int> rest;
    rest.reserve(params.n - params.k_right);
    size_t ri = 0;
    for (int v = 0; v < params.n; ++v) {
        if (ri < sets.right.size() && sets.right[ri] == v) {
            ++ri;
            continue;
        }
        rest.push_back(v);
    }
    sets.left = sample_subset(std::move(rest), params.k_left, rng);
    return sets;
}

}  // namespace

Graph sample_er(int n, double q, const Seed& seed) {
    if (n < 1) throw ParamError("n must be positive");
    if (q < 0.0 || q > 1.0) throw ParamError("q must lie in [0,1]");
    Rng rng = seed.stream("er/edges");
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(q)) g.set_edge(i, j);
    return g;
}

std::pair<Graph, PlantedSets> sample_planted(const ModelParams& params, const Seed& seed) {
    params.validate();
    PlantedSets sets = draw_sets(params, seed);

    std::vector<char> in_right(params.n, 0), in_left(params.n, 0);
    for (int v : sets.right) in_right[v] = 1;
    for (int v : sets.left) in_left[v] = 1;

    Rng rng = seed.stream("edges");
    Graph g(params.n);
    for (int i = 0; i < params.n; ++i) {
        for (int j = i + 1; j < params.n; ++j) {
            bool cross = (in_right[i] && in_left[j]) || (in_left[i] && in_right[j]);
            if (rng.bernoulli(cross ? params.p : params.q)) g.set_edge(i, j);
        }
    }
    return {std::move(g), std::move(sets)};
}

std::pair<Graph, PlantedSets> sample_planted_union(const ModelParams& params, const Seed& seed) {
    params.validate();
    PlantedSets sets = draw_sets(params, seed);

    Rng base = seed.stream("edges");
    Graph g(params.n);
    for (int i = 0; i < params.n; ++i)
        for (int j = i + 1; j < params.n; ++j)
            if (base.bernoulli(params.q)) g.set_edge(i, j);

    // Overlay the planted block at p', chosen so a cross pair ends up present
    // with probability exactly p.
    double p_extra = (params.p - params.q) / (1.0 - params.q);
    Rng plant = seed.stream("plant");
    for (int i : sets.right)
        for (int j : sets.left)
            if (plant.bernoulli(p_extra)) g.set_edge(i, j);

    return {std::move(g), std::move(sets)};
}

}  // namespace pdbs
