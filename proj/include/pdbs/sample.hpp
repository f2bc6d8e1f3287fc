#ifndef PDBS_SAMPLE_HPP
#define PDBS_SAMPLE_HPP

#include <utility>

#include "pdbs/graph.hpp"
#include "pdbs/model.hpp"
#include "pdbs/rng.hpp"

namespace pdbs {

// Samplers are pure functions of (params, seed). Edge randomness is consumed
// in the canonical pair order (row-major i<j), one uniform per pair, on a
// substream separate from set selection, so a seed reproduces the same graph
// on any machine.

// Erdos-Renyi G(n, q). Unlike the planted samplers, q = 0 and q = 1 are fine
// here.
Graph sample_er(int n, double q, const Seed& seed);

// Planted model: right set drawn uniformly first, left set uniformly from the
// complement; cross pairs appear with probability p, all other pairs with q.
std::pair<Graph, PlantedSets> sample_planted(const ModelParams& params, const Seed& seed);

// Equivalent construction: the union of a G(n,q) base graph with an
// independent planted block sampled at p' = (p-q)/(1-q). Same marginal law
// as sample_planted.
std::pair<Graph, PlantedSets> sample_planted_union(const ModelParams& params, const Seed& seed);

// Uniform k-subset of the values in `pool` (sorted ascending on return).
std::vector<int> sample_subset(std::vector<int> pool, int k, Rng& rng);

}  // namespace pdbs

#endif
