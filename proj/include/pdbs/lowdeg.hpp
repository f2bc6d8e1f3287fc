#ifndef PDBS_LOWDEG_HPP
#define PDBS_LOWDEG_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pdbs/model.hpp"

namespace pdbs {

// Degree-capped norm of the likelihood ratio projected onto the Fourier
// characters of G(n,q). Characters are indexed by edge subsets; only
// bipartite subsets that fit inside a planted block contribute.

// An edge-induced subgraph of the complete graph on [n]: every listed vertex
// pair is an edge, vertices not touched by an edge do not belong to it.
struct EdgeSubset {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // each with first < second

    void validate() const;
    int edge_count() const { return static_cast<int>(edges.size()); }
    std::vector<int> support() const;  // sorted distinct endpoint list
};

// Proper 2-coloring, one class pair per connected component. side0 holds the
// smallest vertex of its component, which fixes the orientation canonically;
// the only other proper coloring of a component is the swap.
struct BipartiteCert {
    struct Component {
        std::vector<int> side0, side1;
    };
    std::vector<Component> components;
};

// BFS 2-coloring; empty result when the subset contains an odd cycle.
std::optional<BipartiteCert> is_bipartite(const EdgeSubset& alpha);

// P[every edge of alpha is a planted pair] under a uniform placement.
// Component class pairs can land on the two planted sides in 2^c disjoint
// ways; the probability is the orientation sum of placement-counting ratios.
// Exact integer arithmetic whenever the binomials fit 128 bits.
struct ContainmentProb {
    double value = 0;
    bool exact = false;                // num/den below are meaningful
    unsigned __int128 num = 0, den = 1;  // reduced
};
ContainmentProb containment_prob_detail(const EdgeSubset& alpha, int n, int k_right, int k_left);
double planted_containment_prob(const EdgeSubset& alpha, const ModelParams& params);
double planted_containment_prob(const EdgeSubset& alpha, int n, int k_right, int k_left);

// lambda^(|alpha|/2) * P[alpha planted], lambda = chi2(p||q). The mean of the
// alpha-character under the planted model.
double fourier_coefficient(const EdgeSubset& alpha, const ModelParams& params);

struct LowDegreeReport {
    int degree_cap = 0;
    double norm_sq = 1.0;               // >= 1, non-decreasing in the cap
    uint64_t terms_enumerated = 0;      // contributing subsets
    std::vector<double> per_degree;     // per_degree[d-1] = total weight of |alpha| = d
};

// 1 + sum over bipartite edge subsets with 1 <= |alpha| <= degree_cap of
// lambda^|alpha| * P^2[alpha planted]. Enumeration walks edge subsets in
// colex order with incremental union-find parity, pruning a branch at the
// first odd cycle or once the support can no longer fit a planted block.
LowDegreeReport low_degree_norm_sq(int n, int k_right, int k_left, double lambda, int degree_cap,
                                   double budget = 1e7, int threads = 1);
LowDegreeReport low_degree_norm_sq(const ModelParams& params, int degree_cap,
                                   double budget = 1e7, int threads = 1);

// Reports for every cap 0..max_cap, sharing one enumeration pass.
std::vector<LowDegreeReport> low_degree_curve(int n, int k_right, int k_left, double lambda,
                                              int max_cap, double budget = 1e7, int threads = 1);
std::vector<LowDegreeReport> low_degree_curve(const ModelParams& params, int max_cap,
                                              double budget = 1e7, int threads = 1);

}  // namespace pdbs

#endif
