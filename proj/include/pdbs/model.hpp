#ifndef PDBS_MODEL_HPP
#define PDBS_MODEL_HPP

#include <vector>

namespace pdbs {

// Parameters of the planted dense bipartite subgraph model: a background
// G(n,q) with a hidden k_right x k_left block whose cross edges appear with
// probability p > q. p = 1 (complete planted block) is allowed; q in {0,1}
// is not, since divergences and likelihood ratios degenerate there.
struct ModelParams {
    int n = 0;
    int k_right = 0;
    int k_left = 0;
    double p = 0;
    double q = 0;

    void validate() const;
};

// The hidden disjoint vertex sets, both sorted ascending.
struct PlantedSets {
    std::vector<int> right;
    std::vector<int> left;
};

}  // namespace pdbs

#endif
