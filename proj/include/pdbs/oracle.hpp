#ifndef PDBS_ORACLE_HPP
#define PDBS_ORACLE_HPP

#include "pdbs/graph.hpp"
#include "pdbs/model.hpp"

namespace pdbs {

// Exact statistical quantities at desk scale: the likelihood ratio of the
// planted model against G(n,q), its exact second moment under the null, the
// exact Bayes risk by total graph enumeration, and the Cauchy-Schwarz risk
// lower bound that links them.

// Number of ordered placements (right set, disjoint left set), as a double.
double placement_count(int n, int k_right, int k_left);

// L(G) = average over all placements of the conditional density ratio. Each
// placement is accumulated in log space; with p = 1, a placement missing any
// planted edge contributes 0.
double likelihood_ratio(const Graph& g, const ModelParams& params, double cap = 1e7);

struct SecondMoment {
    enum class Route { ClosedFormSum, BruteForcePlacements };
    double value = 1.0;  // always >= 1
    Route route = Route::ClosedFormSum;
};

// E[(1+lambda)^(a*b + c*d)] over two independent placements, where
// (a,b,c,d) are the four pairwise set-intersection sizes. The closed form
// averages over the nested hypergeometric law of those sizes; the brute-force
// route enumerates every ordered placement pair and is the closed form's
// oracle.
SecondMoment second_moment_exact(int n, int k_right, int k_left, double lambda);
SecondMoment second_moment_exact(const ModelParams& params);
SecondMoment second_moment_bruteforce(int n, int k_right, int k_left, double lambda,
                                      double cap = 1e8);
SecondMoment second_moment_bruteforce(const ModelParams& params, double cap = 1e8);

struct ExactRisk {
    double bayes_risk = 1.0;
    double tv = 0.0;  // bayes_risk == 1 - tv
};

// Total-variation distance and Bayes risk by enumerating all 2^C(n,2) graphs.
// Requires C(n,2) <= 24 and placement_count <= placement_cap. Normalization
// of both enumerated distributions is checked to 1e-10.
ExactRisk bayes_risk_exact(const ModelParams& params, double placement_cap = 1e7);

// max(0, 1 - sqrt(m2 - 1)/2): risk of the optimal test is never below this.
double risk_lower_bound(const SecondMoment& m2);

}  // namespace pdbs

#endif
