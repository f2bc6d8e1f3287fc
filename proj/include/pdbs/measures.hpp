#ifndef PDBS_MEASURES_HPP
#define PDBS_MEASURES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pdbs/model.hpp"

namespace pdbs {

// Closed-form quantities and decision boundaries. All logarithms are natural
// logs throughout the library.

// Chi-square divergence between Bern(p) and Bern(q): (p-q)^2 / (q(1-q)).
// Rejects q in {0,1}.
double chi2_bernoulli(double p, double q);

// log(1 + (n/(x*y)) * log(2)/2) — the log factor appearing in the
// impossibility thresholds below.
double impossibility_log_term(double n, double x, double y);

// Exact k_right*k_left / (k_right+k_left), the maximal subgraph density of a
// complete bipartite block.
struct Fraction {
    int64_t num = 0;
    int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};
Fraction max_bipartite_density(int k_right, int k_left);

// Detection thresholds for the three tests.
double scan_threshold(const ModelParams& params);    // kR*kL*(p+q)/2
double count_threshold(const ModelParams& params);   // C(n,2)*q + kR*kL*(p-q)/2
double degree_threshold(const ModelParams& params);  // (n-1)*q + max(kR,kL)*(p-q)/2

// Information-theoretic impossibility check. Strong detection is impossible
// (optimal risk above 1/2) when the cross-block condition holds together with
// at least one of the per-side conditions.
struct ImpossibilityResult {
    bool impossible = false;
    bool cross_block = false;  // chi2 <= n*T(kR,kL) / (8 kR kL)
    bool side_log = false;     // chi2 <= T(kR,kR)/(2kL)  or  T(kL,kL)/(2kR)
    bool side_capped = false;  // chi2 <= min(1/(2kL), n*T(kL,kL)/(8kR^2)) or mirrored
    std::vector<std::string> fired() const;
};
ImpossibilityResult impossibility_check(const ModelParams& params);

// Sufficient conditions for each test to reach total risk <= delta. The
// asymptotic statements hide a constant; `c` makes the inequalities concrete
// and reproducible (default 1). The hypotheses q bounded away from 1 and
// |p-q| = O(q) surface as advisory warnings only.
struct SufficiencyResult {
    bool scan = false;
    bool count = false;
    bool degree = false;
    bool warn_q_near_one = false;  // q >= 0.99
    bool warn_p_far_from_q = false;  // p > 2q
};
SufficiencyResult sufficient_tests(const ModelParams& params, double delta, double c = 1.0);

// Polynomial-scale regime exponents: planted sizes k = Theta(n^beta) per
// side, chi2 = Theta(n^-alpha); alpha = 0 encodes the dense regime.
struct RegimeExponents {
    double beta_right = 0;
    double beta_left = 0;
    double alpha = 0;

    void validate() const;
};

enum class Region { Impossible, Hard, Easy, Boundary };
enum class TestKind { Scan, Count, Degree };

struct RegionLabel {
    Region region = Region::Boundary;
    std::vector<TestKind> witnesses;  // non-empty iff region == Easy
};

const char* region_name(Region r);
const char* test_name(TestKind t);

// Classifies a cell of the phase diagram. Comparisons closer than `tol` to a
// deciding boundary return Boundary.
RegionLabel classify_region(const RegimeExponents& exps, double tol = 1e-9);

}  // namespace pdbs

#endif
