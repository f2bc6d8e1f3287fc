#ifndef PDBS_DETECT_HPP
#define PDBS_DETECT_HPP

#include <cstdint>
#include <string_view>

#include "pdbs/graph.hpp"
#include "pdbs/model.hpp"
#include "pdbs/rng.hpp"

namespace pdbs {

enum class Method { ScanExact, ScanGreedy, Count, Degree, Lrt };

const char* method_name(Method m);
Method method_from_name(std::string_view name);

// One thresholded test on one graph. The verdict is 1 exactly when
// statistic >= threshold (ties reject the null).
struct DetectionOutcome {
    double statistic = 0;
    double threshold = 0;
    int verdict = 0;
    Method method = Method::Count;
    bool exact = true;  // false only for the greedy scan surrogate
};

struct DetectOptions {
    double scan_cap = 1e7;  // max C(n,kR)*C(n-kR,kL) for exhaustive enumeration
    double lrt_cap = 1e7;
    int restarts = 50;      // greedy scan restarts
    Seed seed{0};           // greedy scan restart randomness
    int threads = 1;
};

// Total edge count.
int64_t count_stat(const Graph& g);

// Maximal vertex degree.
int maxdeg_stat(const Graph& g);

// Exhaustive densest-block statistic: max over disjoint (R',L') with
// |R'| = k_right, |L'| = k_left of the number of R'xL' edges. Gated by the
// enumeration budget; throws BudgetExceeded with the required size.
int scan_stat_exact(const Graph& g, int k_right, int k_left, double cap = 1e7, int threads = 1);

// Randomized local-search surrogate: hill-climbs single-vertex swaps to a
// local optimum from `restarts` random starts. Always <= scan_stat_exact.
int scan_stat_greedy(const Graph& g, int k_right, int k_left, int restarts, const Seed& seed);

// Wires a statistic to its threshold and returns the verdict.
DetectionOutcome run_test(const Graph& g, const ModelParams& params, Method method,
                          const DetectOptions& options = {});

// Exact likelihood-ratio test for tiny instances: verdict 1 iff the averaged
// placement likelihood ratio is at least 1.
DetectionOutcome likelihood_ratio_test(const Graph& g, const ModelParams& params,
                                       double cap = 1e7);

}  // namespace pdbs

#endif
