#ifndef PDBS_MC_HPP
#define PDBS_MC_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pdbs/detect.hpp"
#include "pdbs/measures.hpp"
#include "pdbs/model.hpp"
#include "pdbs/rng.hpp"

namespace pdbs {

// Monte Carlo risk estimation and parameter sweeps. Trial i always draws
// from substream (purpose, i) of the run seed, so estimates are bit-identical
// across runs and thread counts, and refining a grid never perturbs existing
// cells.

// Half-width of the 95% Wilson score interval around successes/trials.
double wilson_half_width(int64_t successes, int64_t trials);

struct RiskEstimate {
    int64_t trials = 0;
    double type1_hat = 0;  // P_H0(verdict = 1)
    double type2_hat = 0;  // P_H1(verdict = 0)
    double risk_hat = 0;   // their sum, in [0,2]
    double ci_half_width = 0;  // Wilson half-widths of the two rates, summed
    uint64_t seed = 0;
    Method method = Method::Count;
};

// `trials` independent null instances and `trials` independent planted
// instances; budget-gated methods are checked before the first trial runs.
RiskEstimate mc_risk(Method method, const ModelParams& params, int64_t trials, const Seed& seed,
                     const DetectOptions& options = {});

// The estimator core with injectable samplers and detector. Trial i hands the
// detector substream ("mc/h0"|"mc/h1", i).child("detector") so randomized
// detectors stay reproducible.
using GraphSampler = std::function<Graph(const Seed&)>;
using Detector = std::function<int(const Graph&, const Seed&)>;
RiskEstimate estimate_risk(const Detector& detector, const GraphSampler& null_sampler,
                           const GraphSampler& alt_sampler, int64_t trials, const Seed& seed,
                           int threads = 1);

struct SweepRow {
    ModelParams params;
    Method method = Method::Count;
    RiskEstimate estimate;
    std::string error;  // nonempty when the cell failed; never aborts the sweep
    double wall_seconds = 0;
};

// One row per (cell, method); cell c uses substream ("sweep", c).
std::vector<SweepRow> sweep(const std::vector<ModelParams>& grid,
                            const std::vector<Method>& methods, int64_t trials, const Seed& seed,
                            const DetectOptions& options = {});

struct PhaseCell {
    double beta = 0;   // right-side size exponent
    double alpha = 0;  // chi-square decay exponent
    RegionLabel label;
};

// Classifies every (beta, alpha) cell with beta_left = balance * beta.
std::vector<PhaseCell> phase_grid(const std::vector<double>& beta_grid,
                                  const std::vector<double>& alpha_grid, double balance,
                                  double tol = 1e-9);

}  // namespace pdbs

#endif
