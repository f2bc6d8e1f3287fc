#include "pdbs/mc.hpp"

#include <chrono>
#include <cmath>

#include "pdbs/errors.hpp"
#include "pdbs/oracle.hpp"
#include "pdbs/parallel.hpp"
#include "pdbs/sample.hpp"

namespace pdbs {

double wilson_half_width(int64_t successes, int64_t trials) {
    if (trials < 1) throw ParamError("need at least one trial");
    const double z = 1.959963984540054;  // two-sided 95%
    double nt = static_cast<double>(trials);
    double ph = static_cast<double>(successes) / nt;
    double denom = 1.0 + z * z / nt;
    return z * std::sqrt(ph * (1.0 - ph) / nt + z * z / (4.0 * nt * nt)) / denom;
}

namespace {

void check_feasible(Method method, const ModelParams& params, const DetectOptions& options) {
    double space = placement_count(params.n, params.k_right, params.k_left);
    if (method == Method::ScanExact && space > options.scan_cap)
        throw BudgetExceeded(space, options.scan_cap, "scan statistic enumeration");
    if (method == Method::Lrt && space > options.lrt_cap)
        throw BudgetExceeded(space, options.lrt_cap, "likelihood ratio placement enumeration");
}

}  // namespace

RiskEstimate estimate_risk(const Detector& detector, const GraphSampler& null_sampler,
                           const GraphSampler& alt_sampler, int64_t trials, const Seed& seed,
                           int threads) {
    if (trials < 1) throw ParamError("need at least one trial");

    // Trials thread in fixed chunks; verdict counts are integers, so the
    // totals are exact and independent of the thread count.
    int n_chunks = chunk_grid(static_cast<uint64_t>(trials));
    std::vector<int64_t> false_alarms(n_chunks, 0), misses(n_chunks, 0);
    run_chunked(static_cast<uint64_t>(trials), threads,
                [&](int chunk, uint64_t begin, uint64_t end) {
                    for (uint64_t i = begin; i < end; ++i) {
                        Seed null_seed = seed.child("mc/h0", i);
                        Graph g0 = null_sampler(null_seed);
                        if (detector(g0, null_seed.child("detector")) == 1) ++false_alarms[chunk];

                        Seed alt_seed = seed.child("mc/h1", i);
                        Graph g1 = alt_sampler(alt_seed);
                        if (detector(g1, alt_seed.child("detector")) == 0) ++misses[chunk];
                    }
                });
    int64_t fa = 0, miss = 0;
    for (int c = 0; c < n_chunks; ++c) {
        fa += false_alarms[c];
        miss += misses[c];
    }

    RiskEstimate est;
    est.trials = trials;
    est.type1_hat = static_cast<double>(fa) / static_cast<double>(trials);
    est.type2_hat = static_cast<double>(miss) / static_cast<double>(trials);
    est.risk_hat = est.type1_hat + est.type2_hat;
    est.ci_half_width = wilson_half_width(fa, trials) + wilson_half_width(miss, trials);
    est.seed = seed.root;
    return est;
}

RiskEstimate mc_risk(Method method, const ModelParams& params, int64_t trials, const Seed& seed,
                     const DetectOptions& options) {
    params.validate();
    check_feasible(method, params, options);

    DetectOptions per_trial = options;
    per_trial.threads = 1;  // threading happens across trials

    Detector detector = [&](const Graph& g, const Seed& detector_seed) {
        DetectOptions opt = per_trial;
        opt.seed = detector_seed;
        return run_test(g, params, method, opt).verdict;
    };
    GraphSampler null_sampler = [&](const Seed& s) { return sample_er(params.n, params.q, s); };
    GraphSampler alt_sampler = [&](const Seed& s) { return sample_planted(params, s).first; };

    RiskEstimate est =
        estimate_risk(detector, null_sampler, alt_sampler, trials, seed, options.threads);
    est.method = method;
    return est;
}

std::vector<SweepRow> sweep(const std::vector<ModelParams>& grid,
                            const std::vector<Method>& methods, int64_t trials, const Seed& seed,
                            const DetectOptions& options) {
    std::vector<SweepRow> rows;
    rows.reserve(grid.size() * methods.size());
    for (size_t cell = 0; cell < grid.size(); ++cell) {
        Seed cell_seed = seed.child("sweep", cell);
        for (Method method : methods) {
            SweepRow row;
            row.params = grid[cell];
            row.method = method;
            auto start = std::chrono::steady_clock::now();
            try {
                row.estimate = mc_risk(method, grid[cell], trials, cell_seed, options);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            row.wall_seconds = std::chrono::duration<double>(
                                   std::chrono::steady_clock::now() - start)
                                   .count();
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<PhaseCell> phase_grid(const std::vector<double>& beta_grid,
                                  const std::vector<double>& alpha_grid, double balance,
                                  double tol) {
    if (balance < 0.0 || balance > 1.0) throw ParamError("balance factor must lie in [0,1]");
    std::vector<PhaseCell> cells;
    cells.reserve(beta_grid.size() * alpha_grid.size());
    for (double beta : beta_grid) {
        for (double alpha : alpha_grid) {
            RegimeExponents exps{beta, balance * beta, alpha};
            cells.push_back({beta, alpha, classify_region(exps, tol)});
        }
    }
    return cells;
}

}  // namespace pdbs
