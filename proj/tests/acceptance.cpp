// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line with the measured quantities. Run via ctest or directly.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pdbs/detect.hpp"
#include "pdbs/lowdeg.hpp"
#include "pdbs/mc.hpp"
#include "pdbs/measures.hpp"
#include "pdbs/oracle.hpp"
#include "pdbs/sample.hpp"

using namespace pdbs;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(const char* criterion, bool pass, const std::string& detail) {
    std::printf("[%s] %s — %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// criterion-2/9 grid, computed once
struct GridPoint {
    ModelParams params;
    double bayes_risk;
    double lower_bound;
    bool impossible;
};

const std::vector<GridPoint>& risk_grid() {
    static std::vector<GridPoint> grid = [] {
        std::vector<GridPoint> out;
        for (int n : {4, 5, 6}) {
            for (int kr = 1; kr < n; ++kr) {
                for (int kl = 1; kr + kl <= n; ++kl) {
                    for (double p : {0.6, 0.9}) {
                        for (double q : {0.1, 0.3}) {
                            ModelParams pr{n, kr, kl, p, q};
                            GridPoint pt;
                            pt.params = pr;
                            pt.bayes_risk = bayes_risk_exact(pr).bayes_risk;
                            pt.lower_bound = risk_lower_bound(second_moment_exact(pr));
                            pt.impossible = impossibility_check(pr).impossible;
                            out.push_back(pt);
                        }
                    }
                }
            }
        }
        return out;
    }();
    return grid;
}

}  // namespace

TEST_CASE("criterion 1: second-moment routes agree on the full grid") {
    Timer timer;
    int checked = 0;
    double worst = 0;
    for (int n = 3; n <= 8; ++n) {
        for (int kr = 1; kr <= 3; ++kr) {
            for (int kl = 1; kl <= 3; ++kl) {
                if (kr + kl > n) continue;
                for (double lambda : {0.0, 0.25, 1.0, 4.0}) {
                    double exact = second_moment_exact(n, kr, kl, lambda).value;
                    double brute = second_moment_bruteforce(n, kr, kl, lambda).value;
                    worst = std::max(worst, std::abs(exact - brute) / brute);
                    ++checked;
                }
            }
        }
    }
    double elapsed = timer.seconds();
    bool pass = worst <= 1e-9 && elapsed < 60.0;
    report("criterion 1 (oracle agreement)", pass,
           std::to_string(checked) + " configs, worst relative gap " + fmt(worst) + ", " +
               fmt(elapsed) + "s");
    CHECK(worst <= 1e-9);
    CHECK(elapsed < 60.0);
}

TEST_CASE("criterion 2: exact Bayes risk dominates the second-moment bound") {
    Timer timer;
    int violations = 0;
    for (const auto& pt : risk_grid())
        if (pt.bayes_risk < pt.lower_bound) ++violations;
    double elapsed = timer.seconds();
    bool pass = violations == 0 && elapsed < 300.0;
    report("criterion 2 (risk-bound chain)", pass,
           std::to_string(risk_grid().size()) + " configs, " + std::to_string(violations) +
               " violations, " + fmt(elapsed) + "s");
    CHECK(violations == 0);
    CHECK(elapsed < 300.0);
}

TEST_CASE("criterion 3: full-degree norm equals the exact second moment") {
    Timer timer;
    double worst = 0;
    bool monotone = true;
    for (int n : {6, 7}) {
        for (double lambda : {0.5, 2.0}) {
            const int kr = 2, kl = 2;
            auto curve = low_degree_curve(n, kr, kl, lambda, kr * kl);
            double m2 = second_moment_exact(n, kr, kl, lambda).value;
            worst = std::max(worst, std::abs(curve.back().norm_sq - m2) / m2);
            for (size_t d = 1; d < curve.size(); ++d) {
                if (curve[d].norm_sq < curve[d - 1].norm_sq) monotone = false;
                for (double inc : curve[d].per_degree)
                    if (inc < 0) monotone = false;
            }
        }
    }
    double elapsed = timer.seconds();
    bool pass = worst <= 1e-9 && monotone && elapsed < 120.0;
    report("criterion 3 (full-degree identity)", pass,
           "worst relative gap " + fmt(worst) + (monotone ? ", monotone" : ", NOT monotone") +
               ", " + fmt(elapsed) + "s");
    CHECK(worst <= 1e-9);
    CHECK(monotone);
    CHECK(elapsed < 120.0);
}

TEST_CASE("criterion 4: non-bipartite characters contribute exactly zero") {
    const int n = 6, kr = 2, kl = 2, cap = 3;
    ModelParams pr{n, kr, kl, 0.8, 0.2};
    const double lambda = chi2_bernoulli(pr.p, pr.q);

    // norm over ALL edge subsets, squared coefficients, no bipartite pruning
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    const int m = static_cast<int>(pairs.size());
    double total = 1.0;
    uint64_t subsets = 0;
    for (uint32_t bits = 1; bits < (1u << m); ++bits) {
        if (std::popcount(bits) > cap) continue;
        EdgeSubset alpha{n, {}};
        for (int e = 0; e < m; ++e)
            if (bits >> e & 1) alpha.edges.push_back(pairs[e]);
        double coeff = fourier_coefficient(alpha, pr);
        total += coeff * coeff;
        ++subsets;
    }
    double restricted = low_degree_norm_sq(n, kr, kl, lambda, cap).norm_sq;
    double gap = std::abs(total - restricted);
    bool pass = gap <= 1e-12;
    report("criterion 4 (bipartite vanishing)", pass,
           std::to_string(subsets) + " subsets, |all - bipartite| = " + fmt(gap));
    CHECK(gap <= 1e-12);
}

TEST_CASE("criterion 5: containment probability is exact") {
    const int n = 6, kr = 2, kl = 2;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    const int m = static_cast<int>(pairs.size());

    // brute force: count placements containing alpha, by mask enumeration
    std::vector<std::pair<uint32_t, uint32_t>> placements;
    for (uint32_t r = 0; r < (1u << n); ++r) {
        if (std::popcount(r) != kr) continue;
        for (uint32_t l = 0; l < (1u << n); ++l) {
            if (std::popcount(l) != kl || (r & l)) continue;
            placements.emplace_back(r, l);
        }
    }

    int checked = 0, mismatches = 0;
    bool single_edge_ok = true;
    for (uint32_t bits = 1; bits < (1u << m); ++bits) {
        if (std::popcount(bits) > 3) continue;
        EdgeSubset alpha{n, {}};
        for (int e = 0; e < m; ++e)
            if (bits >> e & 1) alpha.edges.push_back(pairs[e]);
        if (!is_bipartite(alpha)) continue;

        unsigned __int128 hits = 0;
        for (auto [r, l] : placements) {
            bool contained = true;
            for (auto [a, b] : alpha.edges) {
                bool cross = ((r >> a & 1) && (l >> b & 1)) || ((l >> a & 1) && (r >> b & 1));
                if (!cross) {
                    contained = false;
                    break;
                }
            }
            hits += contained;
        }
        auto lib = containment_prob_detail(alpha, n, kr, kl);
        if (!lib.exact || lib.num * placements.size() != hits * lib.den) ++mismatches;
        ++checked;

        if (alpha.edge_count() == 1) {
            // single edge must equal 2 kR kL / (n(n-1)) = 4/15 here
            if (!(lib.num == 4 && lib.den == 15)) single_edge_ok = false;
        }
    }
    bool pass = mismatches == 0 && single_edge_ok;
    report("criterion 5 (containment exactness)", pass,
           std::to_string(checked) + " bipartite subsets, " + std::to_string(mismatches) +
               " mismatches, single-edge " + (single_edge_ok ? "= 4/15" : "WRONG"));
    CHECK(mismatches == 0);
    CHECK(single_edge_ok);
}

TEST_CASE("criterion 6a: count test risk at desk scale") {
    Timer timer;
    ModelParams pr{400, 120, 120, 0.24, 0.12};
    RiskEstimate est = mc_risk(Method::Count, pr, 200, Seed{60001});
    double elapsed = timer.seconds();
    bool pass = est.risk_hat <= 0.1 && elapsed < 180.0;
    report("criterion 6a (count test)", pass,
           "risk_hat = " + fmt(est.risk_hat) + " (type1 " + fmt(est.type1_hat) + ", type2 " +
               fmt(est.type2_hat) + "), " + fmt(elapsed) + "s");
    CHECK(est.risk_hat <= 0.1);
    CHECK(elapsed < 180.0);
}

TEST_CASE("criterion 6b: degree test risk at desk scale") {
    Timer timer;
    ModelParams pr{2000, 300, 2, 0.9, 0.1};
    RiskEstimate est = mc_risk(Method::Degree, pr, 200, Seed{60002});
    double elapsed = timer.seconds();
    bool pass = est.risk_hat <= 0.1 && elapsed < 180.0;
    report("criterion 6b (degree test)", pass,
           "risk_hat = " + fmt(est.risk_hat) + " (type1 " + fmt(est.type1_hat) + ", type2 " +
               fmt(est.type2_hat) + "), " + fmt(elapsed) + "s");
    CHECK(est.risk_hat <= 0.1);
    CHECK(elapsed < 180.0);
}

TEST_CASE("criterion 6c: exact scan test risk at desk scale") {
    Timer timer;
    ModelParams pr{24, 3, 3, 1.0, 0.05};
    RiskEstimate est = mc_risk(Method::ScanExact, pr, 100, Seed{60003});
    double elapsed = timer.seconds();
    bool pass = est.risk_hat <= 0.1 && elapsed < 180.0;
    report("criterion 6c (exact scan test)", pass,
           "risk_hat = " + fmt(est.risk_hat) + " (type1 " + fmt(est.type1_hat) + ", type2 " +
               fmt(est.type2_hat) + "), threshold " + fmt(scan_threshold(pr)) + ", " +
               fmt(elapsed) + "s");
    CHECK(est.risk_hat <= 0.1);
    CHECK(elapsed < 180.0);
}

TEST_CASE("criterion 7: null edge-count calibration") {
    Timer timer;
    const int n = 400, trials = 10000;
    const double q = 0.12;
    const double pairs = n * (n - 1) / 2.0;
    const double mean_true = pairs * q;
    const double var_true = pairs * q * (1 - q);

    Seed seed{70007};
    double sum = 0, sum_sq = 0;
    for (int t = 0; t < trials; ++t) {
        double c = double(count_stat(sample_er(n, q, seed.child("null", t))));
        sum += c;
        sum_sq += c * c;
    }
    double mean = sum / trials;
    double var = (sum_sq - trials * mean * mean) / (trials - 1);

    double se_mean = std::sqrt(var_true / trials);
    double se_var = var_true * std::sqrt(2.0 / (trials - 1));
    double mean_gap = std::abs(mean - mean_true) / se_mean;
    double var_gap = std::abs(var - var_true) / se_var;
    double elapsed = timer.seconds();
    bool pass = mean_gap <= 4.0 && var_gap <= 4.0;
    report("criterion 7 (null calibration)", pass,
           "mean off by " + fmt(mean_gap) + " se, variance off by " + fmt(var_gap) + " se, " +
               fmt(elapsed) + "s");
    CHECK(mean_gap <= 4.0);
    CHECK(var_gap <= 4.0);
}

TEST_CASE("criterion 8: phase-diagram anchor cells") {
    bool ok = true;
    std::string detail;

    auto expect = [&](RegimeExponents exps, Region want, const char* name) {
        Region got = classify_region(exps).region;
        if (got != want) {
            ok = false;
            detail += std::string(name) + " got " + region_name(got) + "; ";
        }
    };
    expect({0.4, 0.4, 0.2}, Region::Hard, "balanced(0.4,0.2)");
    expect({0.3, 0.3, 0.5}, Region::Impossible, "balanced(0.3,0.5)");
    expect({0.8, 0.8, 0.5}, Region::Easy, "balanced(0.8,0.5)");

    auto star = classify_region({0.8, 0.0, 0.3});
    if (star.region != Region::Easy || star.witnesses != std::vector<TestKind>{TestKind::Degree}) {
        ok = false;
        detail += "unbalanced(0.8,0.3) not degree-only easy; ";
    }

    // the star-like slice has no hard region at all
    int hard_cells = 0;
    for (double beta = 0.0; beta < 1.0; beta += 0.02) {
        for (double alpha = 0.0; alpha <= 2.0; alpha += 0.05) {
            if (classify_region({beta, 0.0, alpha}).region == Region::Hard) ++hard_cells;
        }
    }
    if (hard_cells != 0) {
        ok = false;
        detail += std::to_string(hard_cells) + " hard cells on the degenerate slice; ";
    }
    if (ok) detail = "4 anchors + empty hard region on the star-like slice";
    report("criterion 8 (phase anchors)", ok, detail);
    CHECK(ok);
}

TEST_CASE("criterion 9: impossibility checker vs exact Bayes risk") {
    int fired = 0, violations = 0;
    for (const auto& pt : risk_grid()) {
        if (!pt.impossible) continue;
        ++fired;
        if (!(pt.bayes_risk > 0.5)) ++violations;
    }
    bool pass = violations == 0;
    report("criterion 9 (theory consistency)", pass,
           std::to_string(fired) + " impossible-flagged configs, " + std::to_string(violations) +
               " with risk <= 1/2");
    CHECK(violations == 0);
}

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("criterion 10: CLI runs are byte-identical across thread counts") {
    const char* cli = std::getenv("PDBS_CLI");
    REQUIRE_MESSAGE(cli != nullptr, "PDBS_CLI must point at the pdbs binary");

    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("pdbs_acceptance_" + std::to_string(getpid()));
    fs::create_directories(dir);

    std::vector<std::string> invocations = {
        "sample --n 40 --kr 4 --kl 3 --p 0.9 --q 0.2 --seed 31",
        "detect --n 24 --kr 3 --kl 3 --p 1 --q 0.05 --method scan --seed 8",
        "risk --n 80 --kr 8 --kl 8 --p 0.7 --q 0.2 --method degree --trials 60 --seed 12",
        "lowdeg --n 7 --kr 2 --kl 2 --lambda 0.5 --degree 4 --curve",
        "oracle --n 5 --kr 2 --kl 1 --p 0.9 --q 0.2",
        "phase --family balanced --beta 0:1:0.05 --alpha 0:2:0.1",
    };
    int mismatches = 0;
    for (size_t i = 0; i < invocations.size(); ++i) {
        fs::path out1 = dir / ("run_" + std::to_string(i) + "_t1");
        fs::path out1b = dir / ("run_" + std::to_string(i) + "_t1b");
        fs::path out4 = dir / ("run_" + std::to_string(i) + "_t4");
        auto run = [&](const std::string& threads, const fs::path& out) {
            std::string cmd = std::string("'") + cli + "' " + invocations[i] + " --threads " +
                              threads + " --out " + out.string() + " 2>/dev/null";
            return std::system(cmd.c_str());
        };
        bool ok = run("1", out1) == 0 && run("1", out1b) == 0 && run("4", out4) == 0;
        std::string a = slurp(out1);
        if (!ok || a.empty() || a != slurp(out1b) || a != slurp(out4)) ++mismatches;
    }
    fs::remove_all(dir);
    bool pass = mismatches == 0;
    report("criterion 10 (CLI determinism)", pass,
           std::to_string(invocations.size()) + " invocations, " + std::to_string(mismatches) +
               " mismatches");
    CHECK(mismatches == 0);
}
