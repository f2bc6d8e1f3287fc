#include "pdbs/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "pdbs/combin.hpp"
#include "pdbs/errors.hpp"

namespace pdbs {

double chi2_bernoulli(double p, double q) {
    if (!(q > 0.0 && q < 1.0)) throw ParamError("chi2 undefined for q outside (0,1)");
    if (p < 0.0 || p > 1.0) throw ParamError("p must lie in [0,1]");
    double d = p - q;
    return d * d / (q * (1.0 - q));
}

double impossibility_log_term(double n, double x, double y) {
    return std::log1p(n / (x * y) * (std::numbers::ln2 / 2.0));
}

Fraction max_bipartite_density(int k_right, int k_left) {
    if (k_right < 1 || k_left < 1) throw ParamError("planted sizes must be at least 1");
    int64_t num = static_cast<int64_t>(k_right) * k_left;
    int64_t den = static_cast<int64_t>(k_right) + k_left;
    int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

double scan_threshold(const ModelParams& pr) {
    return static_cast<double>(pr.k_right) * pr.k_left * (pr.p + pr.q) / 2.0;
}

double count_threshold(const ModelParams& pr) {
    double pairs = static_cast<double>(pr.n) * (pr.n - 1) / 2.0;
    return pairs * pr.q + static_cast<double>(pr.k_right) * pr.k_left * (pr.p - pr.q) / 2.0;
}

double degree_threshold(const ModelParams& pr) {
    return (pr.n - 1.0) * pr.q + std::max(pr.k_right, pr.k_left) * (pr.p - pr.q) / 2.0;
}

std::vector<std::string> ImpossibilityResult::fired() const {
    std::vector<std::string> out;
    if (cross_block) out.push_back("cross-block");
    if (side_log) out.push_back("side-log");
    if (side_capped) out.push_back("side-capped");
    return out;
}

ImpossibilityResult impossibility_check(const ModelParams& pr) {
    pr.validate();
    double chi2 = chi2_bernoulli(pr.p, pr.q);
    double n = pr.n, kr = pr.k_right, kl = pr.k_left;

    ImpossibilityResult res;
    res.cross_block = chi2 <= n * impossibility_log_term(n, kr, kl) / (8.0 * kr * kl);
    res.side_log = chi2 <= std::max(impossibility_log_term(n, kr, kr) / (2.0 * kl),
                                    impossibility_log_term(n, kl, kl) / (2.0 * kr));
    double capped_a = std::min(1.0 / (2.0 * kl), n * impossibility_log_term(n, kl, kl) / (8.0 * kr * kr));
    double capped_b = std::min(1.0 / (2.0 * kr), n * impossibility_log_term(n, kr, kr) / (8.0 * kl * kl));
    res.side_capped = chi2 <= std::max(capped_a, capped_b);
    res.impossible = res.cross_block && (res.side_log || res.side_capped);
    return res;
}

SufficiencyResult sufficient_tests(const ModelParams& pr, double delta, double c) {
    pr.validate();
    if (!(delta > 0.0 && delta < 1.0)) throw ParamError("delta must lie in (0,1)");
    if (!(c > 0.0)) throw ParamError("constant must be positive");

    double chi2 = chi2_bernoulli(pr.p, pr.q);
    double n = pr.n;
    double kmax = std::max(pr.k_right, pr.k_left);
    double kmin = std::min(pr.k_right, pr.k_left);
    double log_2_delta = std::log(2.0 / delta);

    SufficiencyResult res;
    res.scan = chi2 >= c * (std::log(n / kmax) + log_2_delta / kmax) / kmin;
    res.count = chi2 >= c * (n * n) / (kmax * kmax * kmin * kmin) * log_2_delta;
    res.degree = chi2 >= c * n / (kmax * kmax) * (std::log(n) + log_2_delta);
    res.warn_q_near_one = pr.q >= 0.99;
    res.warn_p_far_from_q = pr.p > 2.0 * pr.q;
    return res;
}

void RegimeExponents::validate() const {
    if (beta_right < 0.0 || beta_right >= 1.0 || beta_left < 0.0 || beta_left >= 1.0)
        throw ParamError("size exponents must lie in [0,1)");
    if (alpha < 0.0 || alpha > 2.0) throw ParamError("alpha must lie in [0,2]");
}

const char* region_name(Region r) {
    switch (r) {
        case Region::Impossible: return "impossible";
        case Region::Hard: return "hard";
        case Region::Easy: return "easy";
        case Region::Boundary: return "boundary";
    }
    return "?";
}

const char* test_name(TestKind t) {
    switch (t) {
        case TestKind::Scan: return "scan";
        case TestKind::Count: return "count";
        case TestKind::Degree: return "degree";
    }
    return "?";
}

RegionLabel classify_region(const RegimeExponents& exps, double tol) {
    exps.validate();
    double beta_max = std::max(exps.beta_right, exps.beta_left);
    double beta_min = std::min(exps.beta_right, exps.beta_left);
    // Exponents of the count- and degree-test boundaries; a cell is easy
    // exactly when alpha falls below one of them.
    double count_exp = 2.0 * exps.beta_right + 2.0 * exps.beta_left - 2.0;
    double degree_exp = 2.0 * beta_max - 1.0;
    double easy_exp = std::max(count_exp, degree_exp);

    RegionLabel out;
    // If alpha clears the deciding max by more than tol, at least one of the
    // first two witnesses is always present.
    auto easy_with_witnesses = [&](double alpha) {
        out.region = Region::Easy;
        if (alpha < count_exp - tol) out.witnesses.push_back(TestKind::Count);
        if (alpha < degree_exp - tol) out.witnesses.push_back(TestKind::Degree);
        if (alpha < beta_min - tol) out.witnesses.push_back(TestKind::Scan);
    };

    if (exps.alpha == 0.0) {
        // Dense regime. On the polynomial scale beta_min = 0 stands for
        // planted sides of at most poly-log size.
        if (std::abs(beta_max - 0.5) <= tol) {
            out.region = Region::Boundary;
        } else if (beta_max > 0.5) {
            easy_with_witnesses(0.0);
        } else if (beta_min == 0.0) {
            out.region = Region::Impossible;
        } else if (beta_min <= tol) {
            out.region = Region::Boundary;
        } else {
            out.region = Region::Hard;
        }
        return out;
    }

    // Sparse regime.
    if (exps.alpha < easy_exp - tol) {
        easy_with_witnesses(exps.alpha);
    } else if (exps.alpha <= easy_exp + tol) {
        out.region = Region::Boundary;
    } else if (exps.alpha < beta_min - tol) {
        out.region = Region::Hard;
    } else if (exps.alpha <= beta_min + tol) {
        out.region = Region::Boundary;
    } else {
        out.region = Region::Impossible;
    }
    return out;
}

}  // namespace pdbs
