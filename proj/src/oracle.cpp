#include "pdbs/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "pdbs/combin.hpp"
#include "pdbs/errors.hpp"
#include "pdbs/parallel.hpp"

namespace pdbs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Streaming log-sum-exp, tolerant of -inf terms.
struct LogSumExp {
    double max_term = -kInf;
    double scaled = 0;

    void add(double x) {
        if (x == -kInf) return;
        if (x <= max_term) {
            scaled += std::exp(x - max_term);
        } else {
            scaled = scaled * std::exp(max_term - x) + 1.0;
            max_term = x;
        }
    }
    double value() const { return max_term == -kInf ? -kInf : max_term + std::log(scaled); }
};

// Visits every ordered placement (right set, disjoint left set).
template <class Fn>
void for_each_placement(int n, int k_right, int k_left, Fn&& fn) {
    std::vector<int> right = first_combination(k_right);
    do {
        std::vector<int> rest;
        rest.reserve(n - k_right);
        size_t ri = 0;
        for (int v = 0; v < n; ++v) {
            if (ri < right.size() && right[ri] == v) {
                ++ri;
                continue;
            }
            rest.push_back(v);
        }
        std::vector<int> pick = first_combination(k_left);
        do {
            std::vector<int> left(k_left);
            for (int i = 0; i < k_left; ++i) left[i] = rest[pick[i]];
            fn(right, left);
        } while (next_combination(pick, n - k_right));
    } while (next_combination(right, n));
}

}  // namespace

double placement_count(int n, int k_right, int k_left) {
    return binom_double(n, k_right) * binom_double(n - k_right, k_left);
}

double likelihood_ratio(const Graph& g, const ModelParams& params, double cap) {
    params.validate();
    if (g.n() != params.n) throw ParamError("graph size does not match params");
    double n_placements = placement_count(params.n, params.k_right, params.k_left);
    if (n_placements > cap)
        throw BudgetExceeded(n_placements, cap, "likelihood ratio placement enumeration");

    const double log_edge = std::log(params.p / params.q);
    // -inf when p == 1: a placement with a missing planted edge has zero
    // conditional density ratio.
    const double log_gap = std::log((1.0 - params.p) / (1.0 - params.q));

    LogSumExp acc;
    for_each_placement(params.n, params.k_right, params.k_left,
                       [&](const std::vector<int>& right, const std::vector<int>& left) {
                           double lw = 0;
                           for (int i : right)
                               for (int j : left) lw += g.has_edge(i, j) ? log_edge : log_gap;
                           acc.add(lw);
                       });
    double total = acc.value();
    if (total == -kInf) return 0.0;
    return std::exp(total - std::log(n_placements));
}

SecondMoment second_moment_exact(int n, int k_right, int k_left, double lambda) {
    if (k_right < 1 || k_left < 1 || k_right + k_left > n)
        throw ParamError("invalid planted sizes");
    if (lambda < 0) throw ParamError("lambda must be nonnegative");
    if (lambda == 0) return {1.0, SecondMoment::Route::ClosedFormSum};

    // Condition on one placement (R,L); the other is exchangeable. Drawing
    // the second right set from the partition {R, L, rest} gives the joint
    // hypergeometric law of (a,d) = (|R' ∩ R|, |R' ∩ L|); the second left set
    // is then drawn from what remains, giving (c,b) = (|L' ∩ R|, |L' ∩ L|).
    const double log_den_r = log_binom(n, k_right);
    const double log_den_l = log_binom(n - k_right, k_left);
    const double log_gain = std::log1p(lambda);

    LogSumExp acc;
    for (int a = 0; a <= k_right; ++a) {
        for (int d = 0; a + d <= k_right && d <= k_left; ++d) {
            double w_right = log_binom(k_right, a) + log_binom(k_left, d) +
                             log_binom(n - k_right - k_left, k_right - a - d) - log_den_r;
            if (w_right == -kInf) continue;
            for (int c = 0; c <= k_right - a; ++c) {
                for (int b = 0; c + b <= k_left && b <= k_left - d; ++b) {
                    double w_left = log_binom(k_right - a, c) + log_binom(k_left - d, b) +
                                    log_binom(n - 2 * k_right - k_left + a + d, k_left - c - b) -
                                    log_den_l;
                    if (w_left == -kInf) continue;
                    double exponent = static_cast<double>(a) * b + static_cast<double>(c) * d;
                    acc.add(w_right + w_left + exponent * log_gain);
                }
            }
        }
    }
    return {std::max(1.0, std::exp(acc.value())), SecondMoment::Route::ClosedFormSum};
}

SecondMoment second_moment_exact(const ModelParams& params) {
    params.validate();
    double lambda = (params.p - params.q) * (params.p - params.q) / (params.q * (1.0 - params.q));
    return second_moment_exact(params.n, params.k_right, params.k_left, lambda);
}

SecondMoment second_moment_bruteforce(int n, int k_right, int k_left, double lambda, double cap) {
    if (k_right < 1 || k_left < 1 || k_right + k_left > n)
        throw ParamError("invalid planted sizes");
    if (lambda < 0) throw ParamError("lambda must be nonnegative");
    double n_placements = placement_count(n, k_right, k_left);
    if (n_placements * n_placements > cap)
        throw BudgetExceeded(n_placements * n_placements, cap,
                             "second moment placement-pair enumeration");

    const int words = (n + 63) / 64;
    std::vector<uint64_t> masks;  // per placement: `words` for R, `words` for L
    for_each_placement(n, k_right, k_left,
                       [&](const std::vector<int>& right, const std::vector<int>& left) {
                           size_t base = masks.size();
                           masks.resize(base + 2 * words, 0);
                           for (int v : right) masks[base + v / 64] |= uint64_t{1} << (v % 64);
                           for (int v : left) masks[base + words + v / 64] |= uint64_t{1} << (v % 64);
                       });
    const size_t count = masks.size() / (2 * words);

    std::vector<double> gain_pow(static_cast<size_t>(k_right) * k_left + 1);
    for (size_t e = 0; e < gain_pow.size(); ++e) gain_pow[e] = std::pow(1.0 + lambda, double(e));

    KahanSum total;
    for (size_t i = 0; i < count; ++i) {
        const uint64_t* ri = &masks[i * 2 * words];
        const uint64_t* li = ri + words;
        for (size_t j = 0; j < count; ++j) {
            const uint64_t* rj = &masks[j * 2 * words];
            const uint64_t* lj = rj + words;
            int rr = 0, ll = 0, rl = 0, lr = 0;
            for (int w = 0; w < words; ++w) {
                rr += std::popcount(ri[w] & rj[w]);
                ll += std::popcount(li[w] & lj[w]);
                rl += std::popcount(ri[w] & lj[w]);
                lr += std::popcount(li[w] & rj[w]);
            }
            total.add(gain_pow[rr * ll + rl * lr]);
        }
    }
    double value = total.sum / (n_placements * n_placements);
    return {std::max(1.0, value), SecondMoment::Route::BruteForcePlacements};
}

SecondMoment second_moment_bruteforce(const ModelParams& params, double cap) {
    params.validate();
    double lambda = (params.p - params.q) * (params.p - params.q) / (params.q * (1.0 - params.q));
    return second_moment_bruteforce(params.n, params.k_right, params.k_left, lambda, cap);
}

ExactRisk bayes_risk_exact(const ModelParams& params, double placement_cap) {
    params.validate();
    const int n = params.n;
    const int n_pairs = n * (n - 1) / 2;
    if (n_pairs > 24)
        throw BudgetExceeded(std::ldexp(1.0, n_pairs), std::ldexp(1.0, 24),
                             "graph enumeration for exact Bayes risk");
    double n_placements = placement_count(n, params.k_right, params.k_left);
    if (n_placements > placement_cap)
        throw BudgetExceeded(n_placements, placement_cap, "placement enumeration for exact Bayes risk");

    // Canonical pair slots, row-major i<j.
    auto pair_slot = [&](int i, int j) {
        return i * (2 * n - i - 1) / 2 + (j - i - 1);
    };

    // Planted pair-set of every placement as a bitmask over pair slots.
    std::vector<uint32_t> planted;
    planted.reserve(static_cast<size_t>(n_placements));
    for_each_placement(n, params.k_right, params.k_left,
                       [&](const std::vector<int>& right, const std::vector<int>& left) {
                           uint32_t mask = 0;
                           for (int i : right)
                               for (int j : left)
                                   mask |= uint32_t{1} << pair_slot(std::min(i, j), std::max(i, j));
                           planted.push_back(mask);
                       });

    const int block_pairs = params.k_right * params.k_left;
    const double log_q = std::log(params.q), log_1q = std::log1p(-params.q);

    // Null probability by edge count, and the conditional density ratio by
    // planted-edge count; every entry is computed in log space first.
    std::vector<double> null_prob(n_pairs + 1);
    for (int e = 0; e <= n_pairs; ++e) null_prob[e] = std::exp(e * log_q + (n_pairs - e) * log_1q);
    std::vector<double> cond_ratio(block_pairs + 1);
    for (int e = 0; e <= block_pairs; ++e)
        cond_ratio[e] = std::pow(params.p / params.q, double(e)) *
                        std::pow((1.0 - params.p) / (1.0 - params.q), double(block_pairs - e));

    const uint64_t n_graphs = uint64_t{1} << n_pairs;
    KahanSum mass0, mass1, tv_sum;
    for (uint64_t g = 0; g < n_graphs; ++g) {
        double p0 = null_prob[std::popcount(g)];
        KahanSum ratio_sum;
        for (uint32_t mask : planted) ratio_sum.add(cond_ratio[std::popcount(uint32_t(g) & mask)]);
        double lr = ratio_sum.sum / n_placements;
        mass0.add(p0);
        mass1.add(p0 * lr);
        tv_sum.add(p0 * std::abs(lr - 1.0));
    }
    if (std::abs(mass0.sum - 1.0) > 1e-10 || std::abs(mass1.sum - 1.0) > 1e-10)
        throw std::logic_error("graph enumeration failed its normalization check");

    double tv = std::min(1.0, tv_sum.sum / 2.0);
    return {1.0 - tv, tv};
}

double risk_lower_bound(const SecondMoment& m2) {
    if (m2.value < 1.0) throw ParamError("second moment below 1");
    return std::max(0.0, 1.0 - 0.5 * std::sqrt(m2.value - 1.0));
}

}  // namespace pdbs
