#include "pdbs/detect.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "pdbs/combin.hpp"
#include "pdbs/errors.hpp"
#include "pdbs/measures.hpp"
#include "pdbs/oracle.hpp"
#include "pdbs/parallel.hpp"
#include "pdbs/sample.hpp"

namespace pdbs {

const char* method_name(Method m) {
    switch (m) {
        case Method::ScanExact: return "scan";
        case Method::ScanGreedy: return "scan-greedy";
        case Method::Count: return "count";
        case Method::Degree: return "degree";
        case Method::Lrt: return "lrt";
    }
    return "?";
}

Method method_from_name(std::string_view name) {
    if (name == "scan") return Method::ScanExact;
    if (name == "scan-greedy") return Method::ScanGreedy;
    if (name == "count") return Method::Count;
    if (name == "degree") return Method::Degree;
    if (name == "lrt") return Method::Lrt;
    throw ParamError("unknown method '" + std::string(name) + "'");
}

int64_t count_stat(const Graph& g) { return g.edge_count(); }

int maxdeg_stat(const Graph& g) { return g.max_degree(); }

namespace {

void check_scan_sizes(const Graph& g, int k_right, int k_left) {
    if (k_right < 1 || k_left < 1) throw ParamError("scan block sides must be at least 1");
    if (k_right + k_left > g.n()) throw ParamError("scan block does not fit in the graph");
}

// Sum over i in right of A_ij, for every vertex j.
void accumulate_row_counts(const Graph& g, const std::vector<int>& right, std::vector<int>& s) {
    std::fill(s.begin(), s.end(), 0);
    for (int i : right) {
        auto row = g.row(i);
        for (size_t w = 0; w < row.size(); ++w) {
            uint64_t bits = row[w];
            while (bits) {
                int j = static_cast<int>(w) * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                ++s[j];
            }
        }
    }
}

}  // namespace

int scan_stat_exact(const Graph& g, int k_right, int k_left, double cap, int threads) {
    check_scan_sizes(g, k_right, k_left);
    const int n = g.n();
    const double space = placement_count(n, k_right, k_left);
    if (space > cap) throw BudgetExceeded(space, cap, "scan statistic enumeration");

    // For a fixed right set the best left set is simply the k_left vertices
    // with the largest right-adjacency counts, so only right sets are
    // enumerated. Right sets are walked lexicographically; chunk boundaries
    // are combination ranks, so the max is identical for any thread count.
    unsigned __int128 total = 0;
    if (!binom_u128(n, k_right, total)) total = ~static_cast<unsigned __int128>(0);
    const uint64_t n_right = static_cast<uint64_t>(total);

    std::vector<int> best_per_chunk(chunk_grid(n_right), 0);
    run_chunked(n_right, threads, [&](int chunk, uint64_t begin, uint64_t end) {
        std::vector<int> right = unrank_combination(n, k_right, begin);
        std::vector<int> counts(n);
        std::vector<int> eligible;
        eligible.reserve(n);
        int best = 0;
        for (uint64_t r = begin; r < end; ++r) {
            accumulate_row_counts(g, right, counts);
            eligible.clear();
            for (int j = 0; j < n; ++j) eligible.push_back(counts[j]);
            for (int i : right) eligible[i] = -1;  // member of the right set
            std::nth_element(eligible.begin(), eligible.begin() + (k_left - 1), eligible.end(),
                             std::greater<int>());
            int sum = 0;
            for (int t = 0; t < k_left; ++t) sum += eligible[t];
            best = std::max(best, sum);
            if (r + 1 < end) next_combination(right, n);
        }
        best_per_chunk[chunk] = best;
    });
    int best = 0;
    for (int b : best_per_chunk) best = std::max(best, b);
    return best;
}

namespace {

struct GreedyState {
    std::vector<int> right, left;        // current block, unsorted
    std::vector<char> member;            // 0 free, 1 right, 2 left
    std::vector<uint64_t> right_mask, left_mask;
    int score = 0;

    int to_left(const Graph& g, int v) const { return intersect_count(g.row(v), left_mask); }
    int to_right(const Graph& g, int v) const { return intersect_count(g.row(v), right_mask); }

    void mask_set(std::vector<uint64_t>& m, int v, bool on) {
        if (on)
            m[v / 64] |= uint64_t{1} << (v % 64);
        else
            m[v / 64] &= ~(uint64_t{1} << (v % 64));
    }
};

}  // namespace

int scan_stat_greedy(const Graph& g, int k_right, int k_left, int restarts, const Seed& seed) {
    check_scan_sizes(g, k_right, k_left);
    if (restarts < 1) throw ParamError("need at least one restart");
    const int n = g.n();
    const int words = g.words_per_row();

    int best = 0;
    for (int restart = 0; restart < restarts; ++restart) {
        Rng rng = seed.stream("scan-greedy", static_cast<uint64_t>(restart));

        GreedyState st;
        st.member.assign(n, 0);
        st.right_mask.assign(words, 0);
        st.left_mask.assign(words, 0);
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        st.right = sample_subset(all, k_right, rng);
        for (int v : st.right) {
            st.member[v] = 1;
            st.mask_set(st.right_mask, v, true);
        }
        std::vector<int> rest;
        for (int v = 0; v < n; ++v)
            if (!st.member[v]) rest.push_back(v);
        st.left = sample_subset(std::move(rest), k_left, rng);
        for (int v : st.left) {
            st.member[v] = 2;
            st.mask_set(st.left_mask, v, true);
        }
        for (int v : st.right) st.score += st.to_left(g, v);

        // Steepest ascent: swap one block vertex for an outside vertex while
        // any swap increases the block sum; ties keep the first candidate in
        // scan order so runs are reproducible.
        for (;;) {
            int best_gain = 0, swap_out = -1, swap_in = -1;
            char swap_side = 0;
            for (int v = 0; v < n; ++v) {
                if (st.member[v]) continue;
                int gain_left = st.to_left(g, v);
                int gain_right = st.to_right(g, v);
                for (size_t u = 0; u < st.right.size(); ++u) {
                    int gain = gain_left - st.to_left(g, st.right[u]);
                    if (gain > best_gain) {
                        best_gain = gain;
                        swap_out = static_cast<int>(u);
                        swap_in = v;
                        swap_side = 1;
                    }
                }
                for (size_t u = 0; u < st.left.size(); ++u) {
                    int gain = gain_right - st.to_right(g, st.left[u]);
                    if (gain > best_gain) {
                        best_gain = gain;
                        swap_out = static_cast<int>(u);
                        swap_in = v;
                        swap_side = 2;
                    }
                }
            }
            if (best_gain <= 0) break;
            auto& side = swap_side == 1 ? st.right : st.left;
            auto& mask = swap_side == 1 ? st.right_mask : st.left_mask;
            int out_v = side[swap_out];
            st.member[out_v] = 0;
            st.mask_set(mask, out_v, false);
            side[swap_out] = swap_in;
            st.member[swap_in] = swap_side;
            st.mask_set(mask, swap_in, true);
            st.score += best_gain;
        }
        best = std::max(best, st.score);
    }
    return best;
}

DetectionOutcome run_test(const Graph& g, const ModelParams& params, Method method,
                          const DetectOptions& options) {
    if (g.n() != params.n) throw ParamError("graph size does not match params");
    DetectionOutcome out;
    out.method = method;
    switch (method) {
        case Method::ScanExact:
            out.statistic = static_cast<double>(scan_stat_exact(
                g, params.k_right, params.k_left, options.scan_cap, options.threads));
            out.threshold = scan_threshold(params);
            break;
        case Method::ScanGreedy:
            out.statistic = static_cast<double>(scan_stat_greedy(
                g, params.k_right, params.k_left, options.restarts, options.seed));
            out.threshold = scan_threshold(params);
            out.exact = false;
            break;
        case Method::Count:
            out.statistic = static_cast<double>(count_stat(g));
            out.threshold = count_threshold(params);
            break;
        case Method::Degree:
            out.statistic = static_cast<double>(maxdeg_stat(g));
            out.threshold = degree_threshold(params);
            break;
        case Method::Lrt:
            return likelihood_ratio_test(g, params, options.lrt_cap);
    }
    out.verdict = out.statistic >= out.threshold ? 1 : 0;
    return out;
}

DetectionOutcome likelihood_ratio_test(const Graph& g, const ModelParams& params, double cap) {
    DetectionOutcome out;
    out.method = Method::Lrt;
    out.statistic = likelihood_ratio(g, params, cap);
    out.threshold = 1.0;
    out.verdict = out.statistic >= out.threshold ? 1 : 0;
    return out;
}

}  // namespace pdbs
