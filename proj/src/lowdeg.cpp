#include "pdbs/lowdeg.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pdbs/combin.hpp"
#include "pdbs/errors.hpp"
#include "pdbs/measures.hpp"
#include "pdbs/parallel.hpp"

namespace pdbs {

void EdgeSubset::validate() const {
    if (n < 1) throw ParamError("edge subset needs a positive vertex count");
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n) throw ParamError("edge endpoint out of range");
        if (a >= b) throw ParamError("edges must be stored with first < second");
    }
    for (size_t i = 0; i < edges.size(); ++i)
        for (size_t j = i + 1; j < edges.size(); ++j)
            if (edges[i] == edges[j]) throw ParamError("duplicate edge in subset");
}

std::vector<int> EdgeSubset::support() const {
    std::vector<int> v;
    v.reserve(2 * edges.size());
    for (auto [a, b] : edges) {
        v.push_back(a);
        v.push_back(b);
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::optional<BipartiteCert> is_bipartite(const EdgeSubset& alpha) {
    alpha.validate();
    std::vector<int> support = alpha.support();
    std::map<int, std::vector<int>> adj;
    for (auto [a, b] : alpha.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }

    BipartiteCert cert;
    std::map<int, int> color;  // vertex -> 0/1 within its component
    for (int root : support) {
        if (color.count(root)) continue;
        BipartiteCert::Component comp;
        color[root] = 0;
        std::vector<int> queue{root};
        comp.side0.push_back(root);  // smallest vertex first fixes side0
        while (!queue.empty()) {
            int u = queue.back();
            queue.pop_back();
            for (int v : adj[u]) {
                auto it = color.find(v);
                if (it == color.end()) {
                    color[v] = 1 - color[u];
                    (color[v] == 0 ? comp.side0 : comp.side1).push_back(v);
                    queue.push_back(v);
                } else if (it->second == color[u]) {
                    return std::nullopt;  // odd cycle
                }
            }
        }
        std::sort(comp.side0.begin(), comp.side0.end());
        std::sort(comp.side1.begin(), comp.side1.end());
        cert.components.push_back(std::move(comp));
    }
    return cert;
}

namespace {

// Orientation sum over per-component class sizes. Each of the 2^c ways of
// assigning component classes to the right/left planted side is a disjoint
// containment event; the count of placements realizing one assignment is
// C(n - v, kR - |A|) * C(n - kR - |B|, kL - |B|).
ContainmentProb orientation_sum(const std::vector<std::pair<int, int>>& class_sizes, int v_total,
                                int n, int k_right, int k_left) {
    ContainmentProb out;
    const int c = static_cast<int>(class_sizes.size());

    unsigned __int128 den_r = 0, den_l = 0;
    bool exact = binom_u128(n, k_right, den_r) && binom_u128(n - k_right, k_left, den_l) &&
                 den_l != 0 && den_r <= (~static_cast<unsigned __int128>(0)) / den_l;

    unsigned __int128 num = 0;
    double num_approx = 0;
    for (uint32_t assign = 0; assign < (uint32_t{1} << c); ++assign) {
        int to_right = 0;
        for (int i = 0; i < c; ++i)
            to_right += (assign >> i & 1) ? class_sizes[i].second : class_sizes[i].first;
        int to_left = v_total - to_right;
        if (to_right > k_right || to_left > k_left) continue;
        if (exact) {
            constexpr auto u128_max = ~static_cast<unsigned __int128>(0);
            unsigned __int128 ways_r = 0, ways_l = 0;
            if (binom_u128(n - v_total, k_right - to_right, ways_r) &&
                binom_u128(n - k_right - to_left, k_left - to_left, ways_l)) {
                if (ways_r != 0 && ways_l != 0) {
                    if (ways_r <= u128_max / ways_l && num <= u128_max - ways_r * ways_l)
                        num += ways_r * ways_l;
                    else
                        exact = false;
                }
            } else {
                exact = false;
            }
        }
        num_approx += binom_double(n - v_total, k_right - to_right) *
                      binom_double(n - k_right - to_left, k_left - to_left);
    }

    if (exact) {
        unsigned __int128 den = den_r * den_l;
        unsigned __int128 g = gcd_u128(num == 0 ? den : num, den);
        out.exact = true;
        out.num = num / g;
        out.den = den / g;
        out.value = static_cast<double>(out.num) / static_cast<double>(out.den);
    } else {
        out.value = num_approx /
                    (binom_double(n, k_right) * binom_double(n - k_right, k_left));
    }
    return out;
}

}  // namespace

ContainmentProb containment_prob_detail(const EdgeSubset& alpha, int n, int k_right, int k_left) {
    if (k_right < 1 || k_left < 1 || k_right + k_left > n) throw ParamError("invalid planted sizes");
    if (alpha.n != n) throw ParamError("edge subset vertex count does not match n");
    auto cert = is_bipartite(alpha);
    if (!cert) return {0.0, true, 0, 1};  // a planted block has no odd cycles

    std::vector<std::pair<int, int>> class_sizes;
    int v_total = 0;
    for (const auto& comp : cert->components) {
        class_sizes.emplace_back(static_cast<int>(comp.side0.size()),
                                 static_cast<int>(comp.side1.size()));
        v_total += static_cast<int>(comp.side0.size() + comp.side1.size());
    }
    if (v_total > k_right + k_left) return {0.0, true, 0, 1};
    return orientation_sum(class_sizes, v_total, n, k_right, k_left);
}

double planted_containment_prob(const EdgeSubset& alpha, int n, int k_right, int k_left) {
    return containment_prob_detail(alpha, n, k_right, k_left).value;
}

double planted_containment_prob(const EdgeSubset& alpha, const ModelParams& params) {
    params.validate();
    return planted_containment_prob(alpha, params.n, params.k_right, params.k_left);
}

double fourier_coefficient(const EdgeSubset& alpha, const ModelParams& params) {
    params.validate();
    double lambda = chi2_bernoulli(params.p, params.q);
    double prob = planted_containment_prob(alpha, params.n, params.k_right, params.k_left);
    if (prob == 0.0) return 0.0;
    return std::pow(lambda, alpha.edge_count() / 2.0) * prob;
}

namespace {

// Union-find with parity and rollback (no path compression), plus per-root
// class sizes, so each enumeration step costs near-constant time and undoes
// exactly.
class ParityForest {
public:
    explicit ParityForest(int n)
        : parent_(n), parity_(n, 0), size_(n, 1), class0_(n, 1), class1_(n, 0) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }

    std::pair<int, int> find(int v) const {  // (root, parity to root)
        int par = 0;
        while (parent_[v] != v) {
            par ^= parity_[v];
            v = parent_[v];
        }
        return {v, par};
    }

    // Joins the components of a and b with an edge; false on an odd cycle
    // (no state change in that case).
    bool unite(int a, int b) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) {
            if (pa == pb) return false;
            log_.push_back({-1, -1, 0, 0});  // edge inside one component, nothing to undo
            return true;
        }
        if (size_[ra] < size_[rb]) {
            std::swap(ra, rb);
            std::swap(pa, pb);
        }
        int rel = pa ^ pb ^ 1;  // parity of rb relative to ra
        log_.push_back({ra, rb, class0_[ra], class1_[ra]});
        parent_[rb] = ra;
        parity_[rb] = rel;
        size_[ra] += size_[rb];
        class0_[ra] += rel ? class1_[rb] : class0_[rb];
        class1_[ra] += rel ? class0_[rb] : class1_[rb];
        return true;
    }

    void undo() {
        auto e = log_.back();
        log_.pop_back();
        if (e.kept < 0) return;
        parent_[e.merged] = e.merged;
        parity_[e.merged] = 0;
        size_[e.kept] -= size_[e.merged];
        class0_[e.kept] = e.class0;
        class1_[e.kept] = e.class1;
    }

    std::pair<int, int> classes_of_root(int r) const { return {class0_[r], class1_[r]}; }

private:
    struct Entry {
        int kept, merged, class0, class1;
    };
    std::vector<int> parent_, parity_;
    std::vector<int> size_, class0_, class1_;
    std::vector<Entry> log_;
};

struct Enumerator {
    int n, k_right, k_left, degree_cap;
    std::vector<std::pair<int, int>> pairs;  // canonical pair order
    double log_lambda;

    ParityForest forest;
    std::vector<int> incidence;   // how many chosen edges touch each vertex
    std::vector<int> chosen;      // edge indices of the current subset
    int support_size = 0;

    std::vector<KahanSum> per_degree;
    std::vector<uint64_t> degree_terms;

    Enumerator(int n_, int kr, int kl, double lambda, int cap)
        : n(n_), k_right(kr), k_left(kl), degree_cap(cap), forest(n_), incidence(n_, 0) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        log_lambda = std::log(lambda);
        per_degree.assign(degree_cap, KahanSum{});
        degree_terms.assign(degree_cap, 0);
    }

    void contribute() {
        // Distinct roots of the support give per-component class sizes.
        std::vector<std::pair<int, int>> class_sizes;
        std::vector<int> roots;
        for (int e : chosen) {
            for (int v : {pairs[e].first, pairs[e].second}) {
                int root = forest.find(v).first;
                if (std::find(roots.begin(), roots.end(), root) == roots.end()) {
                    roots.push_back(root);
                    class_sizes.push_back(forest.classes_of_root(root));
                }
            }
        }
        ContainmentProb prob =
            orientation_sum(class_sizes, support_size, n, k_right, k_left);
        int depth = static_cast<int>(chosen.size());
        double weight = std::exp(depth * log_lambda) * prob.value * prob.value;
        per_degree[depth - 1].add(weight);
        ++degree_terms[depth - 1];
    }

    // Extends the current subset with edges of index > last, depth-first.
    void extend(int last) {
        int depth = static_cast<int>(chosen.size());
        if (depth >= degree_cap) return;
        for (int e = last + 1; e < static_cast<int>(pairs.size()); ++e) {
            auto [a, b] = pairs[e];
            int new_vertices = (incidence[a] == 0) + (incidence[b] == 0);
            // Support only grows along a branch; too-large supports can never
            // contribute again.
            if (support_size + new_vertices > k_right + k_left) continue;
            if (!forest.unite(a, b)) continue;  // odd cycle: prune this branch
            ++incidence[a];
            ++incidence[b];
            support_size += new_vertices;
            chosen.push_back(e);

            contribute();
            extend(e);

            chosen.pop_back();
            support_size -= new_vertices;
            --incidence[a];
            --incidence[b];
            forest.undo();
        }
    }
};

double projected_subset_count(int n, int degree_cap) {
    double m = static_cast<double>(n) * (n - 1) / 2.0;
    double total = 0;
    for (int d = 1; d <= degree_cap; ++d) total += binom_double(static_cast<long>(m), d);
    return total;
}

}  // namespace

std::vector<LowDegreeReport> low_degree_curve(int n, int k_right, int k_left, double lambda,
                                              int max_cap, double budget, int threads) {
    if (k_right < 1 || k_left < 1 || k_right + k_left > n) throw ParamError("invalid planted sizes");
    if (lambda < 0) throw ParamError("lambda must be nonnegative");
    if (max_cap < 0) throw ParamError("degree cap must be nonnegative");

    double projected = projected_subset_count(n, max_cap);
    if (projected > budget)
        throw BudgetExceeded(projected, budget, "edge-subset enumeration");

    const int n_pairs = n * (n - 1) / 2;
    int n_chunks = chunk_grid(n_pairs);
    std::vector<std::vector<KahanSum>> chunk_sums(n_chunks);
    std::vector<std::vector<uint64_t>> chunk_terms(n_chunks);

    if (max_cap > 0 && lambda > 0) {
        // Partition by the first edge index; partial per-degree sums merge in
        // chunk order, so totals are identical for any thread count.
        run_chunked(static_cast<uint64_t>(n_pairs), threads,
                    [&](int chunk, uint64_t begin, uint64_t end) {
                        Enumerator en(n, k_right, k_left, lambda, max_cap);
                        for (uint64_t first = begin; first < end; ++first) {
                            auto [a, b] = en.pairs[first];
                            en.forest.unite(a, b);
                            en.incidence[a] = en.incidence[b] = 1;
                            en.support_size = 2;
                            en.chosen.push_back(static_cast<int>(first));
                            if (en.support_size <= k_right + k_left) {
                                en.contribute();
                                en.extend(static_cast<int>(first));
                            }
                            en.chosen.pop_back();
                            en.support_size = 0;
                            en.incidence[a] = en.incidence[b] = 0;
                            en.forest.undo();
                        }
                        chunk_sums[chunk] = std::move(en.per_degree);
                        chunk_terms[chunk] = std::move(en.degree_terms);
                    });
    }

    std::vector<double> per_degree(max_cap, 0.0);
    std::vector<uint64_t> terms_by_degree(max_cap, 0);
    for (int c = 0; c < n_chunks; ++c) {
        for (int d = 0; d < max_cap && d < static_cast<int>(chunk_sums[c].size()); ++d) {
            per_degree[d] += chunk_sums[c][d].sum;
            terms_by_degree[d] += chunk_terms[c][d];
        }
    }

    std::vector<LowDegreeReport> out;
    out.reserve(max_cap + 1);
    out.push_back(LowDegreeReport{});
    double running = 1.0;
    uint64_t running_terms = 0;
    for (int d = 1; d <= max_cap; ++d) {
        running += per_degree[d - 1];
        running_terms += terms_by_degree[d - 1];
        LowDegreeReport rep;
        rep.degree_cap = d;
        rep.norm_sq = running;
        rep.terms_enumerated = running_terms;
        rep.per_degree.assign(per_degree.begin(), per_degree.begin() + d);
        out.push_back(std::move(rep));
    }
    return out;
}

LowDegreeReport low_degree_norm_sq(int n, int k_right, int k_left, double lambda, int degree_cap,
                                   double budget, int threads) {
    auto curve = low_degree_curve(n, k_right, k_left, lambda, degree_cap, budget, threads);
    return curve.back();
}

LowDegreeReport low_degree_norm_sq(const ModelParams& params, int degree_cap, double budget,
                                   int threads) {
    params.validate();
    double lambda = chi2_bernoulli(params.p, params.q);
    return low_degree_norm_sq(params.n, params.k_right, params.k_left, lambda, degree_cap, budget,
                              threads);
}

std::vector<LowDegreeReport> low_degree_curve(const ModelParams& params, int max_cap,
                                              double budget, int threads) {
    params.validate();
    double lambda = chi2_bernoulli(params.p, params.q);
    return low_degree_curve(params.n, params.k_right, params.k_left, lambda, max_cap, budget,
                            threads);
}

}  // namespace pdbs
