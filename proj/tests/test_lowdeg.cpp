#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>
#include <vector>

#include "pdbs/errors.hpp"
#include "pdbs/lowdeg.hpp"
#include "pdbs/measures.hpp"
#include "pdbs/oracle.hpp"

using namespace pdbs;
using doctest::Approx;

namespace {

EdgeSubset subset(int n, std::vector<std::pair<int, int>> edges) {
    return EdgeSubset{n, std::move(edges)};
}

// Brute-force containment count over all placements, by bitmask enumeration.
// Returns (number of placements containing alpha, total placements).
std::pair<unsigned __int128, unsigned __int128> containment_by_masks(const EdgeSubset& alpha,
                                                                     int kr, int kl) {
    int n = alpha.n;
    unsigned __int128 hits = 0, total = 0;
    for (uint32_t r = 0; r < (1u << n); ++r) {
        if (std::popcount(r) != kr) continue;
        for (uint32_t l = 0; l < (1u << n); ++l) {
            if (std::popcount(l) != kl || (r & l)) continue;
            ++total;
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
    }
    return {hits, total};
}

// All edge subsets with 1..max_edges edges, by bitmask over pair slots.
template <class Fn>
void for_each_edge_subset(int n, int max_edges, Fn&& fn) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    const int m = static_cast<int>(pairs.size());
    for (uint32_t bits = 1; bits < (1u << m); ++bits) {
        if (std::popcount(bits) > max_edges) continue;
        EdgeSubset alpha{n, {}};
        for (int e = 0; e < m; ++e)
            if (bits >> e & 1) alpha.edges.push_back(pairs[e]);
        fn(alpha);
    }
}

}  // namespace

TEST_CASE("bipartite certificates") {
    auto single = is_bipartite(subset(5, {{1, 3}}));
    REQUIRE(single.has_value());
    REQUIRE(single->components.size() == 1);
    CHECK(single->components[0].side0 == std::vector<int>{1});
    CHECK(single->components[0].side1 == std::vector<int>{3});

    CHECK_FALSE(is_bipartite(subset(5, {{0, 1}, {1, 2}, {0, 2}})).has_value());  // triangle

    auto square = is_bipartite(subset(6, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
    REQUIRE(square.has_value());
    REQUIRE(square->components.size() == 1);
    CHECK(square->components[0].side0 == std::vector<int>{0, 2});
    CHECK(square->components[0].side1 == std::vector<int>{1, 3});

    // five-cycle is odd
    CHECK_FALSE(is_bipartite(subset(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}})).has_value());

    // two components, each carrying its own classes; side0 holds the smallest
    auto two = is_bipartite(subset(7, {{4, 6}, {0, 2}, {2, 5}}));
    REQUIRE(two.has_value());
    REQUIRE(two->components.size() == 2);
    CHECK(two->components[0].side0 == std::vector<int>{0, 5});
    CHECK(two->components[0].side1 == std::vector<int>{2});
    CHECK(two->components[1].side0 == std::vector<int>{4});
    CHECK(two->components[1].side1 == std::vector<int>{6});
}

TEST_CASE("containment probability on hand-checkable subsets") {
    // triangle: never inside a bipartite block
    CHECK(planted_containment_prob(subset(5, {{0, 1}, {1, 2}, {0, 2}}), 5, 2, 2) == 0.0);

    // single edge at n=4, kR=kL=1: 2/(4*3)
    auto one = containment_prob_detail(subset(4, {{1, 2}}), 4, 1, 1);
    CHECK(one.exact);
    CHECK(one.num == 1);
    CHECK(one.den == 6);

    // support larger than the block can hold
    CHECK(planted_containment_prob(subset(8, {{0, 1}, {2, 3}, {4, 5}}), 8, 1, 2) == 0.0);

    // two-edge path at n=6, kR=kL=2: orientation count 3+3 over 90 placements
    auto path = containment_prob_detail(subset(6, {{0, 1}, {1, 2}}), 6, 2, 2);
    CHECK(path.exact);
    CHECK(path.num == 1);
    CHECK(path.den == 15);
}

TEST_CASE("containment probability equals brute-force placement enumeration") {
    // all subsets with up to 3 edges at n=6, exact rational comparison
    int checked = 0;
    for_each_edge_subset(6, 3, [&](const EdgeSubset& alpha) {
        auto lib = containment_prob_detail(alpha, 6, 2, 2);
        auto [hits, total] = containment_by_masks(alpha, 2, 2);
        REQUIRE(lib.exact);
        // cross-multiplied equality of the two fractions
        CHECK(lib.num * total == hits * lib.den);
        ++checked;
    });
    CHECK(checked == 575);  // C(15,1)+C(15,2)+C(15,3)

    // a few unbalanced block shapes
    for_each_edge_subset(5, 2, [&](const EdgeSubset& alpha) {
        for (auto [kr, kl] : std::vector<std::pair<int, int>>{{1, 3}, {3, 1}, {2, 1}}) {
            auto lib = containment_prob_detail(alpha, 5, kr, kl);
            auto [hits, total] = containment_by_masks(alpha, kr, kl);
            REQUIRE(lib.exact);
            CHECK(lib.num * total == hits * lib.den);
        }
    });

    // larger vertex pool, wider supports
    for_each_edge_subset(8, 2, [&](const EdgeSubset& alpha) {
        for (auto [kr, kl] : std::vector<std::pair<int, int>>{{3, 2}, {2, 4}}) {
            auto lib = containment_prob_detail(alpha, 8, kr, kl);
            auto [hits, total] = containment_by_masks(alpha, kr, kl);
            REQUIRE(lib.exact);
            CHECK(lib.num * total == hits * lib.den);
        }
    });
}

TEST_CASE("containment probability is invariant under relabeling") {
    EdgeSubset a = subset(6, {{0, 1}, {1, 2}, {2, 3}});
    EdgeSubset b = subset(6, {{5, 4}, {4, 2}, {2, 0}});  // same path shape
    // normalize stored order
    for (auto& e : b.edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    CHECK(planted_containment_prob(a, 6, 2, 2) == Approx(planted_containment_prob(b, 6, 2, 2)));
}

TEST_CASE("fourier coefficient") {
    ModelParams pr{4, 1, 1, 0.8, 0.2};  // lambda = 2.25
    CHECK(chi2_bernoulli(0.8, 0.2) == Approx(2.25).epsilon(1e-12));
    CHECK(fourier_coefficient(subset(4, {{0, 1}}), pr) == Approx(0.25).epsilon(1e-12));
    // non-bipartite character has mean zero under the planted model
    ModelParams pr6{6, 2, 2, 0.8, 0.2};
    CHECK(fourier_coefficient(subset(6, {{0, 1}, {1, 2}, {0, 2}}), pr6) == 0.0);
}

TEST_CASE("characters are orthonormal under the null") {
    // exact expectation over all graphs at n=4 for every pair of subsets with
    // at most two edges
    const int n = 4;
    const double q = 0.3;
    std::vector<EdgeSubset> subsets;
    for_each_edge_subset(n, 2, [&](const EdgeSubset& alpha) { subsets.push_back(alpha); });

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    const int m = static_cast<int>(pairs.size());

    auto character = [&](const EdgeSubset& alpha, uint32_t gbits) {
        double value = 1;
        for (auto [a, b] : alpha.edges) {
            int slot = -1;
            for (int e = 0; e < m; ++e)
                if (pairs[e] == std::pair{a, b}) slot = e;
            double indicator = (gbits >> slot) & 1 ? 1.0 : 0.0;
            value *= (indicator - q) / std::sqrt(q * (1 - q));
        }
        return value;
    };

    for (size_t x = 0; x < subsets.size(); ++x) {
        for (size_t y = x; y < subsets.size(); ++y) {
            double expect = 0;
            for (uint32_t g = 0; g < (1u << m); ++g) {
                double pg = 1;
                for (int e = 0; e < m; ++e) pg *= (g >> e & 1) ? q : 1 - q;
                expect += pg * character(subsets[x], g) * character(subsets[y], g);
            }
            CHECK(std::abs(expect - (x == y ? 1.0 : 0.0)) < 1e-10);
        }
    }
}

TEST_CASE("norm basics") {
    CHECK(low_degree_norm_sq(6, 2, 2, 0.5, 0).norm_sq == 1.0);
    CHECK(low_degree_norm_sq(6, 2, 2, 0.0, 3).norm_sq == 1.0);

    // degree-1 increment in closed form: C(n,2) * lambda * (2 kR kL / (n(n-1)))^2
    const int n = 7, kr = 2, kl = 2;
    const double lambda = 0.8;
    auto rep = low_degree_norm_sq(n, kr, kl, lambda, 1);
    double single = 2.0 * kr * kl / (n * (n - 1.0));
    double expected = n * (n - 1) / 2.0 * lambda * single * single;
    CHECK(rep.norm_sq == Approx(1.0 + expected).epsilon(1e-12));
    CHECK(rep.terms_enumerated == uint64_t(n * (n - 1) / 2));
}

TEST_CASE("norm curve is monotone and reaches the full second moment") {
    const int n = 6, kr = 2, kl = 2;
    for (double lambda : {0.5, 2.0}) {
        auto curve = low_degree_curve(n, kr, kl, lambda, kr * kl + 2);
        double m2 = second_moment_exact(n, kr, kl, lambda).value;
        for (size_t d = 1; d < curve.size(); ++d) {
            CHECK(curve[d].norm_sq >= curve[d - 1].norm_sq);
            CHECK(curve[d].norm_sq <= m2 * (1 + 1e-9));
        }
        // every coefficient lives inside some planted block, so the norm is
        // exhausted at cap kR*kL
        CHECK(curve[kr * kl].norm_sq == Approx(m2).epsilon(1e-9));
        CHECK(curve[kr * kl + 2].norm_sq == Approx(m2).epsilon(1e-9));
        // all contributions beyond the block size vanish
        CHECK(curve[kr * kl + 1].per_degree[kr * kl] == 0.0);
    }
}

TEST_CASE("restricting to bipartite subsets loses nothing") {
    // direct check against an all-subsets evaluation with squared
    // coefficients
    const int n = 5, kr = 2, kl = 2;
    ModelParams pr{n, kr, kl, 0.6, 0.2};
    const double lambda = chi2_bernoulli(0.6, 0.2);
    const int cap = 3;
    double total = 1.0;
    for_each_edge_subset(n, cap, [&](const EdgeSubset& alpha) {
        double prob = planted_containment_prob(alpha, n, kr, kl);
        total += std::pow(lambda, alpha.edge_count()) * prob * prob;
    });
    CHECK(low_degree_norm_sq(pr, cap).norm_sq == Approx(total).epsilon(1e-12));
}

TEST_CASE("norm is thread-count independent") {
    auto serial = low_degree_norm_sq(7, 2, 2, 1.3, 4, 1e7, 1);
    auto threaded = low_degree_norm_sq(7, 2, 2, 1.3, 4, 1e7, 4);
    CHECK(serial.norm_sq == threaded.norm_sq);  // bit identical
    CHECK(serial.terms_enumerated == threaded.terms_enumerated);
}

TEST_CASE("norm budget gate") {
    CHECK_THROWS_AS(low_degree_norm_sq(30, 5, 5, 1.0, 6, 1e5), BudgetExceeded);
    try {
        low_degree_norm_sq(30, 5, 5, 1.0, 6, 1e5);
    } catch (const BudgetExceeded& e) {
        CHECK(e.required() > 1e5);
    }
}

TEST_CASE("edge subset validation") {
    CHECK_THROWS_AS(is_bipartite(subset(4, {{2, 1}})), ParamError);          // wrong order
    CHECK_THROWS_AS(is_bipartite(subset(4, {{0, 5}})), ParamError);          // out of range
    CHECK_THROWS_AS(is_bipartite(subset(4, {{0, 1}, {0, 1}})), ParamError);  // duplicate
}
