#ifndef PDBS_COMBIN_HPP
#define PDBS_COMBIN_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace pdbs {

// log C(n,k) in natural log; -inf for impossible choices.
inline double log_binom(long n, long k) {
    if (k < 0 || n < 0 || k > n) return -std::numeric_limits<double>::infinity();
    if (k == 0 || k == n) return 0.0;
    return std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) - std::lgamma(double(n - k) + 1);
}

// C(n,k) as a double (0 for impossible choices); saturates to inf gracefully.
inline double binom_double(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0.0;
    return std::exp(log_binom(n, k));
}

// Exact C(n,k) in unsigned 128-bit; returns false on overflow.
inline bool binom_u128(long n, long k, unsigned __int128& out) {
    if (k < 0 || n < 0 || k > n) {
        out = 0;
        return true;
    }
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (long i = 1; i <= k; ++i) {
        unsigned __int128 num = static_cast<unsigned __int128>(n - k + i);
        if (r > (~static_cast<unsigned __int128>(0)) / num) return false;
        r = r * num / static_cast<unsigned __int128>(i);
    }
    out = r;
    return true;
}

inline unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
    while (b) {
        unsigned __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Advances a sorted k-combination of {0..n-1} to its lexicographic successor;
// false once the last combination has been seen.
inline bool next_combination(std::vector<int>& comb, int n) {
    int k = static_cast<int>(comb.size());
    for (int i = k - 1; i >= 0; --i) {
        if (comb[i] < n - k + i) {
            ++comb[i];
            for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

inline std::vector<int> first_combination(int k) {
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    return c;
}

// Lexicographic rank -> combination, for splitting enumeration ranges.
inline std::vector<int> unrank_combination(int n, int k, uint64_t rank) {
    std::vector<int> comb(k);
    int x = 0;
    for (int i = 0; i < k; ++i) {
        for (;; ++x) {
            unsigned __int128 c;
            bool ok = binom_u128(n - 1 - x, k - 1 - i, c);
            uint64_t block = ok ? static_cast<uint64_t>(c) : ~uint64_t{0};
            if (rank < block) break;
            rank -= block;
        }
        comb[i] = x++;
    }
    return comb;
}

}  // namespace pdbs

#endif
