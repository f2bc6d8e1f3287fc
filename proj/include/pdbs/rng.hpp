#ifndef PDBS_RNG_HPP
#define PDBS_RNG_HPP

#include <cstdint>
#include <string_view>

namespace pdbs {

// Reproducibility contract: a (root, purpose, index) triple identifies a
// substream, and every draw from it is bit-identical on every platform and at
// every thread count. All generator state is plain integer arithmetic; no
// std::*_distribution is used anywhere (their outputs are implementation
// defined).

namespace detail {

inline uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace detail

// xoshiro256++, seeded through splitmix64.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : s_) w = detail::splitmix64(sm);
    }

    uint64_t next_u64() {
        const uint64_t result = detail::rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0,1) with 53 random bits. Never returns 1.0, so
    // bernoulli(1) is always true and bernoulli(0) always false.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_unit() < p; }

    // Uniform integer in [0, n). Power-of-two mask rejection: unbiased and
    // platform independent.
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        uint64_t mask = ~uint64_t{0} >> __builtin_clzll(n - 1);
        uint64_t v;
        do {
            v = next_u64() & mask;
        } while (v >= n);
        return v;
    }

private:
    uint64_t s_[4];
};

// Root seed plus substream derivation. Substreams for distinct
// (purpose, index) labels are independent for all practical purposes.
struct Seed {
    uint64_t root = 0;

    Seed child(std::string_view purpose, uint64_t index = 0) const {
        uint64_t st = root ^ detail::fnv1a64(purpose);
        detail::splitmix64(st);
        st ^= index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
        uint64_t st2 = st;
        return Seed{detail::splitmix64(st2)};
    }

    Rng stream(std::string_view purpose, uint64_t index = 0) const {
        return Rng(child(purpose, index).root);
    }
};

}  // namespace pdbs

#endif
