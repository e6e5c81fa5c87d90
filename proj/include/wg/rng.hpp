#ifndef WG_RNG_HPP
#define WG_RNG_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace wg {

// Counter-based deterministic generator: output i is splitmix64(seed, i).
// No ambient entropy anywhere; identical (seed, call sequence) gives
// identical streams on every platform.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    // Derive an independent stream (used to give submodules their own
    // counters without coupling call orders).
    CounterRng fork(std::uint64_t tag) { return CounterRng(mix(seed_ ^ (0x9e3779b97f4a7c15ULL * (tag + 1)), next())); }

    std::uint64_t next() {
        std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * ++counter_;
        return mix(z, z);
    }

    // Uniform in [0, bound), bound > 0; rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("CounterRng::below: zero bound");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        for (;;) {
            std::uint64_t v = next();
            if (v < limit) return v % bound;
        }
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

    // Random size-m subset of {0,...,n-1}, sorted.
    std::vector<std::size_t> subset(std::size_t n, std::size_t m) {
        if (m > n) throw std::invalid_argument("CounterRng::subset: m > n");
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        for (std::size_t i = 0; i < m; ++i) std::swap(idx[i], idx[i + below(n - i)]);
        idx.resize(m);
        std::sort(idx.begin(), idx.end());
        return idx;
    }

private:
    static std::uint64_t mix(std::uint64_t z, std::uint64_t salt) {
        z ^= salt >> 31;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace wg

#endif
