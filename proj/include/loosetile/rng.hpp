#pragma once

#include <cstdint>
#include <vector>

namespace loosetile {

// SplitMix64: the project-wide random source. Platform-independent by
// construction (pure 64-bit arithmetic, no std::*_distribution), so a seed
// reproduces the same stream on every toolchain. fork(tag) derives an
// independent child stream without advancing the parent.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    Rng fork(std::uint64_t tag) const {
        Rng child(state_ ^ (0x632be59bd9b4e019ull + 0x9e3779b97f4a7c15ull * (tag + 1)));
        child.next();
        return child;
    }

    // Unbiased uniform draw from [0, bound); bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform in [0, 1), 53 bits of precision.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct values from [0, n), in random order.
    std::vector<int> sample(int n, int k) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        std::vector<int> out;
        out.reserve(k);
        for (int i = 0; i < k; ++i) {
            std::size_t j = i + below(static_cast<std::uint64_t>(n - i));
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
        return out;
    }

private:
    std::uint64_t state_;
};

}  // namespace loosetile
