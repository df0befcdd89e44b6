#pragma once

#include <cstdint>
#include <vector>

#include "taskvec/common/errors.hpp"

namespace taskvec {

// SplitMix64. Used instead of <random> engines plus distribution classes
// because episode sampling must be bit-identical across platforms, and the
// standard distributions are implementation-defined.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, n) via masked rejection: unbiased and portable.
    std::uint64_t bounded(std::uint64_t n) {
        if (n == 0) throw spec_error("bounded draw requires n > 0");
        std::uint64_t mask = n - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        for (;;) {
            std::uint64_t r = next() & mask;
            if (r < n) return r;
        }
    }

private:
    std::uint64_t state_;
};

// Mix two seeds into one stream seed (order-sensitive).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    SplitMix64 rng(a ^ (0x9e3779b97f4a7c15ull + (b << 6) + (b >> 2)));
    rng.next();
    return rng.next() ^ b;
}

// k distinct indices from [0, n), in draw order (partial Fisher-Yates).
inline std::vector<size_t> sample_distinct(SplitMix64& rng, size_t n, size_t k) {
    if (k > n) throw spec_error("cannot sample more distinct indices than the population");
    std::vector<size_t> pool(n);
    for (size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<size_t> out;
    out.reserve(k);
    for (size_t i = 0; i < k; ++i) {
        size_t j = i + static_cast<size_t>(rng.bounded(n - i));
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
    return out;
}

template <typename T>
void shuffle_in_place(SplitMix64& rng, std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng.bounded(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace taskvec
