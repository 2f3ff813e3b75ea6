#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace lsclique {

// Seeded stream used for every random choice. The engine is mt19937_64
// seeded with the 64-bit seed, whose output sequence is fixed by the C++
// standard; bounded draws and shuffles are implemented here rather than via
// <random> distributions, whose algorithms are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, bound) by rejection: raw draws below 2^64 mod bound are
    // discarded, the rest are reduced mod bound. bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (true) {
            const std::uint64_t x = engine_();
            if (x >= threshold)
                return x % bound;
        }
    }

    // Fisher–Yates, from the last position down: swap(a[i], a[below(i+1)]).
    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    // Uniform permutation of {0..n-1}: identity shuffled.
    std::vector<std::uint8_t> permutation(std::size_t n) {
        std::vector<std::uint8_t> out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = static_cast<std::uint8_t>(i);
        shuffle(std::span<std::uint8_t>(out));
        return out;
    }

private:
    std::mt19937_64 engine_;
};

// Fresh nondeterministic seed for runs without --seed.
std::uint64_t entropy_seed();

}  // namespace lsclique
