#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lsclique {

using Word = std::uint64_t;
inline constexpr std::size_t word_bits = 64;

inline std::size_t words_for(std::size_t bits) {
    return (bits + word_bits - 1) / word_bits;
}

inline bool test_bit(std::span<const Word> set, std::size_t i) {
    return (set[i / word_bits] >> (i % word_bits)) & 1u;
}

inline void set_bit(std::span<Word> set, std::size_t i) {
    set[i / word_bits] |= Word{1} << (i % word_bits);
}

inline std::size_t popcount(std::span<const Word> set) {
    std::size_t c = 0;
    for (auto w : set)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

// Calls f(index) for every set bit in increasing order.
template <class F>
void for_each_bit(std::span<const Word> set, F&& f) {
    for (std::size_t w = 0; w < set.size(); ++w) {
        Word bits = set[w];
        while (bits) {
            f(w * word_bits + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
}

// Undirected simple graph with a dense bitset adjacency row per vertex.
class BitGraph {
public:
    BitGraph() = default;
    explicit BitGraph(std::size_t vertices)
        : n_(vertices), words_(words_for(vertices)), rows_(n_ * words_, 0) {}

    std::size_t size() const noexcept { return n_; }
    std::size_t words() const noexcept { return words_; }

    std::span<const Word> row(std::size_t v) const { return {rows_.data() + v * words_, words_}; }
    std::span<Word> row(std::size_t v) { return {rows_.data() + v * words_, words_}; }

    bool adjacent(std::size_t a, std::size_t b) const { return test_bit(row(a), b); }
    void add_edge(std::size_t a, std::size_t b) {
        set_bit(row(a), b);
        set_bit(row(b), a);
    }
    std::size_t degree(std::size_t v) const { return popcount(row(v)); }
    std::uint64_t edge_count() const {
        std::uint64_t twice = 0;
        for (std::size_t v = 0; v < n_; ++v)
            twice += degree(v);
        return twice / 2;
    }

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<Word> rows_;
};

}  // namespace lsclique
