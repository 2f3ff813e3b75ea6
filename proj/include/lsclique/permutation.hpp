#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lsclique {

// A bijection of {0..n-1} in one-line form. Values are 0-based internally;
// one_based()/from_one_based() convert at the I/O boundary.
class Permutation {
public:
    using value_type = std::uint8_t;
    static constexpr std::size_t max_order = 255;

    Permutation() = default;

    // Throws InvalidArgument unless `image` is a bijection of {0..n-1}.
    static Permutation from_zero_based(std::span<const value_type> image);
    static Permutation from_one_based(std::span<const int> image);
    static Permutation identity(std::size_t n);

    std::size_t order() const noexcept { return image_.size(); }
    value_type operator[](std::size_t r) const noexcept { return image_[r]; }
    std::span<const value_type> image() const noexcept { return image_; }

    std::vector<int> one_based() const;
    Permutation inverse() const;
    std::string to_string() const;  // "(2,3,1)", 1-based

    // Lexicographic on the image sequence; orders of operands must match.
    friend std::strong_ordering operator<=>(const Permutation&, const Permutation&) = default;
    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    explicit Permutation(std::vector<value_type> image) : image_(std::move(image)) {}
    std::vector<value_type> image_;
};

// Dense 0/1 n×n matrix, row-major.
class PermutationMatrix {
public:
    explicit PermutationMatrix(std::size_t n) : n_(n), cells_(n * n, 0) {}
    std::size_t order() const noexcept { return n_; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return cells_[r * n_ + c]; }
    void set(std::size_t r, std::size_t c, std::uint8_t v) { cells_[r * n_ + c] = v; }
    friend bool operator==(const PermutationMatrix&, const PermutationMatrix&) = default;

private:
    std::size_t n_;
    std::vector<std::uint8_t> cells_;
};

// Square-box partition of an n×n grid, n = p².
class BoxPartition {
public:
    // Throws InvalidOrder if p == 0 or p² exceeds Permutation::max_order.
    explicit BoxPartition(std::size_t p);
    // Throws InvalidOrder if n is not a perfect square.
    static BoxPartition for_order(std::size_t n);

    std::size_t p() const noexcept { return p_; }
    std::size_t n() const noexcept { return p_ * p_; }
    std::size_t band(std::size_t row) const noexcept { return row / p_; }
    std::size_t stack(std::size_t col) const noexcept { return col / p_; }
    std::size_t box(std::size_t row, std::size_t col) const noexcept { return band(row) * p_ + stack(col); }

private:
    std::size_t p_;
};

enum class LexOrder { less, equal, greater };

PermutationMatrix to_matrix(const Permutation& pi);
// Throws NotAPermutationMatrix if some row or column does not sum to 1.
Permutation from_matrix(const PermutationMatrix& m);

// Both throw OrderMismatch on differing orders.
bool is_disjoint(const Permutation& a, const Permutation& b);
bool is_derangement_of(const Permutation& a, const Permutation& base);
LexOrder lex_compare(const Permutation& a, const Permutation& b);

// Exactly one matrix 1 in every box. Throws OrderMismatch.
bool is_s_permutation(const Permutation& pi, const BoxPartition& part);
// Throws InvalidOrder if n is not a perfect square (e.g. n = 2).
bool is_s_permutation(const Permutation& pi);

// A permutation whose matrix has exactly one 1 in every box.
class SPermutation {
public:
    // Throws InvalidArgument if `pi` is not an S-permutation of `part`.
    SPermutation(Permutation pi, BoxPartition part);

    const Permutation& permutation() const noexcept { return pi_; }
    const BoxPartition& partition() const noexcept { return part_; }

private:
    Permutation pi_;
    BoxPartition part_;
};

// Base S-permutation for Sudoku designs: the box (k, m) holds its 1 at
// within-box position (m, k), i.e. row k·p+m maps to column m·p+k.
// Throws InvalidOrder if p < 2.
SPermutation sigma0(std::size_t p);

}  // namespace lsclique
