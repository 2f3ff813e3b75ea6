#pragma once

#include "lsclique/budget.hpp"
#include "lsclique/permutation.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace lsclique {

using BigInt = boost::multiprecision::cpp_int;

enum class VertexKind { latin_derangements, sudoku_derangements };

// Lexicographically sorted permutations disjoint from a base permutation.
// Vertex ids are positions in this order (0-based).
class VertexSet {
public:
    // Validates every invariant: disjoint from base, S-permutation for the
    // Sudoku kind, strictly increasing. Throws InvalidArgument.
    VertexSet(VertexKind kind, Permutation base, std::vector<Permutation> vertices);

    VertexKind kind() const noexcept { return kind_; }
    std::size_t order() const noexcept { return base_.order(); }
    // Box side for the Sudoku kind, 0 for Latin.
    std::size_t box_side() const noexcept { return box_side_; }
    const Permutation& base() const noexcept { return base_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    bool empty() const noexcept { return vertices_.empty(); }
    const Permutation& operator[](std::size_t id) const { return vertices_[id]; }
    std::span<const Permutation> vertices() const noexcept { return vertices_; }

    // Subset by ascending ids; order and kind are kept.
    VertexSet subset(std::span<const std::uint32_t> ids) const;
    std::optional<std::uint32_t> find(const Permutation& pi) const;

private:
    VertexKind kind_;
    Permutation base_;
    std::size_t box_side_ = 0;
    std::vector<Permutation> vertices_;
};

// All derangements of the identity in lexicographic order. Throws
// OrderTooLarge if their number exceeds budget.max_vertex_set.
VertexSet enumerate_derangements(std::size_t n, const Budget& budget = Budget::defaults());

// All S-permutations disjoint from sigma0(p), lexicographically sorted.
// Throws InvalidOrder for p < 2 and OrderTooLarge when the p!^(2p)
// candidate S-permutations exceed budget.max_vertex_set.
VertexSet enumerate_sudoku_derangements(std::size_t p, const Budget& budget = Budget::defaults());

// Every S-permutation of order p², produced by permuting rows within bands
// and columns within stacks of sigma0(p). Sorted, duplicates removed.
std::vector<Permutation> enumerate_s_permutations(std::size_t p, const Budget& budget = Budget::defaults());

// d_n from d_n = (n-1)(d_{n-1} + d_{n-2}), d_0 = 1, d_1 = 0.
BigInt derangement_count(std::size_t n);

BigInt factorial(std::size_t n);

// One permutation per line, 1-based images separated by spaces.
void write_vertex_dump(std::ostream& os, const VertexSet& vs);

}  // namespace lsclique
