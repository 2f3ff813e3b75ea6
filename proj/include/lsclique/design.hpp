#pragma once

#include "lsclique/clique.hpp"
#include "lsclique/permutation.hpp"
#include "lsclique/rng.hpp"
#include "lsclique/vertex_set.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lsclique {

enum class DesignKind { latin, sudoku };

std::string to_string(DesignKind kind);
// Throws InvalidArgument on anything but "latin" / "sudoku".
DesignKind parse_design_kind(const std::string& text);

// An n×n grid of 1-based symbols with a declared kind. Construction only
// checks the shape; find_violation() checks the design invariants.
class DesignGrid {
public:
    // Throws InvalidArgument if cells.size() != n², or for the Sudoku kind
    // if n is not a perfect square.
    DesignGrid(DesignKind kind, std::size_t n, std::vector<int> cells);
    static DesignGrid from_rows(DesignKind kind, const std::vector<std::vector<int>>& rows);

    DesignKind kind() const noexcept { return kind_; }
    std::size_t order() const noexcept { return n_; }
    std::size_t box_side() const noexcept { return p_; }  // 0 for Latin
    int at(std::size_t r, std::size_t c) const { return cells_[r * n_ + c]; }
    int& at(std::size_t r, std::size_t c) { return cells_[r * n_ + c]; }
    const std::vector<int>& cells() const noexcept { return cells_; }
    std::vector<std::vector<int>> rows() const;

    friend bool operator==(const DesignGrid&, const DesignGrid&) = default;

private:
    DesignKind kind_;
    std::size_t n_;
    std::size_t p_ = 0;
    std::vector<int> cells_;
};

struct Violation {
    enum class Where { symbol, row, column, box };
    Where where;
    std::size_t index = 0;  // 0-based row, column, box, or cell
    int symbol = 0;
    std::string message;  // 1-based, human readable
};

// First violated invariant in scan order (symbols, rows, columns, boxes).
std::optional<Violation> find_violation(const DesignGrid& grid);
inline bool is_valid(const DesignGrid& grid) { return !find_violation(grid).has_value(); }

// Rows-within-band and columns-within-stack choice: band_rows[k][i] is the
// input row (within band k) that becomes output row i of that band; the same
// for stack_cols. All entries 0-based.
struct GeometryChoice {
    std::vector<std::vector<std::uint8_t>> band_rows;
    std::vector<std::vector<std::uint8_t>> stack_cols;

    static GeometryChoice identity(std::size_t p);
    friend bool operator==(const GeometryChoice&, const GeometryChoice&) = default;
};

// Symbol 1 on the identity cells, symbol k+2 on the cells of the k-th member.
// Throws WrongCliqueSize and NotDisjointFromIdentity.
DesignGrid assemble_latin(const OrderedClique& clique);
// Symbol 1 on the cells of sigma0(p), symbol k+2 on the k-th member. Throws
// WrongCliqueSize and NotSudokuDerangement.
DesignGrid assemble_sudoku(const OrderedClique& clique, std::size_t p);

// symbols[k-2] replaces symbol k for k = 2..n; symbol 1 stays. `symbols` is
// a permutation of 2..n. Throws InvalidArgument.
DesignGrid apply_symbol_permutation(const DesignGrid& grid, const std::vector<int>& symbols);
// Output column c is input column gamma[c] (0-based).
DesignGrid apply_column_permutation(const DesignGrid& grid, const std::vector<std::uint8_t>& gamma);
DesignGrid apply_geometry(const DesignGrid& grid, const GeometryChoice& choice);

// Uniform symbol relabelling: one Fisher–Yates shuffle of (2..n).
std::vector<int> draw_symbol_permutation(std::size_t n, Rng& rng);
// Uniform column permutation: one shuffle of (0..n-1).
std::vector<std::uint8_t> draw_column_permutation(std::size_t n, Rng& rng);
// p band shuffles then p stack shuffles, each of (0..p-1).
GeometryChoice draw_geometry(std::size_t p, Rng& rng);

DesignGrid randomize_symbols(const DesignGrid& grid, Rng& rng);
DesignGrid randomize_columns_latin(const DesignGrid& grid, Rng& rng);
DesignGrid randomize_sudoku_geometry(const DesignGrid& grid, Rng& rng);

// Latin: n!·(n-1)!·count. Sudoku (n = p²): (n-1)!·(p!)^(2p)·count.
BigInt total_design_count(DesignKind kind, std::size_t n, const BigInt& base_clique_count);
// The factor multiplying the clique count above.
BigInt design_multiplier(DesignKind kind, std::size_t n);

// Every random choice behind one sampled design.
struct SampleTrace {
    DesignKind kind = DesignKind::latin;
    std::size_t order = 0;
    std::uint64_t seed = 0;
    std::uint64_t draw = 0;               // position in the output stream
    std::uint64_t clique_index = 0;       // in the (sub)graph clique stream
    std::uint64_t clique_count = 0;
    std::vector<std::uint32_t> clique_ids;  // full vertex-set ids, lex order
    std::vector<int> symbols;               // s_2..s_n
    std::vector<std::uint8_t> columns;      // Latin only
    GeometryChoice geometry;                // Sudoku only
    bool uniform = true;
    std::optional<std::size_t> subgraph_k;
};

// Rebuilds the grid from a trace against the full vertex set of its kind.
DesignGrid replay_trace(const SampleTrace& trace, const VertexSet& vs);

}  // namespace lsclique
