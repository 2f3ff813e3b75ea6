#include "lsclique/design.hpp"

#include "lsclique/errors.hpp"

#include <algorithm>
#include <numeric>

namespace lsclique {

std::string to_string(DesignKind kind) {
    return kind == DesignKind::latin ? "latin" : "sudoku";
}

DesignKind parse_design_kind(const std::string& text) {
    if (text == "latin")
        return DesignKind::latin;
    if (text == "sudoku")
        return DesignKind::sudoku;
    throw InvalidArgument("unknown design kind '" + text + "' (expected latin or sudoku)");
}

DesignGrid::DesignGrid(DesignKind kind, std::size_t n, std::vector<int> cells)
    : kind_(kind), n_(n), cells_(std::move(cells)) {
    if (cells_.size() != n_ * n_)
        throw InvalidArgument("grid of order " + std::to_string(n_) + " needs " + std::to_string(n_ * n_) +
                              " cells, got " + std::to_string(cells_.size()));
    if (kind_ == DesignKind::sudoku)
        p_ = BoxPartition::for_order(n_).p();
}

DesignGrid DesignGrid::from_rows(DesignKind kind, const std::vector<std::vector<int>>& rows) {
    std::vector<int> cells;
    for (const auto& row : rows) {
        if (row.size() != rows.size())
            throw InvalidArgument("grid is not square: a row has " + std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(rows.size()));
        cells.insert(cells.end(), row.begin(), row.end());
    }
    return DesignGrid(kind, rows.size(), std::move(cells));
}

std::vector<std::vector<int>> DesignGrid::rows() const {
    std::vector<std::vector<int>> out(n_);
    for (std::size_t r = 0; r < n_; ++r)
        out[r].assign(cells_.begin() + static_cast<std::ptrdiff_t>(r * n_),
                      cells_.begin() + static_cast<std::ptrdiff_t>((r + 1) * n_));
    return out;
}

std::optional<Violation> find_violation(const DesignGrid& g) {
    const std::size_t n = g.order();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const int s = g.at(r, c);
            if (s < 1 || static_cast<std::size_t>(s) > n)
                return Violation{Violation::Where::symbol, r * n + c, s,
                                 "cell (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") holds " +
                                     std::to_string(s) + ", outside 1.." + std::to_string(n)};
        }

    auto duplicate = [&](auto cell_of, Violation::Where where, const char* label) -> std::optional<Violation> {
        for (std::size_t unit = 0; unit < n; ++unit) {
            std::vector<bool> seen(n + 1, false);
            for (std::size_t i = 0; i < n; ++i) {
                const int s = cell_of(unit, i);
                if (seen[static_cast<std::size_t>(s)])
                    return Violation{where, unit, s,
                                     std::string(label) + " " + std::to_string(unit + 1) + " repeats symbol " +
                                         std::to_string(s)};
                seen[static_cast<std::size_t>(s)] = true;
            }
        }
        return std::nullopt;
    };

    if (auto v = duplicate([&](std::size_t r, std::size_t i) { return g.at(r, i); }, Violation::Where::row, "row"))
        return v;
    if (auto v = duplicate([&](std::size_t c, std::size_t i) { return g.at(i, c); }, Violation::Where::column,
                           "column"))
        return v;
    if (g.kind() == DesignKind::sudoku) {
        const std::size_t p = g.box_side();
        auto in_box = [&](std::size_t b, std::size_t i) {
            return g.at((b / p) * p + i / p, (b % p) * p + i % p);
        };
        if (auto v = duplicate(in_box, Violation::Where::box, "box"))
            return v;
    }
    return std::nullopt;
}

GeometryChoice GeometryChoice::identity(std::size_t p) {
    std::vector<std::uint8_t> id(p);
    std::iota(id.begin(), id.end(), std::uint8_t{0});
    return {std::vector<std::vector<std::uint8_t>>(p, id), std::vector<std::vector<std::uint8_t>>(p, id)};
}

namespace {

DesignGrid assemble(DesignKind kind, const Permutation& base, const OrderedClique& clique) {
    const std::size_t n = base.order();
    if (clique.members.size() + 1 != n)
        throw WrongCliqueSize("a design of order " + std::to_string(n) + " needs " + std::to_string(n ? n - 1 : 0) +
                              " clique members, got " + std::to_string(clique.members.size()));
    std::vector<int> cells(n * n, 0);
    for (std::size_t r = 0; r < n; ++r)
        cells[r * n + base[r]] = 1;
    for (std::size_t k = 0; k < clique.members.size(); ++k) {
        const auto& member = clique.members[k];
        if (member.order() != n)
            throw OrderMismatch("clique member " + member.to_string() + " has the wrong order");
        if (k > 0 && lex_compare(clique.members[k - 1], member) != LexOrder::less)
            throw InvalidArgument("clique members are not in increasing lexicographic order");
        for (std::size_t r = 0; r < n; ++r) {
            int& cell = cells[r * n + member[r]];
            if (cell != 0)
                throw InvalidArgument("clique member " + member.to_string() + " overlaps an earlier pattern in row " +
                                      std::to_string(r + 1));
            cell = static_cast<int>(k) + 2;
        }
    }
    return DesignGrid(kind, n, std::move(cells));
}

void require_permutation_of(const std::vector<std::uint8_t>& perm, std::size_t size, const char* what) {
    std::vector<bool> seen(size, false);
    if (perm.size() != size)
        throw InvalidArgument(std::string(what) + " has length " + std::to_string(perm.size()) + ", expected " +
                              std::to_string(size));
    for (auto v : perm) {
        if (v >= size || seen[v])
            throw InvalidArgument(std::string(what) + " is not a permutation");
        seen[v] = true;
    }
}

}  // namespace

DesignGrid assemble_latin(const OrderedClique& clique) {
    if (clique.members.empty())
        throw WrongCliqueSize("empty clique; order-1 squares have no clique members");
    const std::size_t n = clique.members.front().order();
    const auto base = Permutation::identity(n);
    for (const auto& m : clique.members)
        if (m.order() != n || !is_derangement_of(m, base))
            throw NotDisjointFromIdentity(m.to_string() + " is not a derangement of order " + std::to_string(n));
    return assemble(DesignKind::latin, base, clique);
}

DesignGrid assemble_sudoku(const OrderedClique& clique, std::size_t p) {
    const auto base = sigma0(p);
    const auto& part = base.partition();
    for (const auto& m : clique.members)
        if (m.order() != part.n() || !is_s_permutation(m, part) || !is_derangement_of(m, base.permutation()))
            throw NotSudokuDerangement(m.to_string() + " is not a Sudoku-derangement for p=" + std::to_string(p));
    return assemble(DesignKind::sudoku, base.permutation(), clique);
}

DesignGrid apply_symbol_permutation(const DesignGrid& grid, const std::vector<int>& symbols) {
    const std::size_t n = grid.order();
    if (symbols.size() + 1 != n)
        throw InvalidArgument("symbol permutation needs " + std::to_string(n - 1) + " entries");
    std::vector<int> map(n + 1, 0);
    map[1] = 1;
    std::vector<bool> seen(n + 1, false);
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        const int s = symbols[k];
        if (s < 2 || static_cast<std::size_t>(s) > n || seen[static_cast<std::size_t>(s)])
            throw InvalidArgument("symbol permutation must be a permutation of 2.." + std::to_string(n));
        seen[static_cast<std::size_t>(s)] = true;
        map[k + 2] = s;
    }
    auto cells = grid.cells();
    for (auto& c : cells) {
        if (c < 1 || static_cast<std::size_t>(c) > n)
            throw InvalidArgument("grid symbol " + std::to_string(c) + " out of range");
        c = map[static_cast<std::size_t>(c)];
    }
    return DesignGrid(grid.kind(), n, std::move(cells));
}

DesignGrid apply_column_permutation(const DesignGrid& grid, const std::vector<std::uint8_t>& gamma) {
    const std::size_t n = grid.order();
    require_permutation_of(gamma, n, "column permutation");
    std::vector<int> cells(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            cells[r * n + c] = grid.at(r, gamma[c]);
    return DesignGrid(grid.kind(), n, std::move(cells));
}

DesignGrid apply_geometry(const DesignGrid& grid, const GeometryChoice& choice) {
    const std::size_t n = grid.order();
    const std::size_t p = BoxPartition::for_order(n).p();
    if (choice.band_rows.size() != p || choice.stack_cols.size() != p)
        throw InvalidArgument("geometry choice needs " + std::to_string(p) + " band and stack permutations");
    std::vector<std::size_t> row_from(n), col_from(n);
    for (std::size_t b = 0; b < p; ++b) {
        require_permutation_of(choice.band_rows[b], p, "band row permutation");
        require_permutation_of(choice.stack_cols[b], p, "stack column permutation");
        for (std::size_t i = 0; i < p; ++i) {
            row_from[b * p + i] = b * p + choice.band_rows[b][i];
            col_from[b * p + i] = b * p + choice.stack_cols[b][i];
        }
    }
    std::vector<int> cells(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            cells[r * n + c] = grid.at(row_from[r], col_from[c]);
    return DesignGrid(grid.kind(), n, std::move(cells));
}

std::vector<int> draw_symbol_permutation(std::size_t n, Rng& rng) {
    std::vector<int> symbols(n > 0 ? n - 1 : 0);
    std::iota(symbols.begin(), symbols.end(), 2);
    rng.shuffle(std::span<int>(symbols));
    return symbols;
}

std::vector<std::uint8_t> draw_column_permutation(std::size_t n, Rng& rng) {
    return rng.permutation(n);
}

GeometryChoice draw_geometry(std::size_t p, Rng& rng) {
    GeometryChoice g;
    for (std::size_t k = 0; k < p; ++k)
        g.band_rows.push_back(rng.permutation(p));
    for (std::size_t m = 0; m < p; ++m)
        g.stack_cols.push_back(rng.permutation(p));
    return g;
}

DesignGrid randomize_symbols(const DesignGrid& grid, Rng& rng) {
    return apply_symbol_permutation(grid, draw_symbol_permutation(grid.order(), rng));
}

DesignGrid randomize_columns_latin(const DesignGrid& grid, Rng& rng) {
    return apply_column_permutation(grid, draw_column_permutation(grid.order(), rng));
}

DesignGrid randomize_sudoku_geometry(const DesignGrid& grid, Rng& rng) {
    return apply_geometry(grid, draw_geometry(BoxPartition::for_order(grid.order()).p(), rng));
}

BigInt design_multiplier(DesignKind kind, std::size_t n) {
    if (kind == DesignKind::latin)
        return factorial(n) * factorial(n ? n - 1 : 0);
    const std::size_t p = BoxPartition::for_order(n).p();
    BigInt geometry = 1;
    for (std::size_t i = 0; i < 2 * p; ++i)
        geometry *= factorial(p);
    return factorial(n - 1) * geometry;
}

BigInt total_design_count(DesignKind kind, std::size_t n, const BigInt& base_clique_count) {
    return design_multiplier(kind, n) * base_clique_count;
}

DesignGrid replay_trace(const SampleTrace& trace, const VertexSet& vs) {
    const auto clique = make_ordered_clique(vs, trace.clique_ids);
    if (trace.kind == DesignKind::latin)
        return apply_column_permutation(apply_symbol_permutation(assemble_latin(clique), trace.symbols), trace.columns);
    const std::size_t p = BoxPartition::for_order(trace.order).p();
    return apply_geometry(apply_symbol_permutation(assemble_sudoku(clique, p), trace.symbols), trace.geometry);
}

}  // namespace lsclique
