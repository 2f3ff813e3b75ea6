#include "lsclique/vertex_set.hpp"

#include "lsclique/errors.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace lsclique {

namespace {

using Value = Permutation::value_type;

std::vector<std::vector<Value>> all_permutations_of(std::size_t m) {
    std::vector<std::vector<Value>> out;
    std::vector<Value> cur(m);
    std::iota(cur.begin(), cur.end(), Value{0});
    do {
        out.push_back(cur);
    } while (std::next_permutation(cur.begin(), cur.end()));
    return out;
}

// Within-block maps for the full grid, one for every choice of a
// permutation per block (p blocks of size p), in mixed-radix order.
std::vector<std::vector<Value>> block_maps(std::size_t p) {
    const auto local = all_permutations_of(p);
    const std::size_t n = p * p;
    std::vector<std::vector<Value>> out;
    std::vector<std::size_t> digit(p, 0);
    while (true) {
        std::vector<Value> map(n);
        for (std::size_t b = 0; b < p; ++b)
            for (std::size_t i = 0; i < p; ++i)
                map[b * p + i] = Value(b * p + local[digit[b]][i]);
        out.push_back(std::move(map));
        std::size_t b = 0;
        while (b < p && ++digit[b] == local.size())
            digit[b++] = 0;
        if (b == p)
            break;
    }
    return out;
}

}  // namespace

VertexSet::VertexSet(VertexKind kind, Permutation base, std::vector<Permutation> vertices)
    : kind_(kind), base_(std::move(base)), vertices_(std::move(vertices)) {
    std::optional<BoxPartition> part;
    if (kind_ == VertexKind::sudoku_derangements) {
        part = BoxPartition::for_order(base_.order());
        box_side_ = part->p();
        if (!is_s_permutation(base_, *part))
            throw InvalidArgument("Sudoku vertex set base " + base_.to_string() + " is not an S-permutation");
    }
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const auto& v = vertices_[i];
        if (!is_derangement_of(v, base_))
            throw InvalidArgument("vertex " + v.to_string() + " is not disjoint from base " + base_.to_string());
        if (part && !is_s_permutation(v, *part))
            throw InvalidArgument("vertex " + v.to_string() + " is not an S-permutation");
        if (i > 0 && lex_compare(vertices_[i - 1], v) != LexOrder::less)
            throw InvalidArgument("vertices are not strictly increasing at id " + std::to_string(i));
    }
}

VertexSet VertexSet::subset(std::span<const std::uint32_t> ids) const {
    std::vector<Permutation> picked;
    picked.reserve(ids.size());
    for (auto id : ids) {
        if (id >= vertices_.size())
            throw InvalidArgument("vertex id " + std::to_string(id) + " out of range");
        picked.push_back(vertices_[id]);
    }
    return VertexSet(kind_, base_, std::move(picked));
}

std::optional<std::uint32_t> VertexSet::find(const Permutation& pi) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), pi);
    if (it == vertices_.end() || *it != pi)
        return std::nullopt;
    return static_cast<std::uint32_t>(it - vertices_.begin());
}

VertexSet enumerate_derangements(std::size_t n, const Budget& budget) {
    if (n > Permutation::max_order)
        throw OrderTooLarge("order " + std::to_string(n) + " exceeds the permutation limit");
    if (derangement_count(n) > budget.max_vertex_set)
        throw OrderTooLarge("order " + std::to_string(n) + " has " + derangement_count(n).str() +
                            " derangements, above the vertex-set budget of " +
                            std::to_string(budget.max_vertex_set));

    std::vector<Permutation> out;
    std::vector<Value> image(n);
    std::vector<bool> used(n, false);
    // Position r never takes value r; values tried in increasing order so the
    // output is lexicographic.
    auto extend = [&](auto& self, std::size_t r) -> void {
        if (r == n) {
            out.push_back(Permutation::from_zero_based(image));
            return;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (v == r || used[v])
                continue;
            used[v] = true;
            image[r] = Value(v);
            self(self, r + 1);
            used[v] = false;
        }
    };
    if (n > 0)
        extend(extend, 0);
    // The empty permutation is the single derangement of order 0.
    else
        out.push_back(Permutation::identity(0));
    return VertexSet(VertexKind::latin_derangements, Permutation::identity(n), std::move(out));
}

std::vector<Permutation> enumerate_s_permutations(std::size_t p, const Budget& budget) {
    if (p < 2)
        throw InvalidOrder("Sudoku designs need p >= 2, got " + std::to_string(p));
    BigInt candidates = 1;
    const BigInt local = factorial(p);
    for (std::size_t i = 0; i < 2 * p; ++i)
        candidates *= local;
    if (candidates > budget.max_vertex_set)
        throw OrderTooLarge("p=" + std::to_string(p) + " has " + candidates.str() +
                            " S-permutations, above the vertex-set budget of " +
                            std::to_string(budget.max_vertex_set));

    const auto base = sigma0(p).permutation();
    const std::size_t n = p * p;
    const auto row_maps = block_maps(p);
    auto col_maps = block_maps(p);
    // Output column c' reads input column col_map[c']; the 1 of input row
    // lands on output column inverse(col_map)[input column].
    for (auto& m : col_maps) {
        std::vector<Value> inv(n);
        for (std::size_t c = 0; c < n; ++c)
            inv[m[c]] = Value(c);
        m = std::move(inv);
    }

    std::vector<Permutation> out;
    out.reserve(row_maps.size() * col_maps.size());
    std::vector<Value> image(n);
    for (const auto& rows : row_maps)
        for (const auto& cols_inv : col_maps) {
            for (std::size_t r = 0; r < n; ++r)
                image[r] = cols_inv[base[rows[r]]];
            out.push_back(Permutation::from_zero_based(image));
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

VertexSet enumerate_sudoku_derangements(std::size_t p, const Budget& budget) {
    const auto all = enumerate_s_permutations(p, budget);
    const auto base = sigma0(p).permutation();
    std::vector<Permutation> out;
    std::copy_if(all.begin(), all.end(), std::back_inserter(out),
                 [&](const Permutation& pi) { return is_derangement_of(pi, base); });
    return VertexSet(VertexKind::sudoku_derangements, base, std::move(out));
}

BigInt derangement_count(std::size_t n) {
    BigInt prev2 = 1;  // d_0
    if (n == 0)
        return prev2;
    BigInt prev1 = 0;  // d_1
    for (std::size_t k = 2; k <= n; ++k) {
        BigInt next = BigInt(k - 1) * (prev1 + prev2);
        prev2 = std::move(prev1);
        prev1 = std::move(next);
    }
    return prev1;
}

BigInt factorial(std::size_t n) {
    BigInt f = 1;
    for (std::size_t k = 2; k <= n; ++k)
        f *= k;
    return f;
}

void write_vertex_dump(std::ostream& os, const VertexSet& vs) {
    for (const auto& v : vs.vertices()) {
        const auto img = v.one_based();
        for (std::size_t r = 0; r < img.size(); ++r)
            os << (r ? " " : "") << img[r];
        os << '\n';
    }
}

}  // namespace lsclique
