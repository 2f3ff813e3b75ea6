#pragma once

#include "lsclique/bit_graph.hpp"
#include "lsclique/budget.hpp"
#include "lsclique/graph.hpp"
#include "lsclique/rng.hpp"

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace lsclique {

// Fixed-size clique search over a bitset graph. Every clique is produced
// once, as an increasing id tuple, and the stream order is lexicographic
// on those tuples; a clique's index in that stream is stable across runs,
// thread counts and platforms.
//
// An optional colouring (a proper colouring, nondecreasing in vertex id)
// bounds the search: a vertex of colour rank c can start at most C - c more
// clique members. For design graphs the value at position 0 is such a
// colouring.
class CliqueSearch {
public:
    using Cancel = const std::atomic<bool>*;
    // Returns false to stop the enumeration.
    using Visitor = std::function<bool(std::span<const std::uint32_t>)>;

    // Without colours every vertex is its own colour class. Throws
    // InvalidArgument if `colours` is not nondecreasing or not a proper
    // colouring.
    explicit CliqueSearch(const BitGraph& g, std::span<const std::uint32_t> colours = {});
    explicit CliqueSearch(const CompatibilityGraph& g);

    const BitGraph& graph() const noexcept { return *g_; }

    // Number of cliques of exactly `size` vertices whose smallest id is r,
    // for every vertex r. Work is split by root over `threads` workers; the
    // result does not depend on the split. Throws Interrupted.
    std::vector<std::uint64_t> count_by_root(std::size_t size, unsigned threads = 1, Cancel cancel = nullptr) const;
    std::uint64_t count(std::size_t size, unsigned threads = 1, Cancel cancel = nullptr) const;

    bool has_clique(std::size_t size, Cancel cancel = nullptr) const;
    // Branch and bound over the same ordering.
    std::size_t maximum_clique_size(Cancel cancel = nullptr) const;

    // Visits cliques of `size` in stream order.
    void for_each(std::size_t size, const Visitor& visit, Cancel cancel = nullptr) const;
    // Same, restricted to cliques whose smallest id is `root`.
    void for_each_from_root(std::size_t size, std::uint32_t root, const Visitor& visit, Cancel cancel = nullptr) const;

    // The clique at `index` of the stream, located through per-root
    // subtotals so only one root is re-enumerated. Throws InvalidArgument
    // if index is out of range.
    std::vector<std::uint32_t> clique_at(std::size_t size, std::uint64_t index,
                                         std::span<const std::uint64_t> per_root, Cancel cancel = nullptr) const;

private:
    struct Walker;

    const BitGraph* g_;
    std::vector<std::uint32_t> rank_;  // colour rank per vertex
    std::size_t colours_ = 0;
    // end_[need]: first vertex id that can no longer start `need` members.
    std::vector<std::uint32_t> end_;
};

struct CliqueSearchOptions {
    // Known clique size (n - 1 for full design graphs); unknown means the
    // maximum size is found first.
    std::optional<std::size_t> target_size;
    unsigned threads = 1;
    CliqueSearch::Cancel cancel = nullptr;
};

struct CliqueCount {
    std::size_t clique_size = 0;   // size searched for
    std::size_t maximum_size = 0;  // true maximum clique size of the graph
    std::uint64_t count = 0;       // cliques of clique_size
    std::vector<std::uint64_t> per_root;
};

// Cliques of one size, materialized in stream order.
class CliqueSet {
public:
    CliqueSet() = default;
    CliqueSet(std::size_t clique_size, std::size_t maximum_size, std::vector<std::uint32_t> flat_ids);

    std::size_t clique_size() const noexcept { return clique_size_; }
    std::size_t maximum_size() const noexcept { return maximum_size_; }
    std::uint64_t count() const noexcept { return count_; }
    bool is_maximum() const noexcept { return clique_size_ == maximum_size_; }
    std::span<const std::uint32_t> clique(std::uint64_t index) const;
    std::span<const std::uint32_t> flat_ids() const noexcept { return ids_; }

private:
    std::size_t clique_size_ = 0;
    std::size_t maximum_size_ = 0;
    std::uint64_t count_ = 0;
    std::vector<std::uint32_t> ids_;
};

struct OrderedClique {
    std::vector<std::uint32_t> ids;   // vertex ids, matching `members`
    std::vector<Permutation> members;  // strictly increasing, pairwise disjoint
};

CliqueCount count_maximum_cliques(const CompatibilityGraph& g, const CliqueSearchOptions& opts = {});
CliqueCount count_maximum_cliques(const CliqueSearch& search, const CliqueSearchOptions& opts = {});

// Throws StorageExceeded when the cliques would exceed
// budget.max_stored_cliques.
CliqueSet enumerate_maximum_cliques(const CompatibilityGraph& g, const CliqueSearchOptions& opts = {},
                                    const Budget& budget = Budget::defaults());

// Members of the given ids, sorted lexicographically; re-checks pairwise
// disjointness on the permutations. Throws InvalidArgument.
OrderedClique make_ordered_clique(const VertexSet& vs, std::span<const std::uint32_t> ids);

// Uniform index in [0, count) drawn with one rng.below(count) call. Throws
// EmptyCliqueSet.
OrderedClique select_uniform_clique(const CliqueSet& cs, const VertexSet& vs, Rng& rng);
OrderedClique select_uniform_clique(const CliqueSet& cs, const VertexSet& vs, std::uint64_t seed);
// Streaming form: the counts come from a first pass, the chosen index is
// re-enumerated from its root.
OrderedClique select_uniform_clique(const CliqueSearch& search, const CliqueCount& counted, const VertexSet& vs,
                                    Rng& rng, CliqueSearch::Cancel cancel = nullptr);

// Binary clique store: a 32-byte little-endian header (magic "LSCQSTR1",
// u32 order, u32 vertex count, u64 clique count, u32 clique size, u32 flags
// with bit 0 = complete) followed by clique-size u32 ids (0-based) per
// record. Writers emit the header first with the complete bit clear and
// patch it after the last record, so an interrupted file stays marked
// invalid.
struct CliqueStoreHeader {
    std::uint32_t order = 0;
    std::uint32_t vertex_count = 0;
    std::uint64_t count = 0;
    std::uint32_t clique_size = 0;
    bool complete = false;
};

// Streams every clique of the search straight to disk. Throws IoFailure and
// Interrupted (leaving the file marked incomplete).
CliqueStoreHeader write_clique_store(const std::filesystem::path& path, const CliqueSearch& search,
                                     std::size_t order, std::size_t clique_size, CliqueSearch::Cancel cancel = nullptr);
void write_clique_store(const std::filesystem::path& path, const CliqueSet& cs, std::size_t order,
                        std::size_t vertex_count);
CliqueStoreHeader read_clique_store_header(const std::filesystem::path& path);
// Throws ParseError on a bad or incomplete file.
CliqueSet read_clique_store(const std::filesystem::path& path);

// One clique per line, 1-based ids separated by spaces.
void write_clique_list(std::ostream& os, const CliqueSet& cs);
// Parses the format above; checks every clique against `g` (equal sizes,
// ids in range, pairwise adjacent, no repeats) and returns them in stream
// order. maximum_size is set to the clique size. Throws ParseError.
CliqueSet read_clique_list(std::istream& is, const BitGraph& g);

}  // namespace lsclique
