#pragma once

#include "lsclique/bit_graph.hpp"
#include "lsclique/budget.hpp"
#include "lsclique/rng.hpp"
#include "lsclique/vertex_set.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace lsclique {

// Disjointness graph over a vertex set: ids i, j adjacent iff the
// permutations differ at every position.
class CompatibilityGraph {
public:
    // Throws InvalidArgument on an empty vertex set and MemoryBudgetExceeded
    // when the vertex count exceeds budget.max_graph_vertices (adjacency
    // needs V²/8 bytes).
    explicit CompatibilityGraph(VertexSet vertices, const Budget& budget = Budget::defaults());

    const VertexSet& vertices() const noexcept { return vertices_; }
    const BitGraph& adjacency() const noexcept { return adjacency_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::uint64_t edge_count() const noexcept { return edges_; }
    bool adjacent(std::uint32_t a, std::uint32_t b) const { return adjacency_.adjacent(a, b); }

    // Colour of each vertex = its value at position 0. Equal colours are never
    // adjacent and colours are nondecreasing in id, since ids follow
    // lexicographic order.
    std::vector<std::uint32_t> leading_value_classes() const;

private:
    VertexSet vertices_;
    BitGraph adjacency_;
    std::uint64_t edges_ = 0;
};

inline CompatibilityGraph build_graph(VertexSet vs, const Budget& budget = Budget::defaults()) {
    return CompatibilityGraph(std::move(vs), budget);
}

struct SubgraphSample {
    std::size_t parent_vertex_count = 0;
    std::size_t k = 0;
    std::vector<std::uint32_t> selected_ids;  // ascending parent ids
    std::uint64_t seed = 0;
    // Cliques drawn from a subgraph are never uniform over all designs.
    bool uniform = false;
};

struct InducedSubgraph {
    SubgraphSample sample;
    CompatibilityGraph graph;
};

// Selects k distinct parent ids by partial Fisher–Yates over 0..V-1:
// for i in 0..k-1 swap(ids[i], ids[i + below(V - i)]); the first k ids,
// sorted ascending, are kept. Throws InvalidK unless 1 <= k <= V.
std::vector<std::uint32_t> choose_subset(std::size_t vertex_count, std::size_t k, Rng& rng);

InducedSubgraph induced_subgraph(const CompatibilityGraph& g, std::size_t k, std::uint64_t seed);
// Same, drawing from an existing stream; sample.seed is left 0.
InducedSubgraph induced_subgraph(const CompatibilityGraph& g, std::size_t k, Rng& rng);
// Builds the subgraph of the full vertex set without the parent graph, for
// vertex sets too large for a dense adjacency.
InducedSubgraph induced_subgraph(const VertexSet& vs, std::size_t k, Rng& rng,
                                 const Budget& budget = Budget::defaults());

enum class GraphFormat { dimacs, edge_list, dot };

// DIMACS: "p edge V E" then "e i j" (1-based, i < j). Edge list: "i j"
// (0-based, i < j). DOT: undirected graph labelled with 1-based images.
// Throws IoFailure if the stream fails.
void export_graph(std::ostream& os, const CompatibilityGraph& g, GraphFormat format);
void export_graph(std::ostream& os, const BitGraph& g, GraphFormat format);

// Parsers for the two interchange formats; throw ParseError.
BitGraph read_dimacs(std::istream& is);
// Vertex count is 1 + the largest id unless given.
BitGraph read_edge_list(std::istream& is, std::size_t vertex_count = 0);

}  // namespace lsclique
