#pragma once

#include <cstddef>
#include <cstdint>

namespace lsclique {

// Resource limits. Defaults can be overridden through environment variables
// holding decimal integers:
//   LSCLIQUE_MAX_VERTEX_SET      max permutations held by one vertex set
//   LSCLIQUE_MAX_GRAPH_VERTICES  max vertices of a dense bitset graph
//   LSCLIQUE_MAX_STORED_CLIQUES  max cliques materialized in memory
struct Budget {
    std::size_t max_vertex_set = 2'000'000;
    std::size_t max_graph_vertices = 20'000;
    std::uint64_t max_stored_cliques = 20'000'000;

    static Budget defaults() { return {}; }
    // Defaults with any environment overrides applied. Throws InvalidArgument
    // on malformed values.
    static Budget from_environment();
};

}  // namespace lsclique
