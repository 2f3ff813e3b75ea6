#include "lsclique/graph.hpp"

#include "lsclique/errors.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace lsclique {

namespace {

// adjacency(i) = complement of the union, over positions r, of the vertices
// sharing vertex i's value at r. Vertex i itself is in that union.
BitGraph disjointness_adjacency(const VertexSet& vs) {
    const std::size_t V = vs.size();
    const std::size_t n = vs.order();
    BitGraph g(V);
    const std::size_t W = g.words();

    std::vector<Word> masks(n * n * W, 0);
    auto mask = [&](std::size_t r, std::size_t value) {
        return std::span<Word>(masks.data() + (r * n + value) * W, W);
    };
    for (std::size_t id = 0; id < V; ++id)
        for (std::size_t r = 0; r < n; ++r)
            set_bit(mask(r, vs[id][r]), id);

    const Word tail = (V % word_bits) ? ((Word{1} << (V % word_bits)) - 1) : ~Word{0};
    std::vector<Word> clash(W);
    for (std::size_t id = 0; id < V; ++id) {
        std::fill(clash.begin(), clash.end(), 0);
        for (std::size_t r = 0; r < n; ++r) {
            auto m = mask(r, vs[id][r]);
            for (std::size_t w = 0; w < W; ++w)
                clash[w] |= m[w];
        }
        auto row = g.row(id);
        for (std::size_t w = 0; w < W; ++w)
            row[w] = ~clash[w];
        if (W)
            row[W - 1] &= tail;
    }
    return g;
}

void check_stream(std::ostream& os) {
    if (!os)
        throw IoFailure("failed writing graph output");
}

}  // namespace

CompatibilityGraph::CompatibilityGraph(VertexSet vertices, const Budget& budget) : vertices_(std::move(vertices)) {
    if (vertices_.empty())
        throw InvalidArgument("cannot build a graph over an empty vertex set");
    if (vertices_.size() > budget.max_graph_vertices)
        throw MemoryBudgetExceeded("graph with " + std::to_string(vertices_.size()) +
                                   " vertices exceeds the dense-graph budget of " +
                                   std::to_string(budget.max_graph_vertices) +
                                   " vertices; use a random subgraph");
    adjacency_ = disjointness_adjacency(vertices_);
    edges_ = adjacency_.edge_count();
}

std::vector<std::uint32_t> CompatibilityGraph::leading_value_classes() const {
    std::vector<std::uint32_t> out(vertices_.size(), 0);
    if (vertices_.order() == 0)
        return out;
    for (std::size_t id = 0; id < vertices_.size(); ++id)
        out[id] = vertices_[id][0];
    return out;
}

std::vector<std::uint32_t> choose_subset(std::size_t vertex_count, std::size_t k, Rng& rng) {
    if (k < 1 || k > vertex_count)
        throw InvalidK("subgraph size k=" + std::to_string(k) + " must lie in 1.." + std::to_string(vertex_count));
    std::vector<std::uint32_t> ids(vertex_count);
    std::iota(ids.begin(), ids.end(), 0u);
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(vertex_count - i));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(k);
    std::sort(ids.begin(), ids.end());
    return ids;
}

InducedSubgraph induced_subgraph(const VertexSet& vs, std::size_t k, Rng& rng, const Budget& budget) {
    auto ids = choose_subset(vs.size(), k, rng);
    CompatibilityGraph sub(vs.subset(ids), budget);
    SubgraphSample sample{vs.size(), k, std::move(ids), 0, false};
    return {std::move(sample), std::move(sub)};
}

InducedSubgraph induced_subgraph(const CompatibilityGraph& g, std::size_t k, Rng& rng) {
    // The parent already fits the dense budget, so its subgraphs do too.
    Budget unlimited;
    unlimited.max_graph_vertices = g.vertex_count();
    return induced_subgraph(g.vertices(), k, rng, unlimited);
}

InducedSubgraph induced_subgraph(const CompatibilityGraph& g, std::size_t k, std::uint64_t seed) {
    Rng rng(seed);
    auto out = induced_subgraph(g, k, rng);
    out.sample.seed = seed;
    return out;
}

void export_graph(std::ostream& os, const BitGraph& g, GraphFormat format) {
    const std::size_t V = g.size();
    auto for_each_edge = [&](auto&& f) {
        for (std::size_t i = 0; i < V; ++i)
            for_each_bit(g.row(i), [&](std::size_t j) {
                if (j > i)
                    f(i, j);
            });
    };
    switch (format) {
    case GraphFormat::dimacs:
        os << "p edge " << V << ' ' << g.edge_count() << '\n';
        for_each_edge([&](std::size_t i, std::size_t j) { os << "e " << i + 1 << ' ' << j + 1 << '\n'; });
        break;
    case GraphFormat::edge_list:
        for_each_edge([&](std::size_t i, std::size_t j) { os << i << ' ' << j << '\n'; });
        break;
    case GraphFormat::dot:
        os << "graph G {\n";
        for (std::size_t i = 0; i < V; ++i)
            os << "  " << i << ";\n";
        for_each_edge([&](std::size_t i, std::size_t j) { os << "  " << i << " -- " << j << ";\n"; });
        os << "}\n";
        break;
    }
    check_stream(os);
}

void export_graph(std::ostream& os, const CompatibilityGraph& g, GraphFormat format) {
    if (format == GraphFormat::dimacs) {
        const auto& vs = g.vertices();
        os << "c disjointness graph, order " << vs.order() << ", "
           << (vs.kind() == VertexKind::latin_derangements ? "latin" : "sudoku") << " vertices\n";
        export_graph(os, g.adjacency(), format);
        return;
    }
    if (format == GraphFormat::dot) {
        const auto& vs = g.vertices();
        os << "graph G {\n";
        for (std::size_t i = 0; i < vs.size(); ++i)
            os << "  " << i << " [label=\"" << vs[i].to_string() << "\"];\n";
        for (std::size_t i = 0; i < vs.size(); ++i)
            for_each_bit(g.adjacency().row(i), [&](std::size_t j) {
                if (j > i)
                    os << "  " << i << " -- " << j << ";\n";
            });
        os << "}\n";
        check_stream(os);
        return;
    }
    export_graph(os, g.adjacency(), format);
}

BitGraph read_dimacs(std::istream& is) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<BitGraph> g;
    std::uint64_t declared_edges = 0;
    std::uint64_t seen_edges = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == 'c')
            continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        auto fail = [&](const std::string& what) {
            throw ParseError("DIMACS line " + std::to_string(line_no) + ": " + what);
        };
        if (tag == "p") {
            std::string kind;
            std::size_t V = 0;
            if (g || !(ls >> kind >> V >> declared_edges) || kind != "edge")
                fail("expected a single 'p edge V E' header");
            g.emplace(V);
        } else if (tag == "e") {
            std::size_t i = 0, j = 0;
            if (!g)
                fail("edge before header");
            if (!(ls >> i >> j) || i < 1 || j < 1 || i > g->size() || j > g->size() || i >= j)
                fail("expected 'e i j' with 1 <= i < j <= V");
            if (!g->adjacent(i - 1, j - 1))
                ++seen_edges;
            g->add_edge(i - 1, j - 1);
        } else {
            fail("unknown line tag '" + tag + "'");
        }
    }
    if (!g)
        throw ParseError("DIMACS input has no 'p edge' header");
    if (seen_edges != declared_edges)
        throw ParseError("DIMACS header declares " + std::to_string(declared_edges) + " edges, found " +
                         std::to_string(seen_edges));
    return std::move(*g);
}

BitGraph read_edge_list(std::istream& is, std::size_t vertex_count) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t i = 0, j = 0;
    std::size_t top = 0;
    while (is >> i >> j) {
        if (i == j)
            throw ParseError("edge list contains a self loop on " + std::to_string(i));
        edges.emplace_back(i, j);
        top = std::max({top, i + 1, j + 1});
    }
    if (!is.eof())
        throw ParseError("edge list contains a malformed entry");
    if (vertex_count == 0)
        vertex_count = top;
    if (top > vertex_count)
        throw ParseError("edge list references vertex " + std::to_string(top - 1) + " beyond the vertex count");
    BitGraph g(vertex_count);
    for (auto [a, b] : edges)
        g.add_edge(a, b);
    return g;
}

}  // namespace lsclique
