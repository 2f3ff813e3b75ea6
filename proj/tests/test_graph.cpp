#include "lsclique/errors.hpp"
#include "lsclique/graph.hpp"

#include <doctest.h>

#include <sstream>

using namespace lsclique;

namespace {

// Pairwise is_disjoint, independent of the bitmask construction.
std::uint64_t naive_edge_count(const VertexSet& vs) {
    std::uint64_t edges = 0;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            edges += is_disjoint(vs[i], vs[j]);
    return edges;
}

}  // namespace

TEST_CASE("build_graph over Latin vertex sets") {
    SUBCASE("n=5") {
        CompatibilityGraph g(enumerate_derangements(5));
        CHECK(g.vertex_count() == 44);
        CHECK(g.edge_count() == 276);
    }
    SUBCASE("n=2") {
        CompatibilityGraph g(enumerate_derangements(2));
        CHECK(g.vertex_count() == 1);
        CHECK(g.edge_count() == 0);
    }
    SUBCASE("adjacency agrees with is_disjoint pair by pair") {
        for (std::size_t n = 2; n <= 6; ++n) {
            CompatibilityGraph g(enumerate_derangements(n));
            const auto& vs = g.vertices();
            std::uint64_t degree_sum = 0;
            for (std::size_t i = 0; i < vs.size(); ++i) {
                CHECK_FALSE(g.adjacent(i, i));
                degree_sum += g.adjacency().degree(i);
                for (std::size_t j = 0; j < vs.size(); ++j)
                    if (i != j && g.adjacent(i, j) != is_disjoint(vs[i], vs[j]))
                        FAIL("adjacency mismatch at n=" << n << " (" << i << "," << j << ")");
            }
            CHECK(degree_sum == 2 * g.edge_count());
            CHECK(g.edge_count() == naive_edge_count(vs));
        }
    }
    CHECK_THROWS_AS(CompatibilityGraph(enumerate_derangements(1)), InvalidArgument);
}

TEST_CASE("build_graph over Sudoku vertex sets") {
    SUBCASE("p=2 is a subgraph of the Latin-style disjointness graph") {
        CompatibilityGraph g(enumerate_sudoku_derangements(2));
        CHECK(g.vertex_count() == 7);
        const auto base = sigma0(2).permutation();
        for (std::size_t i = 0; i < g.vertex_count(); ++i) {
            CHECK(is_derangement_of(g.vertices()[i], base));
            for (std::size_t j = i + 1; j < g.vertex_count(); ++j)
                if (g.adjacent(i, j))
                    CHECK(is_disjoint(g.vertices()[i], g.vertices()[j]));
        }
        CHECK(g.edge_count() == naive_edge_count(g.vertices()));
    }
    SUBCASE("p=3 edge count, frozen from a pairwise is_disjoint pass") {
        CompatibilityGraph g(enumerate_sudoku_derangements(3));
        CHECK(g.vertex_count() == 17972);
        CHECK(g.edge_count() == 55690126);
        CHECK(naive_edge_count(g.vertices()) == 55690126);
    }
}

TEST_CASE("dense graph budget") {
    Budget tight;
    tight.max_graph_vertices = 40;
    CHECK_THROWS_AS(CompatibilityGraph(enumerate_derangements(5), tight), MemoryBudgetExceeded);
    // 14 833 vertices fit under the default 20 000; 133 496 do not.
    CHECK(CompatibilityGraph(enumerate_derangements(8)).vertex_count() == 14833);
    CHECK_THROWS_AS(CompatibilityGraph(enumerate_derangements(9)), MemoryBudgetExceeded);
}

TEST_CASE("induced_subgraph") {
    CompatibilityGraph g(enumerate_derangements(5));

    SUBCASE("k = V keeps every edge") {
        auto sub = induced_subgraph(g, g.vertex_count(), 11);
        CHECK(sub.graph.edge_count() == g.edge_count());
        CHECK(sub.sample.selected_ids.size() == g.vertex_count());
    }
    SUBCASE("k = 1 has no edges") {
        auto sub = induced_subgraph(g, 1, 11);
        CHECK(sub.graph.edge_count() == 0);
    }
    SUBCASE("ids are distinct, sorted, reproducible; adjacency is induced") {
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            auto a = induced_subgraph(g, 17, seed);
            auto b = induced_subgraph(g, 17, seed);
            CHECK(a.sample.selected_ids == b.sample.selected_ids);
            CHECK(a.sample.seed == seed);
            CHECK_FALSE(a.sample.uniform);
            const auto& ids = a.sample.selected_ids;
            REQUIRE(ids.size() == 17);
            for (std::size_t i = 1; i < ids.size(); ++i)
                CHECK(ids[i - 1] < ids[i]);
            for (std::size_t i = 0; i < ids.size(); ++i)
                for (std::size_t j = 0; j < ids.size(); ++j)
                    CHECK(a.graph.adjacent(i, j) == g.adjacent(ids[i], ids[j]));
        }
        CHECK(induced_subgraph(g, 17, 1).sample.selected_ids != induced_subgraph(g, 17, 2).sample.selected_ids);
    }
    SUBCASE("invalid k") {
        CHECK_THROWS_AS(induced_subgraph(g, 0, 1), InvalidK);
        CHECK_THROWS_AS(induced_subgraph(g, 45, 1), InvalidK);
    }
    SUBCASE("vertex sets beyond the dense budget can still be subsampled") {
        Rng rng(5);
        auto sub = induced_subgraph(enumerate_derangements(9), 500, rng);
        CHECK(sub.graph.vertex_count() == 500);
        CHECK(sub.sample.parent_vertex_count == 133496);
    }
}

TEST_CASE("choose_subset draws every vertex equally often") {
    // 10 000 draws of 3 out of 6: each id expected 5 000 times.
    Rng rng(99);
    std::vector<int> hits(6, 0);
    for (int t = 0; t < 10000; ++t)
        for (auto id : choose_subset(6, 3, rng))
            ++hits[id];
    for (int h : hits)
        CHECK(std::abs(h - 5000) < 250);
}

TEST_CASE("export_graph") {
    SUBCASE("DIMACS n=2") {
        std::ostringstream os;
        export_graph(os, CompatibilityGraph(enumerate_derangements(2)), GraphFormat::dimacs);
        CHECK(os.str().find("p edge 1 0\n") != std::string::npos);
        CHECK(os.str().find("\ne ") == std::string::npos);
    }
    SUBCASE("DIMACS n=5 round trip") {
        CompatibilityGraph g(enumerate_derangements(5));
        std::ostringstream os;
        export_graph(os, g, GraphFormat::dimacs);
        CHECK(os.str().find("p edge 44 276\n") != std::string::npos);
        std::istringstream is(os.str());
        auto back = read_dimacs(is);
        CHECK(back.size() == 44);
        CHECK(back.edge_count() == 276);
        for (std::size_t i = 0; i < 44; ++i)
            for (std::size_t j = 0; j < 44; ++j)
                CHECK(back.adjacent(i, j) == g.adjacent(i, j));
    }
    SUBCASE("edge list round trip") {
        CompatibilityGraph g(enumerate_derangements(5));
        std::ostringstream os;
        export_graph(os, g, GraphFormat::edge_list);
        std::istringstream is(os.str());
        CHECK(read_edge_list(is, 44).edge_count() == 276);
        CHECK(os.str().substr(0, os.str().find('\n')).find(' ') != std::string::npos);
    }
    SUBCASE("DOT") {
        std::ostringstream os;
        export_graph(os, CompatibilityGraph(enumerate_derangements(3)), GraphFormat::dot);
        CHECK(os.str() == "graph G {\n  0 [label=\"(2,3,1)\"];\n  1 [label=\"(3,1,2)\"];\n  0 -- 1;\n}\n");
    }
}

TEST_CASE("DIMACS parse errors") {
    auto parse = [](const std::string& s) {
        std::istringstream is(s);
        return read_dimacs(is);
    };
    CHECK_NOTHROW(parse("c comment\np edge 3 1\ne 1 3\n"));
    CHECK_THROWS_AS(parse("e 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse("p edge 3 1\ne 3 1\n"), ParseError);
    CHECK_THROWS_AS(parse("p edge 3 1\ne 1 4\n"), ParseError);
    CHECK_THROWS_AS(parse("p edge 3 2\ne 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse("p col 3 0\n"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
}
