#include "lsclique/clique.hpp"
#include "lsclique/errors.hpp"
#include "lsclique/oracle.hpp"

#include <doctest.h>

#include <filesystem>
#include <iterator>
#include <map>
#include <numeric>
#include <fstream>
#include <set>
#include <sstream>

using namespace lsclique;

namespace {

CliqueSearchOptions target(std::size_t t, unsigned threads = 1) {
    CliqueSearchOptions o;
    o.target_size = t;
    o.threads = threads;
    return o;
}

// Plain Bron–Kerbosch without pivoting, on adjacency recomputed with
// is_disjoint; counts maximal cliques by size.
void bron_kerbosch(const VertexSet& vs, std::vector<std::size_t>& r, std::vector<std::size_t> p,
                   std::vector<std::size_t> x, std::map<std::size_t, std::uint64_t>& by_size) {
    if (p.empty() && x.empty()) {
        ++by_size[r.size()];
        return;
    }
    while (!p.empty()) {
        const auto v = p.back();
        std::vector<std::size_t> np, nx;
        for (auto u : p)
            if (u != v && is_disjoint(vs[u], vs[v]))
                np.push_back(u);
        for (auto u : x)
            if (is_disjoint(vs[u], vs[v]))
                nx.push_back(u);
        r.push_back(v);
        bron_kerbosch(vs, r, np, nx, by_size);
        r.pop_back();
        p.pop_back();
        x.push_back(v);
    }
}

std::map<std::size_t, std::uint64_t> maximal_cliques_by_size(const VertexSet& vs) {
    std::map<std::size_t, std::uint64_t> by_size;
    std::vector<std::size_t> r, p(vs.size());
    std::iota(p.begin(), p.end(), 0);
    bron_kerbosch(vs, r, p, {}, by_size);
    return by_size;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("lsclique_test_" + name);
}

}  // namespace

TEST_CASE("maximum clique counts on small Latin graphs") {
    SUBCASE("n=3: the whole graph") {
        CompatibilityGraph g(enumerate_derangements(3));
        auto c = count_maximum_cliques(g, target(2));
        CHECK(c.count == 1);
        CHECK(c.maximum_size == 2);
    }
    SUBCASE("n=4: brute force over all vertex triples") {
        CompatibilityGraph g(enumerate_derangements(4));
        const auto& vs = g.vertices();
        std::uint64_t triples = 0;
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b)
                for (std::size_t c = b + 1; c < vs.size(); ++c)
                    triples += is_disjoint(vs[a], vs[b]) && is_disjoint(vs[a], vs[c]) && is_disjoint(vs[b], vs[c]);
        CHECK(triples == 4);
        CHECK(count_maximum_cliques(g, target(3)).count == triples);
    }
    SUBCASE("n=5") {
        CompatibilityGraph g(enumerate_derangements(5));
        auto c = count_maximum_cliques(g, target(4));
        CHECK(c.count == 56);
        CHECK(c.maximum_size == 4);
        // Unknown size: found by branch and bound first.
        auto u = count_maximum_cliques(g);
        CHECK(u.clique_size == 4);
        CHECK(u.count == 56);
    }
    SUBCASE("n=6 against plain Bron–Kerbosch and the order-6 Latin square count") {
        CompatibilityGraph g(enumerate_derangements(6));
        const auto by_size = maximal_cliques_by_size(g.vertices());
        CHECK(by_size.rbegin()->first == 5);
        CHECK(by_size.rbegin()->second == 9408);
        CHECK(count_maximum_cliques(g, target(5)).count == 9408);
        CHECK(BigInt(9408) * 720 * 120 == BigInt(812851200));
    }
    SUBCASE("p=2 Sudoku graph") {
        CompatibilityGraph g(enumerate_sudoku_derangements(2));
        auto c = count_maximum_cliques(g, target(3));
        CHECK(c.count == 3);
        CHECK(c.maximum_size == 3);
    }
}

TEST_CASE("maximum clique size of Latin graphs is n-1") {
    for (std::size_t n = 2; n <= 7; ++n) {
        CompatibilityGraph g(enumerate_derangements(n));
        CHECK(CliqueSearch(g).maximum_clique_size() == n - 1);
        if (n <= 6)
            CHECK(CliqueSearch(g.adjacency()).maximum_clique_size() == n - 1);
    }
}

TEST_CASE("a target with no cliques reports the true maximum") {
    CompatibilityGraph g(enumerate_derangements(5));
    auto c = count_maximum_cliques(g, target(5));
    CHECK(c.count == 0);
    CHECK(c.maximum_size == 4);
    auto smaller = count_maximum_cliques(g, target(3));
    CHECK(smaller.count > 0);
    CHECK(smaller.maximum_size == 4);
}

TEST_CASE("enumerated cliques are valid, distinct and in stream order") {
    for (std::size_t n = 3; n <= 6; ++n) {
        CompatibilityGraph g(enumerate_derangements(n));
        const auto cs = enumerate_maximum_cliques(g, target(n - 1));
        CHECK(cs.count() == count_maximum_cliques(g, target(n - 1)).count);
        CHECK(cs.is_maximum());
        std::set<std::vector<std::uint32_t>> seen;
        std::vector<std::uint32_t> previous;
        for (std::uint64_t i = 0; i < cs.count(); ++i) {
            const auto c = cs.clique(i);
            std::vector<std::uint32_t> ids(c.begin(), c.end());
            REQUIRE(ids.size() == n - 1);
            for (std::size_t a = 0; a < ids.size(); ++a)
                for (std::size_t b = a + 1; b < ids.size(); ++b) {
                    CHECK(ids[a] < ids[b]);
                    CHECK(is_disjoint(g.vertices()[ids[a]], g.vertices()[ids[b]]));
                }
            CHECK(previous < ids);
            previous = ids;
            seen.insert(ids);
        }
        CHECK(seen.size() == cs.count());
    }
}

TEST_CASE("the worked-example clique is among the 56") {
    CompatibilityGraph g(enumerate_derangements(5));
    const auto& vs = g.vertices();
    std::vector<std::uint32_t> ids;
    for (auto img : {std::vector<int>{2, 5, 4, 3, 1}, {3, 4, 5, 1, 2}, {4, 1, 2, 5, 3}, {5, 3, 1, 2, 4}})
        ids.push_back(*vs.find(Permutation::from_one_based(img)));
    const auto cs = enumerate_maximum_cliques(g, target(4));
    bool found = false;
    for (std::uint64_t i = 0; i < cs.count(); ++i) {
        auto c = cs.clique(i);
        found = found || std::vector<std::uint32_t>(c.begin(), c.end()) == ids;
    }
    CHECK(found);
}

TEST_CASE("parallel and serial counts agree") {
    for (std::size_t n = 2; n <= 6; ++n) {
        CompatibilityGraph g(enumerate_derangements(n));
        CliqueSearch s(g);
        const auto serial = s.count_by_root(n - 1, 1);
        for (unsigned threads : {2u, 3u, 8u})
            CHECK(s.count_by_root(n - 1, threads) == serial);
    }
}

TEST_CASE("clique_at walks the same stream as for_each") {
    CompatibilityGraph g(enumerate_derangements(5));
    CliqueSearch s(g);
    const auto per_root = s.count_by_root(4);
    std::uint64_t index = 0;
    s.for_each(4, [&](std::span<const std::uint32_t> c) {
        CHECK(s.clique_at(4, index, per_root) == std::vector<std::uint32_t>(c.begin(), c.end()));
        ++index;
        return true;
    });
    CHECK(index == 56);
    CHECK_THROWS_AS(s.clique_at(4, 56, per_root), InvalidArgument);

    std::uint64_t from_roots = 0;
    for (std::uint32_t r = 0; r < 44; ++r)
        s.for_each_from_root(4, r, [&](std::span<const std::uint32_t> c) {
            CHECK(c[0] == r);
            ++from_roots;
            return true;
        });
    CHECK(from_roots == 56);
}

TEST_CASE("generic graphs without colours") {
    // 5-cycle plus a triangle on {5,6,7}.
    std::istringstream is("p edge 8 8\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 1 5\ne 6 7\ne 7 8\ne 6 8\n");
    const auto g = read_dimacs(is);
    CliqueSearch s(g);
    CHECK(s.maximum_clique_size() == 3);
    CHECK(s.count(2) == 8);
    CHECK(s.count(3) == 1);
    auto c = count_maximum_cliques(s);
    CHECK(c.clique_size == 3);
    CHECK(c.count == 1);
    CHECK(s.clique_at(3, 0, c.per_root) == std::vector<std::uint32_t>{5, 6, 7});
}

TEST_CASE("colourings are validated") {
    CompatibilityGraph g(enumerate_derangements(4));
    auto colours = g.leading_value_classes();
    CHECK_NOTHROW(CliqueSearch(g.adjacency(), colours));
    std::vector<std::uint32_t> decreasing(colours.rbegin(), colours.rend());
    CHECK_THROWS_AS(CliqueSearch(g.adjacency(), decreasing), InvalidArgument);
    std::vector<std::uint32_t> single(colours.size(), 0);
    CHECK_THROWS_AS(CliqueSearch(g.adjacency(), single), InvalidArgument);
}

TEST_CASE("select_uniform_clique") {
    SUBCASE("a single clique is returned for every seed") {
        CompatibilityGraph g(enumerate_derangements(3));
        const auto cs = enumerate_maximum_cliques(g, target(2));
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto c = select_uniform_clique(cs, g.vertices(), seed);
            CHECK(c.members == std::vector<Permutation>{g.vertices()[0], g.vertices()[1]});
        }
    }
    SUBCASE("empty") {
        CHECK_THROWS_AS(select_uniform_clique(CliqueSet(4, 4, {}), enumerate_derangements(5), 1), EmptyCliqueSet);
    }
    SUBCASE("members come back lexicographically sorted and disjoint") {
        CompatibilityGraph g(enumerate_derangements(5));
        const auto cs = enumerate_maximum_cliques(g, target(4));
        Rng rng(3);
        for (int i = 0; i < 50; ++i) {
            auto c = select_uniform_clique(cs, g.vertices(), rng);
            REQUIRE(c.members.size() == 4);
            for (std::size_t a = 0; a + 1 < 4; ++a)
                CHECK(lex_compare(c.members[a], c.members[a + 1]) == LexOrder::less);
        }
    }
    SUBCASE("56 000 draws at n=5 are uniform over the 56 cliques") {
        CompatibilityGraph g(enumerate_derangements(5));
        CliqueSearch s(g);
        const auto counted = count_maximum_cliques(s, target(4));
        const auto cs = enumerate_maximum_cliques(g, target(4));
        std::map<std::vector<std::uint32_t>, std::uint64_t> index_of;
        for (std::uint64_t i = 0; i < cs.count(); ++i) {
            auto c = cs.clique(i);
            index_of[std::vector<std::uint32_t>(c.begin(), c.end())] = i;
        }
        std::vector<double> observed(56, 0);
        Rng rng(20240601);
        for (int d = 0; d < 56000; ++d) {
            auto c = select_uniform_clique(s, counted, g.vertices(), rng);
            auto ids = c.ids;
            std::sort(ids.begin(), ids.end());
            observed[index_of.at(ids)] += 1;
        }
        double chi2 = 0;
        for (double o : observed)
            chi2 += (o - 1000) * (o - 1000) / 1000;
        const double p = oracle::chi_square_p_value(chi2, 55);
        CHECK(p > 0.001);
        CHECK(p < 0.999);
    }
}

TEST_CASE("storage budget") {
    CompatibilityGraph g(enumerate_derangements(6));
    Budget tight;
    tight.max_stored_cliques = 1000;
    CHECK_THROWS_AS(enumerate_maximum_cliques(g, target(5), tight), StorageExceeded);
}

TEST_CASE("cancellation") {
    CompatibilityGraph g(enumerate_derangements(7));
    std::atomic<bool> cancel{true};
    CliqueSearchOptions o = target(6);
    o.cancel = &cancel;
    CHECK_THROWS_AS(count_maximum_cliques(g, o), Interrupted);
    o.threads = 3;
    CHECK_THROWS_AS(count_maximum_cliques(g, o), Interrupted);
}

TEST_CASE("binary clique store") {
    CompatibilityGraph g(enumerate_derangements(5));
    CliqueSearch s(g);
    const auto cs = enumerate_maximum_cliques(g, target(4));

    SUBCASE("streamed and in-memory writers agree and read back") {
        const auto a = temp_file("store_a.bin"), b = temp_file("store_b.bin");
        auto h = write_clique_store(a, s, 5, 4);
        write_clique_store(b, cs, 5, g.vertex_count());
        CHECK(h.complete);
        CHECK(h.count == 56);
        CHECK(std::filesystem::file_size(a) == 32 + 56 * 4 * 4);
        CHECK(std::filesystem::file_size(a) == std::filesystem::file_size(b));
        const auto back = read_clique_store(a);
        CHECK(back.count() == 56);
        CHECK(std::vector<std::uint32_t>(back.flat_ids().begin(), back.flat_ids().end()) ==
              std::vector<std::uint32_t>(cs.flat_ids().begin(), cs.flat_ids().end()));
        const auto hdr = read_clique_store_header(b);
        CHECK(hdr.order == 5);
        CHECK(hdr.vertex_count == 44);
        CHECK(hdr.clique_size == 4);

        // Little-endian header layout.
        std::ifstream raw(a, std::ios::binary);
        std::vector<unsigned char> bytes(32);
        raw.read(reinterpret_cast<char*>(bytes.data()), 32);
        CHECK(std::string(bytes.begin(), bytes.begin() + 8) == "LSCQSTR1");
        CHECK(bytes[8] == 5);
        CHECK(bytes[12] == 44);
        CHECK(bytes[16] == 56);
        CHECK(bytes[24] == 4);
        CHECK(bytes[28] == 1);
        std::filesystem::remove(a);
        std::filesystem::remove(b);
    }
    SUBCASE("an interrupted writer leaves the file marked incomplete") {
        const auto path = temp_file("store_partial.bin");
        CompatibilityGraph g7(enumerate_derangements(7));
        CliqueSearch s7(g7);
        // The flag is polled every few thousand nodes, so some records are
        // already on disk when the writer stops.
        std::atomic<bool> cancel{true};
        CHECK_THROWS_AS(write_clique_store(path, s7, 7, 6, &cancel), Interrupted);
        const auto h = read_clique_store_header(path);
        CHECK_FALSE(h.complete);
        CHECK_THROWS_AS(read_clique_store(path), ParseError);
        std::filesystem::remove(path);
    }
    SUBCASE("bad magic") {
        const auto path = temp_file("store_bad.bin");
        std::ofstream(path, std::ios::binary) << std::string(32, 'x');
        CHECK_THROWS_AS(read_clique_store(path), ParseError);
        std::filesystem::remove(path);
    }
}

TEST_CASE("ASCII clique lists") {
    CompatibilityGraph g(enumerate_derangements(5));
    const auto cs = enumerate_maximum_cliques(g, target(4));
    std::ostringstream os;
    write_clique_list(os, cs);

    SUBCASE("reversed, shuffled input comes back in stream order") {
        std::vector<std::string> lines;
        std::istringstream in(os.str());
        for (std::string l; std::getline(in, l);) {
            std::istringstream ls(l);
            std::vector<std::string> toks{std::istream_iterator<std::string>(ls), {}};
            std::reverse(toks.begin(), toks.end());
            std::string joined;
            for (auto& t : toks)
                joined += t + " ";
            lines.push_back(joined);
        }
        std::reverse(lines.begin(), lines.end());
        std::string text;
        for (auto& l : lines)
            text += l + "\n";
        std::istringstream is(text);
        const auto back = read_clique_list(is, g.adjacency());
        CHECK(back.count() == 56);
        CHECK(std::vector<std::uint32_t>(back.flat_ids().begin(), back.flat_ids().end()) ==
              std::vector<std::uint32_t>(cs.flat_ids().begin(), cs.flat_ids().end()));
    }
    SUBCASE("errors") {
        auto parse = [&](const std::string& s) {
            std::istringstream is(s);
            return read_clique_list(is, g.adjacency());
        };
        CHECK_THROWS_AS(parse("1 2 3 45\n"), ParseError);
        CHECK_THROWS_AS(parse("1 2\n"), ParseError);  // not adjacent
        auto first = os.str().substr(0, os.str().find('\n') + 1);
        CHECK_THROWS_AS(parse(first + first), ParseError);
        CHECK_THROWS_AS(parse("a b\n"), ParseError);
    }
}
