#include "lsclique/errors.hpp"
#include "lsclique/vertex_set.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

using namespace lsclique;

namespace {

// n! · Σ_{k=0..n} (-1)^k / k!, evaluated exactly as Σ (-1)^k n!/k!.
BigInt inclusion_exclusion_derangements(std::size_t n) {
    BigInt total = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        BigInt term = 1;
        for (std::size_t j = k + 1; j <= n; ++j)
            term *= j;
        total += (k % 2 == 0) ? term : BigInt(-term);
    }
    return total;
}

std::vector<Permutation> all_permutations(std::size_t n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation::from_one_based(v));
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

}  // namespace

TEST_CASE("derangement_count matches the tabulated values") {
    const std::vector<int> table = {1, 0, 1, 2, 9, 44, 265, 1854, 14833, 133496};
    for (std::size_t n = 0; n < table.size(); ++n)
        CHECK(derangement_count(n) == table[n]);
    CHECK(derangement_count(12) == 176214841);
    for (std::size_t n = 0; n <= 20; ++n)
        CHECK(derangement_count(n) == inclusion_exclusion_derangements(n));
}

TEST_CASE("enumerate_derangements") {
    SUBCASE("n=2") {
        auto vs = enumerate_derangements(2);
        REQUIRE(vs.size() == 1);
        CHECK(vs[0].one_based() == std::vector<int>{2, 1});
    }
    SUBCASE("counts equal the recurrence up to n=9") {
        for (std::size_t n = 0; n <= 9; ++n)
            CHECK(BigInt(enumerate_derangements(n).size()) == derangement_count(n));
    }
    SUBCASE("n=5 holds the worked-example clique members") {
        auto vs = enumerate_derangements(5);
        CHECK(vs.size() == 44);
        for (auto img : {std::vector<int>{2, 5, 4, 3, 1}, {3, 4, 5, 1, 2}, {4, 1, 2, 5, 3}, {5, 3, 1, 2, 4}})
            CHECK(vs.find(Permutation::from_one_based(img)).has_value());
    }
    SUBCASE("sorted, and equal to a filter over all permutations") {
        for (std::size_t n = 1; n <= 6; ++n) {
            auto vs = enumerate_derangements(n);
            std::vector<Permutation> brute;
            for (auto& pi : all_permutations(n))
                if (is_derangement_of(pi, Permutation::identity(n)))
                    brute.push_back(pi);
            CHECK(std::vector<Permutation>(vs.vertices().begin(), vs.vertices().end()) == brute);
        }
    }
    SUBCASE("budget") {
        Budget tight;
        tight.max_vertex_set = 100;
        CHECK_NOTHROW(enumerate_derangements(5, tight));
        CHECK_THROWS_AS(enumerate_derangements(6, tight), OrderTooLarge);
        CHECK_THROWS_AS(enumerate_derangements(12), OrderTooLarge);
    }
}

TEST_CASE("S-permutation generator covers every S-permutation") {
    SUBCASE("p=2 against all 4! permutations") {
        const auto gen = enumerate_s_permutations(2);
        std::vector<Permutation> brute;
        for (auto& pi : all_permutations(4))
            if (is_s_permutation(pi, BoxPartition(2)))
                brute.push_back(pi);
        CHECK(brute.size() == 16);
        CHECK(gen == brute);
    }
    SUBCASE("p=3 against all 9! permutations") {
        const auto gen = enumerate_s_permutations(3);
        CHECK(gen.size() == 46656);
        std::vector<Permutation> brute;
        for (auto& pi : all_permutations(9))
            if (is_s_permutation(pi, BoxPartition(3)))
                brute.push_back(pi);
        CHECK(gen == brute);
    }
}

TEST_CASE("enumerate_sudoku_derangements") {
    SUBCASE("p=2") {
        auto vs = enumerate_sudoku_derangements(2);
        CHECK(vs.size() == 7);
        CHECK(vs.kind() == VertexKind::sudoku_derangements);
        CHECK(vs.box_side() == 2);
        // Subset chain: Sudoku-derangements ⊆ derangements of sigma0 ⊆ S_4.
        const auto base = sigma0(2).permutation();
        std::size_t disjoint_from_base = 0;
        for (auto& pi : all_permutations(4)) {
            const bool der = is_derangement_of(pi, base);
            disjoint_from_base += der;
            CHECK(vs.find(pi).has_value() == (der && is_s_permutation(pi, BoxPartition(2))));
        }
        CHECK(disjoint_from_base == 9);
    }
    SUBCASE("p=3") {
        auto vs = enumerate_sudoku_derangements(3);
        CHECK(vs.size() == 17972);
        const auto base = sigma0(3).permutation();
        for (const auto& v : vs.vertices()) {
            CHECK(is_disjoint(v, base));
            CHECK(is_s_permutation(v, BoxPartition(3)));
        }
    }
    CHECK_THROWS_AS(enumerate_sudoku_derangements(1), InvalidOrder);
    CHECK_THROWS_AS(enumerate_sudoku_derangements(4), OrderTooLarge);
}

TEST_CASE("VertexSet invariants are enforced") {
    const auto id3 = Permutation::identity(3);
    const auto a = Permutation::from_one_based(std::vector<int>{2, 3, 1});
    const auto b = Permutation::from_one_based(std::vector<int>{3, 1, 2});
    CHECK_NOTHROW(VertexSet(VertexKind::latin_derangements, id3, {a, b}));
    CHECK_THROWS_AS(VertexSet(VertexKind::latin_derangements, id3, {b, a}), InvalidArgument);
    CHECK_THROWS_AS(VertexSet(VertexKind::latin_derangements, id3, {a, a}), InvalidArgument);
    CHECK_THROWS_AS(VertexSet(VertexKind::latin_derangements, id3, {id3}), InvalidArgument);
    CHECK_THROWS_AS(VertexSet(VertexKind::sudoku_derangements, Permutation::identity(4), {}), InvalidArgument);
}

TEST_CASE("vertex dump is one 1-based permutation per line") {
    std::ostringstream os;
    write_vertex_dump(os, enumerate_derangements(3));
    CHECK(os.str() == "2 3 1\n3 1 2\n");
}
