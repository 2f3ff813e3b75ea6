#include "lsclique/errors.hpp"
#include "lsclique/sampler.hpp"

#include <doctest.h>

#include <set>

using namespace lsclique;

namespace {

SamplerConfig config(DesignKind kind, std::size_t size) {
    SamplerConfig cfg;
    cfg.kind = kind;
    cfg.size = size;
    return cfg;
}

}  // namespace

TEST_CASE("same seed, same stream") {
    for (auto [kind, size] : {std::pair{DesignKind::latin, std::size_t{6}}, std::pair{DesignKind::sudoku, std::size_t{2}}}) {
        DesignSampler a(config(kind, size), 1234), b(config(kind, size), 1234), c(config(kind, size), 1235);
        bool any_difference = false;
        for (int i = 0; i < 20; ++i) {
            const auto sa = a.next(), sb = b.next(), sc = c.next();
            CHECK(sa.grid == sb.grid);
            CHECK(sa.trace.clique_index == sb.trace.clique_index);
            any_difference = any_difference || !(sa.grid == sc.grid);
            CHECK(is_valid(sa.grid));
            CHECK(sa.trace.uniform);
        }
        CHECK(any_difference);
    }
}

TEST_CASE("thread count does not change the stream") {
    auto serial = config(DesignKind::latin, 6);
    auto parallel = serial;
    parallel.threads = 4;
    DesignSampler a(serial, 5), b(parallel, 5);
    CHECK(a.clique_count() == 9408);
    CHECK(b.clique_count() == 9408);
    for (int i = 0; i < 10; ++i)
        CHECK(a.next().grid == b.next().grid);
}

TEST_CASE("precomputed cliques give the same stream as the search") {
    auto cfg = config(DesignKind::latin, 5);
    DesignSampler searched(cfg, 77);
    CliqueSearchOptions o;
    o.target_size = 4;
    DesignSampler stored(cfg, 77, enumerate_maximum_cliques(searched.graph(), o));
    for (int i = 0; i < 20; ++i)
        CHECK(searched.next().grid == stored.next().grid);

    CHECK_THROWS_AS(DesignSampler(cfg, 1, CliqueSet(3, 3, {0, 1, 2})), WrongCliqueSize);
    CHECK_THROWS_AS(DesignSampler(cfg, 1, CliqueSet(4, 4, {})), EmptyCliqueSet);
    CHECK_THROWS_AS(DesignSampler(cfg, 1, CliqueSet(4, 4, {0, 1, 2, 99})), InvalidArgument);
}

TEST_CASE("Latin squares of every small order") {
    for (std::size_t n = 2; n <= 7; ++n) {
        DesignSampler s(config(DesignKind::latin, n), n);
        for (int i = 0; i < 5; ++i) {
            const auto sample = s.next();
            CHECK(sample.grid.order() == n);
            CHECK(is_valid(sample.grid));
            CHECK(replay_trace(sample.trace, s.vertex_set()) == sample.grid);
        }
    }
    CHECK_THROWS_AS(DesignSampler(config(DesignKind::latin, 1), 1), InvalidOrder);
    CHECK_THROWS_AS(DesignSampler(config(DesignKind::sudoku, 1), 1), InvalidOrder);
}

TEST_CASE("subgraph sampling") {
    SUBCASE("order-9 Sudoku through an 809-vertex subgraph") {
        auto cfg = config(DesignKind::sudoku, 3);
        cfg.subgraph_k = 809;
        DesignSampler s(cfg, 2025);
        CHECK_FALSE(s.uniform());
        REQUIRE(s.subgraph().has_value());
        CHECK(s.subgraph()->k == 809);
        CHECK(s.subgraph()->parent_vertex_count == 17972);
        CHECK(s.clique_count() > 0);
        std::set<std::vector<int>> distinct;
        for (int i = 0; i < 5; ++i) {
            const auto sample = s.next();
            CHECK(sample.grid.order() == 9);
            CHECK(is_valid(sample.grid));
            CHECK_FALSE(sample.trace.uniform);
            CHECK(sample.trace.subgraph_k == std::optional<std::size_t>(809));
            CHECK(replay_trace(sample.trace, s.vertex_set()) == sample.grid);
            distinct.insert(sample.grid.cells());
        }
        CHECK(distinct.size() > 1);
    }
    SUBCASE("no attempt succeeds") {
        auto cfg = config(DesignKind::latin, 6);
        cfg.subgraph_k = 5;
        cfg.subgraph_attempts = 3;
        CHECK_THROWS_AS(DesignSampler(cfg, 1), BudgetExceeded);
    }
    SUBCASE("bad k") {
        auto cfg = config(DesignKind::latin, 5);
        cfg.subgraph_k = 45;
        CHECK_THROWS_AS(DesignSampler(cfg, 1), InvalidK);
        cfg.subgraph_k = 0;
        CHECK_THROWS_AS(DesignSampler(cfg, 1), InvalidK);
    }
    SUBCASE("subgraphs and precomputed cliques do not mix") {
        auto cfg = config(DesignKind::latin, 5);
        cfg.subgraph_k = 20;
        CHECK_THROWS_AS(DesignSampler(cfg, 1, CliqueSet(4, 4, {0, 1, 2, 3})), InvalidArgument);
    }
}

TEST_CASE("order too large for the vertex budget") {
    CHECK_THROWS_AS(DesignSampler(config(DesignKind::latin, 12), 1), OrderTooLarge);
    CHECK_THROWS_AS(DesignSampler(config(DesignKind::sudoku, 4), 1), OrderTooLarge);
    CHECK_THROWS_AS(DesignSampler(config(DesignKind::latin, 9), 1), MemoryBudgetExceeded);
}

TEST_CASE("an interrupted count stops the sampler") {
    std::atomic<bool> cancel{true};
    auto cfg = config(DesignKind::latin, 7);
    cfg.cancel = &cancel;
    CHECK_THROWS_AS(DesignSampler(cfg, 1), Interrupted);
}
