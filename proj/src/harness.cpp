#include "lsclique/harness.hpp"

#include "lsclique/errors.hpp"
#include "lsclique/sampler.hpp"

namespace lsclique {

namespace {

void require_enumerable(DesignKind kind, std::size_t size) {
    const bool ok = kind == DesignKind::latin ? (size >= 2 && size <= 4) : size == 2;
    if (!ok)
        throw PopulationTooLarge("uniformity testing needs an enumerable population: Latin order 2..4 or Sudoku p=2");
}

}  // namespace

std::vector<std::string> design_population(DesignKind kind, std::size_t size) {
    require_enumerable(kind, size);
    auto rep = kind == DesignKind::latin ? oracle::brute_force_latin(size, true) : oracle::brute_force_sudoku(size, true);
    return rep.grids;
}

oracle::ChiSquareReport run_uniformity(DesignKind kind, std::size_t size, std::uint64_t draws, std::uint64_t seed,
                                       bool biased) {
    const auto population = design_population(kind, size);
    SamplerConfig cfg;
    cfg.kind = kind;
    cfg.size = size;
    DesignSampler sampler(cfg, seed);
    const std::size_t n = sampler.order();

    if (!biased)
        return oracle::uniformity_test(population, draws, [&] {
            const auto s = sampler.next();
            return oracle::serialize_grid(s.grid.cells(), n);
        });

    const CliqueSearch search(sampler.graph());
    const auto first = make_ordered_clique(sampler.vertex_set(), search.clique_at(n - 1, 0, search.count_by_root(n - 1)));
    const auto base = kind == DesignKind::latin ? assemble_latin(first) : assemble_sudoku(first, size);
    Rng rng(seed);
    return oracle::uniformity_test(population, draws, [&] {
        auto g = randomize_symbols(base, rng);
        g = kind == DesignKind::latin ? randomize_columns_latin(g, rng) : randomize_sudoku_geometry(g, rng);
        return oracle::serialize_grid(g.cells(), n);
    });
}

oracle::ChiSquareReport uniformity_of_grids(DesignKind kind, std::size_t size, const std::vector<DesignGrid>& grids) {
    const auto population = design_population(kind, size);
    std::size_t next = 0;
    return oracle::uniformity_test(population, grids.size(), [&] {
        const auto& g = grids[next++];
        return oracle::serialize_grid(g.cells(), g.order());
    });
}

}  // namespace lsclique
