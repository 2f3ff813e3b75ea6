#include "lsclique/sampler.hpp"

#include "lsclique/errors.hpp"

namespace lsclique {

void DesignSampler::build_vertices() {
    if (config_.kind == DesignKind::latin) {
        if (config_.size < 2)
            throw InvalidOrder("Latin sampling needs order >= 2");
        order_ = config_.size;
        full_ = std::make_unique<VertexSet>(enumerate_derangements(order_, config_.budget));
    } else {
        if (config_.size < 2)
            throw InvalidOrder("Sudoku sampling needs p >= 2");
        order_ = config_.size * config_.size;
        full_ = std::make_unique<VertexSet>(enumerate_sudoku_derangements(config_.size, config_.budget));
    }
}

DesignSampler::DesignSampler(const SamplerConfig& config, std::uint64_t seed)
    : config_(config), seed_(seed), rng_(seed) {
    build_vertices();
    const std::size_t target = order_ - 1;
    CliqueSearchOptions opts{target, config_.threads, config_.cancel};

    if (!config_.subgraph_k) {
        graph_ = std::make_unique<CompatibilityGraph>(*full_, config_.budget);
        search_ = std::make_unique<CliqueSearch>(*graph_);
        counted_ = count_maximum_cliques(*search_, opts);
        if (counted_.count == 0)
            throw InvalidArgument("graph has no clique of size " + std::to_string(target));
        return;
    }

    const auto k = *config_.subgraph_k;
    if (k < 1 || k > full_->size())
        throw InvalidK("subgraph size k=" + std::to_string(k) + " must lie in 1.." + std::to_string(full_->size()));
    for (unsigned attempt = 0; attempt < config_.subgraph_attempts; ++attempt) {
        auto sub = induced_subgraph(*full_, k, rng_, config_.budget);
        sub.sample.seed = seed_;
        graph_ = std::make_unique<CompatibilityGraph>(std::move(sub.graph));
        sample_ = std::move(sub.sample);
        search_ = std::make_unique<CliqueSearch>(*graph_);
        counted_ = count_maximum_cliques(*search_, opts);
        if (counted_.count > 0)
            return;
    }
    throw BudgetExceeded("no " + std::to_string(k) + "-vertex subgraph out of " +
                         std::to_string(config_.subgraph_attempts) + " attempts contains a clique of size " +
                         std::to_string(target) + "; increase --subgraph-k");
}

DesignSampler::DesignSampler(const SamplerConfig& config, std::uint64_t seed, CliqueSet cliques)
    : config_(config), seed_(seed), rng_(seed) {
    if (config_.subgraph_k)
        throw InvalidArgument("precomputed cliques cannot be combined with a subgraph");
    build_vertices();
    if (cliques.count() == 0)
        throw EmptyCliqueSet("precomputed clique set is empty");
    if (cliques.clique_size() != order_ - 1)
        throw WrongCliqueSize("precomputed cliques have size " + std::to_string(cliques.clique_size()) +
                              ", expected " + std::to_string(order_ - 1));
    for (auto id : cliques.flat_ids())
        if (id >= full_->size())
            throw InvalidArgument("precomputed clique references vertex " + std::to_string(id + 1) +
                                  " beyond the vertex set");
    stored_ = std::move(cliques);
}

std::uint64_t DesignSampler::clique_count() const noexcept {
    return stored_ ? stored_->count() : counted_.count;
}

DesignGrid DesignSampler::assemble(const OrderedClique& clique) const {
    return config_.kind == DesignKind::latin ? assemble_latin(clique) : assemble_sudoku(clique, config_.size);
}

Sample DesignSampler::next() {
    SampleTrace trace;
    trace.kind = config_.kind;
    trace.order = order_;
    trace.seed = seed_;
    trace.draw = draws_++;
    trace.uniform = uniform();
    if (sample_)
        trace.subgraph_k = sample_->k;
    trace.clique_count = clique_count();

    trace.clique_index = rng_.below(trace.clique_count);
    std::vector<std::uint32_t> ids;
    if (stored_) {
        const auto c = stored_->clique(trace.clique_index);
        ids.assign(c.begin(), c.end());
    } else {
        ids = search_->clique_at(counted_.clique_size, trace.clique_index, counted_.per_root, config_.cancel);
        // Subgraph ids map back to the full vertex set.
        if (sample_)
            for (auto& id : ids)
                id = sample_->selected_ids[id];
    }
    const auto clique = make_ordered_clique(*full_, ids);
    trace.clique_ids = clique.ids;

    auto grid = assemble(clique);
    trace.symbols = draw_symbol_permutation(order_, rng_);
    grid = apply_symbol_permutation(grid, trace.symbols);
    if (config_.kind == DesignKind::latin) {
        trace.columns = draw_column_permutation(order_, rng_);
        grid = apply_column_permutation(grid, trace.columns);
    } else {
        trace.geometry = draw_geometry(config_.size, rng_);
        grid = apply_geometry(grid, trace.geometry);
    }
    return {std::move(grid), std::move(trace)};
}

}  // namespace lsclique
