#pragma once

#include "lsclique/budget.hpp"
#include "lsclique/clique.hpp"
#include "lsclique/design.hpp"
#include "lsclique/graph.hpp"

#include <cstdint>
#include <memory>
#include <optional>

namespace lsclique {

struct SamplerConfig {
    DesignKind kind = DesignKind::latin;
    // Latin: the order n. Sudoku: the box side p.
    std::size_t size = 0;
    // Replace the full graph by a random k-vertex induced subgraph; the
    // resulting designs are not uniform.
    std::optional<std::size_t> subgraph_k;
    // Subgraphs without a clique of full size are redrawn this many times.
    unsigned subgraph_attempts = 32;
    unsigned threads = 1;
    CliqueSearch::Cancel cancel = nullptr;
    Budget budget = Budget::defaults();
};

struct Sample {
    DesignGrid grid;
    SampleTrace trace;
};

// End-to-end sampler. All randomness comes from one Rng seeded once, in this
// order: subgraph vertex choice (only with subgraph_k, repeated on redraws),
// then per design the clique index, the symbol permutation, and the column
// permutation (Latin) or band then stack permutations (Sudoku).
class DesignSampler {
public:
    // Builds the vertex set and graph and counts the full-size cliques.
    // Throws OrderTooLarge / MemoryBudgetExceeded / Interrupted, and
    // BudgetExceeded when no subgraph attempt contains a full-size clique.
    DesignSampler(const SamplerConfig& config, std::uint64_t seed);
    // Uses precomputed cliques of the full graph (ids into the full vertex
    // set) instead of searching.
    DesignSampler(const SamplerConfig& config, std::uint64_t seed, CliqueSet cliques);

    Sample next();

    std::size_t order() const noexcept { return order_; }
    bool uniform() const noexcept { return !sample_; }
    std::uint64_t clique_count() const noexcept;
    const VertexSet& vertex_set() const noexcept { return *full_; }
    const CompatibilityGraph& graph() const noexcept { return *graph_; }
    const std::optional<SubgraphSample>& subgraph() const noexcept { return sample_; }

private:
    void build_vertices();
    DesignGrid assemble(const OrderedClique& clique) const;

    SamplerConfig config_;
    std::uint64_t seed_;
    Rng rng_;
    std::size_t order_ = 0;
    std::uint64_t draws_ = 0;
    std::unique_ptr<VertexSet> full_;
    std::unique_ptr<CompatibilityGraph> graph_;
    std::optional<SubgraphSample> sample_;
    std::unique_ptr<CliqueSearch> search_;
    CliqueCount counted_;
    std::optional<CliqueSet> stored_;
};

}  // namespace lsclique
