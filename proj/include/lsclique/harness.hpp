#pragma once

// Wires the sampling pipeline to the brute-force oracle.

#include "lsclique/design.hpp"
#include "lsclique/oracle.hpp"

#include <cstdint>
#include <vector>

namespace lsclique {

// Serialized full population of designs. Throws PopulationTooLarge unless
// Latin n <= 4 or Sudoku p = 2.
std::vector<std::string> design_population(DesignKind kind, std::size_t size);

// Draws `draws` designs from the full-graph sampler seeded with `seed` and
// tests them for uniformity over the population. With `biased`, the clique
// index is pinned to 0 while symbols and geometry stay random (a negative
// control that must be rejected).
oracle::ChiSquareReport run_uniformity(DesignKind kind, std::size_t size, std::uint64_t draws, std::uint64_t seed,
                                       bool biased = false);

// Same test over already generated grids.
oracle::ChiSquareReport uniformity_of_grids(DesignKind kind, std::size_t size, const std::vector<DesignGrid>& grids);

inline constexpr double uniformity_p_low = 0.001;
inline constexpr double uniformity_p_high = 0.999;

inline bool uniformity_passes(const oracle::ChiSquareReport& r) {
    return r.outside == 0 && r.p_value > uniformity_p_low && r.p_value < uniformity_p_high;
}

}  // namespace lsclique
