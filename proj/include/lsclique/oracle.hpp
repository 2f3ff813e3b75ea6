#pragma once

// Brute-force reference enumerations and statistics. Nothing here uses the
// clique pipeline; grids are plain row-major symbol vectors.

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace lsclique::oracle {

struct EnumerationReport {
    std::string kind;           // "latin" or "sudoku"
    std::size_t order = 0;
    std::uint64_t total = 0;    // distinct valid designs
    std::string digest;         // SHA-256 over the sorted serializations
    std::vector<std::string> grids;  // sorted serializations, if kept
};

// Row-major cells as "1 2 3/2 3 1/3 1 2".
std::string serialize_grid(std::span<const int> cells, std::size_t n);
// Hex SHA-256 of the sorted serializations, each terminated by '\n'.
std::string set_digest(std::vector<std::string> serialized);

// Row-by-row backtracking with row/column masks. Throws OrderTooLarge for
// n > 5.
EnumerationReport brute_force_latin(std::size_t n, bool keep_grids = false);
// Same with box masks. Only p = 2 is supported (OrderTooLarge otherwise).
EnumerationReport brute_force_sudoku(std::size_t p, bool keep_grids = false);

// Regularized upper incomplete gamma Q(a, x): series for x < a + 1,
// Lentz continued fraction otherwise.
double regularized_gamma_q(double a, double x);
// Upper tail of the chi-square distribution.
double chi_square_p_value(double statistic, double df);

struct ChiSquareReport {
    std::size_t population = 0;
    std::uint64_t draws = 0;
    double statistic = 0;
    std::size_t df = 0;
    double p_value = 0;
    std::uint64_t outside = 0;  // draws that matched no population member
};

// Pearson goodness of fit of `draws` samples against the uniform
// distribution on `population` (serialized grids). Any sample outside the
// population is counted in `outside` and makes the p-value 0. Throws
// InvalidArgument when draws < 20 × population.
ChiSquareReport uniformity_test(const std::vector<std::string>& population, std::uint64_t draws,
                                const std::function<std::string()>& sample);

nlohmann::json to_json(const EnumerationReport& r);
nlohmann::json to_json(const ChiSquareReport& r);

}  // namespace lsclique::oracle
