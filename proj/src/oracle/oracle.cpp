#include "lsclique/oracle.hpp"

#include "lsclique/errors.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace lsclique::oracle {

std::string serialize_grid(std::span<const int> cells, std::size_t n) {
    std::string out;
    for (std::size_t r = 0; r < n; ++r) {
        if (r)
            out += '/';
        for (std::size_t c = 0; c < n; ++c) {
            if (c)
                out += ' ';
            out += std::to_string(cells[r * n + c]);
        }
    }
    return out;
}

std::string set_digest(std::vector<std::string> serialized) {
    std::sort(serialized.begin(), serialized.end());
    std::string joined;
    for (const auto& s : serialized) {
        joined += s;
        joined += '\n';
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(joined.data(), joined.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i)
        hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return hex.str();
}

namespace {

// Cell-by-cell backtracking; box_side 0 disables the box constraint.
EnumerationReport enumerate(std::size_t n, std::size_t box_side, bool keep) {
    EnumerationReport rep;
    rep.kind = box_side ? "sudoku" : "latin";
    rep.order = n;
    std::vector<int> cells(n * n, 0);
    std::vector<std::uint32_t> row_used(n, 0), col_used(n, 0), box_used(n, 0);
    std::vector<std::string> found;

    auto box_of = [&](std::size_t r, std::size_t c) { return box_side ? (r / box_side) * box_side + c / box_side : 0; };
    auto place = [&](auto& self, std::size_t cell) -> void {
        if (cell == n * n) {
            ++rep.total;
            found.push_back(serialize_grid(cells, n));
            return;
        }
        const std::size_t r = cell / n, c = cell % n, b = box_of(r, c);
        for (std::size_t s = 0; s < n; ++s) {
            const std::uint32_t bit = 1u << s;
            if ((row_used[r] | col_used[c] | (box_side ? box_used[b] : 0)) & bit)
                continue;
            row_used[r] |= bit;
            col_used[c] |= bit;
            if (box_side)
                box_used[b] |= bit;
            cells[cell] = static_cast<int>(s) + 1;
            self(self, cell + 1);
            row_used[r] &= ~bit;
            col_used[c] &= ~bit;
            if (box_side)
                box_used[b] &= ~bit;
        }
    };
    place(place, 0);
    rep.digest = set_digest(found);
    if (keep) {
        std::sort(found.begin(), found.end());
        rep.grids = std::move(found);
    }
    return rep;
}

}  // namespace

EnumerationReport brute_force_latin(std::size_t n, bool keep_grids) {
    if (n > 5)
        throw OrderTooLarge("brute-force Latin enumeration is limited to n <= 5");
    return enumerate(n, 0, keep_grids);
}

EnumerationReport brute_force_sudoku(std::size_t p, bool keep_grids) {
    if (p != 2)
        throw OrderTooLarge("brute-force Sudoku enumeration is limited to p = 2");
    return enumerate(p * p, p, keep_grids);
}

namespace {

constexpr int max_iterations = 100000;
constexpr double epsilon = 1e-15;

double gamma_p_series(double a, double x) {
    double term = 1.0 / a, sum = term, ap = a;
    for (int i = 0; i < max_iterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * epsilon)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_continued_fraction(double a, double x) {
    const double tiny = std::numeric_limits<double>::min() / epsilon;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < max_iterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < epsilon)
            break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
    if (a <= 0 || x < 0)
        throw InvalidArgument("regularized_gamma_q needs a > 0 and x >= 0");
    if (x == 0)
        return 1.0;
    if (x < a + 1.0)
        return 1.0 - gamma_p_series(a, x);
    return gamma_q_continued_fraction(a, x);
}

double chi_square_p_value(double statistic, double df) {
    return regularized_gamma_q(df / 2.0, statistic / 2.0);
}

ChiSquareReport uniformity_test(const std::vector<std::string>& population, std::uint64_t draws,
                                const std::function<std::string()>& sample) {
    if (population.size() < 2)
        throw InvalidArgument("uniformity test needs a population of at least 2 designs");
    if (draws < 20 * population.size())
        throw InvalidArgument("uniformity test needs at least 20 draws per population member");
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < population.size(); ++i)
        index.emplace(population[i], i);
    if (index.size() != population.size())
        throw InvalidArgument("population contains duplicates");

    ChiSquareReport rep;
    rep.population = population.size();
    rep.draws = draws;
    rep.df = population.size() - 1;
    std::vector<std::uint64_t> observed(population.size(), 0);
    for (std::uint64_t d = 0; d < draws; ++d) {
        auto it = index.find(sample());
        if (it == index.end())
            ++rep.outside;
        else
            ++observed[it->second];
    }
    const double expected = double(draws) / double(population.size());
    for (auto o : observed)
        rep.statistic += (double(o) - expected) * (double(o) - expected) / expected;
    rep.p_value = rep.outside ? 0.0 : chi_square_p_value(rep.statistic, double(rep.df));
    return rep;
}

nlohmann::json to_json(const EnumerationReport& r) {
    return {{"kind", r.kind}, {"n", r.order}, {"total", r.total}, {"digest", r.digest}};
}

nlohmann::json to_json(const ChiSquareReport& r) {
    return {{"population", r.population}, {"draws", r.draws}, {"statistic", r.statistic},
            {"df", r.df},                 {"p_value", r.p_value}, {"outside", r.outside}};
}

}  // namespace lsclique::oracle
