#pragma once

#include "lsclique/design.hpp"
#include "lsclique/sampler.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <vector>

namespace lsclique {

enum class GridFormat { text, json, csv };

// Throws InvalidArgument on anything but text/json/csv.
GridFormat parse_grid_format(const std::string& text);

// Text:  "# kind=latin n=5 seed=1 draw=0 uniform=true" then n rows of
//        space-separated symbols, then a blank line.
// JSON:  one object per line: {kind, n, p (Sudoku only), grid, seed,
//        uniform, trace}.
// CSV:   header "kind,n,p,seed,uniform,c1..c(n²)" then one row-major grid per
//        line; p is empty for Latin squares.
void write_sample(std::ostream& os, const Sample& s, GridFormat format);
void write_csv_header(std::ostream& os, std::size_t n);

nlohmann::json sample_to_json(const Sample& s);
nlohmann::json trace_to_json(const SampleTrace& t);
// Throws ParseError on missing or malformed fields.
SampleTrace trace_from_json(const nlohmann::json& j);

struct ParsedGrid {
    DesignGrid grid;
    std::optional<std::uint64_t> seed;
    std::optional<bool> uniform;
    std::optional<SampleTrace> trace;
    std::size_t line = 0;  // 1-based line where the grid starts
};

// Reads every grid in the stream, guessing the format when none is given:
// JSON if the first non-blank character is '{' or '[', CSV if the first
// data line contains a comma, text otherwise. Grids without a declared kind
// take `default_kind`. Throws ParseError.
std::vector<ParsedGrid> read_grids(std::istream& is, std::optional<GridFormat> format = std::nullopt,
                                   DesignKind default_kind = DesignKind::latin);

}  // namespace lsclique
