#include "lsclique/grid_io.hpp"

#include "lsclique/errors.hpp"

#include <cctype>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace lsclique {

using nlohmann::json;

GridFormat parse_grid_format(const std::string& text) {
    if (text == "text")
        return GridFormat::text;
    if (text == "json")
        return GridFormat::json;
    if (text == "csv")
        return GridFormat::csv;
    throw InvalidArgument("unknown grid format '" + text + "' (expected text, json or csv)");
}

namespace {

std::vector<int> to_one_based(const std::vector<std::uint8_t>& v) {
    std::vector<int> out(v.begin(), v.end());
    for (auto& x : out)
        ++x;
    return out;
}

std::vector<std::uint8_t> from_one_based(const std::vector<int>& v) {
    std::vector<std::uint8_t> out;
    for (int x : v) {
        if (x < 1 || x > 256)
            throw ParseError("trace permutation entry " + std::to_string(x) + " out of range");
        out.push_back(static_cast<std::uint8_t>(x - 1));
    }
    return out;
}

}  // namespace

json trace_to_json(const SampleTrace& t) {
    json j;
    j["seed"] = t.seed;
    j["draw"] = t.draw;
    j["clique_index"] = t.clique_index;
    j["clique_count"] = t.clique_count;
    std::vector<std::uint32_t> ids(t.clique_ids);
    for (auto& id : ids)
        ++id;
    j["clique"] = ids;
    j["symbols"] = t.symbols;
    if (t.kind == DesignKind::latin) {
        j["columns"] = to_one_based(t.columns);
    } else {
        json bands = json::array(), stacks = json::array();
        for (const auto& b : t.geometry.band_rows)
            bands.push_back(to_one_based(b));
        for (const auto& s : t.geometry.stack_cols)
            stacks.push_back(to_one_based(s));
        j["band_rows"] = bands;
        j["stack_columns"] = stacks;
    }
    j["uniform"] = t.uniform;
    j["subgraph_k"] = t.subgraph_k ? json(*t.subgraph_k) : json(nullptr);
    return j;
}

SampleTrace trace_from_json(const json& j) {
    try {
        SampleTrace t;
        t.seed = j.at("seed").get<std::uint64_t>();
        t.draw = j.value("draw", std::uint64_t{0});
        t.clique_index = j.at("clique_index").get<std::uint64_t>();
        t.clique_count = j.at("clique_count").get<std::uint64_t>();
        for (auto id : j.at("clique").get<std::vector<std::uint32_t>>()) {
            if (id == 0)
                throw ParseError("trace clique ids are 1-based");
            t.clique_ids.push_back(id - 1);
        }
        t.symbols = j.at("symbols").get<std::vector<int>>();
        t.order = t.symbols.size() + 1;
        if (j.contains("columns")) {
            t.kind = DesignKind::latin;
            t.columns = from_one_based(j.at("columns").get<std::vector<int>>());
        } else {
            t.kind = DesignKind::sudoku;
            for (const auto& b : j.at("band_rows"))
                t.geometry.band_rows.push_back(from_one_based(b.get<std::vector<int>>()));
            for (const auto& s : j.at("stack_columns"))
                t.geometry.stack_cols.push_back(from_one_based(s.get<std::vector<int>>()));
        }
        t.uniform = j.at("uniform").get<bool>();
        if (j.contains("subgraph_k") && !j.at("subgraph_k").is_null())
            t.subgraph_k = j.at("subgraph_k").get<std::size_t>();
        return t;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed trace: ") + e.what());
    }
}

json sample_to_json(const Sample& s) {
    json j;
    j["kind"] = to_string(s.grid.kind());
    j["n"] = s.grid.order();
    if (s.grid.kind() == DesignKind::sudoku)
        j["p"] = s.grid.box_side();
    j["grid"] = s.grid.rows();
    j["seed"] = s.trace.seed;
    j["uniform"] = s.trace.uniform;
    j["trace"] = trace_to_json(s.trace);
    return j;
}

void write_csv_header(std::ostream& os, std::size_t n) {
    os << "kind,n,p,seed,uniform";
    for (std::size_t i = 1; i <= n * n; ++i)
        os << ",c" << i;
    os << '\n';
}

void write_sample(std::ostream& os, const Sample& s, GridFormat format) {
    const auto& g = s.grid;
    switch (format) {
    case GridFormat::text:
        os << "# kind=" << to_string(g.kind()) << " n=" << g.order();
        if (g.kind() == DesignKind::sudoku)
            os << " p=" << g.box_side();
        os << " seed=" << s.trace.seed << " draw=" << s.trace.draw
           << " uniform=" << (s.trace.uniform ? "true" : "false") << '\n';
        for (std::size_t r = 0; r < g.order(); ++r) {
            for (std::size_t c = 0; c < g.order(); ++c)
                os << (c ? " " : "") << g.at(r, c);
            os << '\n';
        }
        os << '\n';
        break;
    case GridFormat::json:
        os << sample_to_json(s).dump() << '\n';
        break;
    case GridFormat::csv:
        os << to_string(g.kind()) << ',' << g.order() << ',';
        if (g.kind() == DesignKind::sudoku)
            os << g.box_side();
        os << ',' << s.trace.seed << ',' << (s.trace.uniform ? "true" : "false");
        for (int v : g.cells())
            os << ',' << v;
        os << '\n';
        break;
    }
    if (!os)
        throw IoFailure("failed writing design output");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

int parse_int(const std::string& token, std::size_t line) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(token, &used);
        if (used != token.size())
            throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": '" + token + "' is not an integer");
    }
}

std::optional<bool> parse_bool(const std::string& s) {
    if (s == "true")
        return true;
    if (s == "false")
        return false;
    return std::nullopt;
}

DesignGrid make_grid(DesignKind kind, std::vector<std::vector<int>> rows, std::size_t line) {
    try {
        return DesignGrid::from_rows(kind, rows);
    } catch (const InvalidArgument& e) {
        throw ParseError("grid at line " + std::to_string(line) + ": " + e.what());
    }
}

std::vector<ParsedGrid> read_text(std::istream& is, DesignKind default_kind) {
    std::vector<ParsedGrid> out;
    std::map<std::string, std::string> header;
    std::vector<std::vector<int>> rows;
    std::size_t start = 0, line_no = 0;

    auto flush = [&] {
        if (rows.empty())
            return;
        DesignKind kind = default_kind;
        if (auto it = header.find("kind"); it != header.end())
            kind = parse_design_kind(it->second);
        ParsedGrid pg{make_grid(kind, std::move(rows), start), std::nullopt, std::nullopt, std::nullopt, start};
        if (auto it = header.find("seed"); it != header.end())
            pg.seed = std::stoull(it->second);
        if (auto it = header.find("uniform"); it != header.end())
            pg.uniform = parse_bool(it->second);
        out.push_back(std::move(pg));
        rows.clear();
        header.clear();
    };

    std::string line;
    while (std::getline(is, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty()) {
            flush();
            continue;
        }
        if (t[0] == '#') {
            flush();
            std::istringstream hs(t.substr(1));
            std::string kv;
            while (hs >> kv)
                if (auto eq = kv.find('='); eq != std::string::npos)
                    header[kv.substr(0, eq)] = kv.substr(eq + 1);
            continue;
        }
        if (rows.empty())
            start = line_no;
        std::istringstream ls(t);
        std::vector<int> row;
        std::string tok;
        while (ls >> tok)
            row.push_back(parse_int(tok, line_no));
        rows.push_back(std::move(row));
    }
    flush();
    return out;
}

std::vector<ParsedGrid> read_csv(std::istream& is) {
    std::vector<ParsedGrid> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t.rfind("kind,", 0) == 0 || t[0] == '#')
            continue;
        const auto fields = split(t, ',');
        if (fields.size() < 6)
            throw ParseError("line " + std::to_string(line_no) + ": too few CSV fields");
        const auto kind = parse_design_kind(fields[0]);
        const auto n = static_cast<std::size_t>(parse_int(fields[1], line_no));
        if (fields.size() != 5 + n * n)
            throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(n * n) +
                             " cells for order " + std::to_string(n));
        std::vector<int> cells;
        for (std::size_t i = 5; i < fields.size(); ++i)
            cells.push_back(parse_int(fields[i], line_no));
        std::optional<DesignGrid> grid;
        try {
            grid.emplace(kind, n, std::move(cells));
        } catch (const InvalidArgument& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        ParsedGrid pg{std::move(*grid), std::nullopt, parse_bool(fields[4]), std::nullopt, line_no};
        if (!fields[3].empty())
            pg.seed = std::stoull(fields[3]);
        out.push_back(std::move(pg));
    }
    return out;
}

ParsedGrid grid_from_json(const json& j, DesignKind default_kind, std::size_t line) {
    try {
        const auto kind = j.contains("kind") ? parse_design_kind(j.at("kind").get<std::string>()) : default_kind;
        ParsedGrid pg{make_grid(kind, j.at("grid").get<std::vector<std::vector<int>>>(), line), std::nullopt,
                      std::nullopt, std::nullopt, line};
        if (j.contains("n") && j.at("n").get<std::size_t>() != pg.grid.order())
            throw ParseError("line " + std::to_string(line) + ": declared n does not match the grid");
        if (j.contains("seed") && !j.at("seed").is_null())
            pg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("uniform"))
            pg.uniform = j.at("uniform").get<bool>();
        if (j.contains("trace")) {
            pg.trace = trace_from_json(j.at("trace"));
            pg.trace->kind = kind;
        }
        return pg;
    } catch (const json::exception& e) {
        throw ParseError("line " + std::to_string(line) + ": " + e.what());
    }
}

std::vector<ParsedGrid> read_json(std::istream& is, DesignKind default_kind) {
    std::vector<ParsedGrid> out;
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return out;
    if (text[first] == '[') {
        json arr;
        try {
            arr = json::parse(text);
        } catch (const json::exception& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what());
        }
        for (const auto& j : arr)
            out.push_back(grid_from_json(j, default_kind, 1));
        return out;
    }
    std::istringstream lines(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError("line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
        }
        out.push_back(grid_from_json(j, default_kind, line_no));
    }
    return out;
}

GridFormat sniff(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return GridFormat::text;
    if (text[first] == '{' || text[first] == '[')
        return GridFormat::json;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        return t.find(',') != std::string::npos ? GridFormat::csv : GridFormat::text;
    }
    return GridFormat::text;
}

}  // namespace

std::vector<ParsedGrid> read_grids(std::istream& is, std::optional<GridFormat> format, DesignKind default_kind) {
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    const auto fmt = format ? *format : sniff(text);
    std::istringstream body(text);
    switch (fmt) {
    case GridFormat::json:
        return read_json(body, default_kind);
    case GridFormat::csv:
        return read_csv(body);
    case GridFormat::text:
        break;
    }
    return read_text(body, default_kind);
}

}  // namespace lsclique
