// lsclique: random Latin squares and Sudoku designs from maximum cliques.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 resource
// budget exceeded or interrupted.

#include "lsclique/clique.hpp"
#include "lsclique/errors.hpp"
#include "lsclique/graph.hpp"
#include "lsclique/grid_io.hpp"
#include "lsclique/harness.hpp"
#include "lsclique/sampler.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

using namespace lsclique;
using nlohmann::json;

namespace {

enum Exit { ok = 0, verification_failed = 1, usage = 2, resource = 3 };

std::atomic<bool> g_cancel{false};

extern "C" void on_sigint(int) { g_cancel.store(true); }

struct Shape {
    std::string kind = "latin";
    std::optional<std::size_t> order;
    std::optional<std::size_t> p;

    DesignKind design_kind() const { return parse_design_kind(kind); }

    // Latin: n. Sudoku: p, taken from --p or from a square --order.
    std::size_t size() const {
        if (design_kind() == DesignKind::latin) {
            if (p)
                throw InvalidArgument("--p only applies to Sudoku designs");
            if (!order)
                throw InvalidArgument("Latin designs need --order");
            return *order;
        }
        if (!p && !order)
            throw InvalidArgument("Sudoku designs need --p (or a square --order)");
        std::size_t side = p ? *p : 0;
        if (!p)
            while ((side + 1) * (side + 1) <= *order)
                ++side;
        if (order && side * side != *order)
            throw InvalidArgument("--order " + std::to_string(*order) + " is not p^2 for a Sudoku design");
        return side;
    }

    void add_to(CLI::App* cmd) {
        cmd->add_option("kind", kind, "latin or sudoku")->required()->check(CLI::IsMember({"latin", "sudoku"}));
        cmd->add_option("-n,--order", order, "order n of the design");
        cmd->add_option("-p,--p", p, "box side p of a Sudoku design (n = p^2)");
    }
};

VertexSet vertex_set_for(DesignKind kind, std::size_t size, const Budget& budget) {
    return kind == DesignKind::latin ? enumerate_derangements(size, budget) : enumerate_sudoku_derangements(size, budget);
}

// Output sink: a file when a path is given, standard output otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_)
                throw IoFailure("cannot open " + path + " for writing");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void close() {
        stream().flush();
        if (!stream())
            throw IoFailure("write failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
};

// Clique files are binary stores when the magic matches, ASCII lists
// otherwise.
CliqueSet load_cliques(const std::string& path, const BitGraph& g) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe)
        throw IoFailure("cannot open " + path);
    char magic[8] = {};
    probe.read(magic, 8);
    if (probe.gcount() == 8 && std::string(magic, 8) == "LSCQSTR1") {
        const auto h = read_clique_store_header(path);
        if (h.vertex_count != g.size())
            throw ParseError(path + ": store was written for " + std::to_string(h.vertex_count) +
                             " vertices, graph has " + std::to_string(g.size()));
        return read_clique_store(path);
    }
    std::ifstream is(path);
    return read_clique_list(is, g);
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    Shape shape;
    std::optional<std::uint64_t> seed;
    std::uint64_t count = 1;
    std::optional<std::size_t> subgraph_k;
    unsigned attempts = 32;
    std::string format = "text";
    std::string output;
    unsigned threads = 1;
    std::string cliques;
};

int cmd_generate(const GenerateArgs& a) {
    SamplerConfig cfg;
    cfg.kind = a.shape.design_kind();
    cfg.size = a.shape.size();
    cfg.subgraph_k = a.subgraph_k;
    cfg.subgraph_attempts = a.attempts;
    cfg.threads = a.threads;
    cfg.cancel = &g_cancel;
    cfg.budget = Budget::from_environment();
    const auto format = parse_grid_format(a.format);
    const auto seed = a.seed.value_or(entropy_seed());

    std::unique_ptr<DesignSampler> sampler;
    if (!a.cliques.empty()) {
        if (a.subgraph_k)
            throw InvalidArgument("--cliques cannot be combined with --subgraph-k");
        const auto vs = vertex_set_for(cfg.kind, cfg.size, cfg.budget);
        CompatibilityGraph g(vs, cfg.budget);
        sampler = std::make_unique<DesignSampler>(cfg, seed, load_cliques(a.cliques, g.adjacency()));
    } else {
        sampler = std::make_unique<DesignSampler>(cfg, seed);
    }
    if (!sampler->uniform())
        std::cerr << "warning: designs come from a random " << *a.subgraph_k
                  << "-vertex subgraph and are not uniformly distributed\n";

    Sink sink(a.output);
    if (format == GridFormat::csv)
        write_csv_header(sink.stream(), sampler->order());
    for (std::uint64_t i = 0; i < a.count; ++i) {
        if (g_cancel.load())
            throw Interrupted("generation interrupted after " + std::to_string(i) + " designs");
        write_sample(sink.stream(), sampler->next(), format);
    }
    sink.close();
    return ok;
}

// ------------------------------------------------------------------- graph

struct GraphArgs {
    Shape shape;
    std::string format = "dimacs";
    std::string output;
    std::string vertices;
    bool summary = false;
    unsigned threads = 1;
};

GraphFormat parse_graph_format(const std::string& s) {
    if (s == "dimacs")
        return GraphFormat::dimacs;
    if (s == "edges")
        return GraphFormat::edge_list;
    if (s == "dot")
        return GraphFormat::dot;
    throw InvalidArgument("unknown graph format '" + s + "'");
}

int cmd_graph(const GraphArgs& a) {
    const auto budget = Budget::from_environment();
    const auto kind = a.shape.design_kind();
    const auto size = a.shape.size();
    CompatibilityGraph g(vertex_set_for(kind, size, budget), budget);

    Sink sink(a.output);
    export_graph(sink.stream(), g, parse_graph_format(a.format));
    sink.close();
    if (!a.vertices.empty()) {
        Sink dump(a.vertices);
        write_vertex_dump(dump.stream(), g.vertices());
        dump.close();
    }

    // Keep standard output clean for the graph itself.
    std::ostream& info = a.output.empty() || a.output == "-" ? std::cerr : std::cout;
    info << "vertices " << g.vertex_count() << "\nedges " << g.edge_count() << '\n';
    if (a.summary) {
        CliqueSearchOptions opts{std::nullopt, a.threads, &g_cancel};
        const auto c = count_maximum_cliques(g, opts);
        info << "maximum clique size " << c.maximum_size << "\nmaximum cliques " << c.count << '\n';
    }
    return ok;
}

// ------------------------------------------------------------------- count

struct CountArgs {
    Shape shape;
    unsigned threads = 1;
    bool json = false;
};

int cmd_count(const CountArgs& a) {
    const auto budget = Budget::from_environment();
    const auto kind = a.shape.design_kind();
    const auto size = a.shape.size();
    const std::size_t n = kind == DesignKind::latin ? size : size * size;

    const auto start = std::chrono::steady_clock::now();
    CompatibilityGraph g(vertex_set_for(kind, size, budget), budget);
    CliqueSearchOptions opts{n - 1, a.threads, &g_cancel};
    const auto c = count_maximum_cliques(g, opts);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const BigInt cliques = c.count;
    const auto multiplier = design_multiplier(kind, n);
    const auto total = total_design_count(kind, n, cliques);
    if (a.json) {
        json j{{"kind", to_string(kind)},
               {"n", n},
               {"vertices", g.vertex_count()},
               {"edges", g.edge_count()},
               {"clique_size", c.clique_size},
               {"maximum_clique_size", c.maximum_size},
               {"cliques", c.count},
               {"multiplier", multiplier.str()},
               {"total", total.str()},
               {"seconds", seconds}};
        if (kind == DesignKind::sudoku)
            j["p"] = size;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "kind " << to_string(kind) << "\nn " << n << "\nvertices " << g.vertex_count() << "\nedges "
                  << g.edge_count() << "\nclique size " << c.clique_size << "\nmaximum clique size " << c.maximum_size
                  << "\ncliques " << c.count << "\nreduced designs " << c.count << "\nmultiplier " << multiplier
                  << "\ntotal " << total << "\nseconds " << seconds << '\n';
    }
    return ok;
}

// ----------------------------------------------------------------- cliques

struct CliquesArgs {
    Shape shape;
    std::string output;
    std::string format = "store";
    unsigned threads = 1;
};

int cmd_cliques(const CliquesArgs& a) {
    const auto budget = Budget::from_environment();
    const auto kind = a.shape.design_kind();
    const auto size = a.shape.size();
    const std::size_t n = kind == DesignKind::latin ? size : size * size;
    CompatibilityGraph g(vertex_set_for(kind, size, budget), budget);

    if (a.format == "store") {
        if (a.output.empty() || a.output == "-")
            throw InvalidArgument("the binary store needs --output PATH");
        const CliqueSearch search(g);
        try {
            const auto h = write_clique_store(a.output, search, n, n - 1, &g_cancel);
            std::cerr << "wrote " << h.count << " cliques of size " << h.clique_size << " to " << a.output << '\n';
        } catch (const Interrupted&) {
            std::cerr << "interrupted: " << a.output << " is marked incomplete and will be rejected on load\n";
            throw;
        }
    } else if (a.format == "ascii") {
        CliqueSearchOptions opts{n - 1, a.threads, &g_cancel};
        const auto cs = enumerate_maximum_cliques(g, opts, budget);
        Sink sink(a.output);
        write_clique_list(sink.stream(), cs);
        sink.close();
    } else {
        throw InvalidArgument("unknown clique format '" + a.format + "' (expected store or ascii)");
    }
    return ok;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
    std::string path;
    std::string kind = "latin";
    std::string format;
    bool quiet = false;
};

std::string where_name(Violation::Where w) {
    switch (w) {
    case Violation::Where::symbol: return "symbol";
    case Violation::Where::row: return "row";
    case Violation::Where::column: return "column";
    case Violation::Where::box: return "box";
    }
    return "?";
}

int cmd_verify(const VerifyArgs& a) {
    std::optional<GridFormat> format;
    if (!a.format.empty())
        format = parse_grid_format(a.format);
    std::vector<ParsedGrid> grids;
    try {
        if (a.path == "-") {
            grids = read_grids(std::cin, format, parse_design_kind(a.kind));
        } else {
            std::ifstream is(a.path);
            if (!is)
                throw IoFailure("cannot open " + a.path);
            grids = read_grids(is, format, parse_design_kind(a.kind));
        }
    } catch (const ParseError& e) {
        std::cerr << "invalid: " << e.what() << '\n';
        return verification_failed;
    }
    if (grids.empty()) {
        std::cerr << "invalid: no grids found\n";
        return verification_failed;
    }
    for (std::size_t i = 0; i < grids.size(); ++i) {
        if (auto v = find_violation(grids[i].grid)) {
            std::cerr << "grid " << i + 1 << " (line " << grids[i].line << "): invalid "
                      << to_string(grids[i].grid.kind()) << ": " << where_name(v->where) << " " << v->index + 1
                      << ": " << v->message << '\n';
            return verification_failed;
        }
    }
    if (!a.quiet)
        std::cout << "ok " << grids.size() << (grids.size() == 1 ? " grid" : " grids") << '\n';
    return ok;
}

// -------------------------------------------------------------- uniformity

struct UniformityArgs {
    Shape shape;
    std::string input;
    std::uint64_t draws = 0;
    std::uint64_t seed = 1;
    bool biased = false;
};

int cmd_uniformity(const UniformityArgs& a) {
    const auto kind = a.shape.design_kind();
    const auto size = a.shape.size();
    oracle::ChiSquareReport report;
    if (!a.input.empty()) {
        std::vector<DesignGrid> grids;
        auto collect = [&](std::istream& is) {
            for (auto& pg : read_grids(is, std::nullopt, kind))
                grids.push_back(std::move(pg.grid));
        };
        if (a.input == "-") {
            collect(std::cin);
        } else {
            std::ifstream is(a.input);
            if (!is)
                throw IoFailure("cannot open " + a.input);
            collect(is);
        }
        report = uniformity_of_grids(kind, size, grids);
    } else {
        const auto population = design_population(kind, size).size();
        const auto draws = a.draws ? a.draws : 100 * population;
        report = run_uniformity(kind, size, draws, a.seed, a.biased);
    }
    auto j = oracle::to_json(report);
    j["kind"] = to_string(kind);
    j["size"] = size;
    j["p_low"] = uniformity_p_low;
    j["p_high"] = uniformity_p_high;
    j["passed"] = uniformity_passes(report);
    std::cout << j.dump(2) << '\n';
    return uniformity_passes(report) ? ok : verification_failed;
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    std::signal(SIGINT, on_sigint);

    CLI::App app{"Uniform random Latin squares and Sudoku designs via maximum cliques"};
    app.require_subcommand(1);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "emit random designs");
    gen.shape.add_to(generate);
    generate->add_option("-s,--seed", gen.seed, "64-bit seed (random when omitted)");
    generate->add_option("-c,--count", gen.count, "number of designs")->check(CLI::PositiveNumber);
    generate->add_option("-k,--subgraph-k", gen.subgraph_k, "sample from a random k-vertex subgraph (not uniform)");
    generate->add_option("--subgraph-attempts", gen.attempts, "redraws when a subgraph has no full-size clique")
        ->check(CLI::PositiveNumber);
    generate->add_option("-f,--format", gen.format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    generate->add_option("-o,--output", gen.output, "output file (default: standard output)");
    generate->add_option("-j,--threads", gen.threads, "clique counting threads")->check(CLI::Range(1u, 4096u));
    generate->add_option("--cliques", gen.cliques, "precomputed cliques (binary store or ASCII list)");

    GraphArgs gr;
    auto* graph = app.add_subcommand("graph", "build and export the compatibility graph");
    gr.shape.add_to(graph);
    graph->add_option("-f,--format", gr.format, "dimacs, edges or dot")
        ->check(CLI::IsMember({"dimacs", "edges", "dot"}));
    graph->add_option("-o,--output", gr.output, "graph file (default: standard output)");
    graph->add_option("--vertices", gr.vertices, "also write the vertex permutations, one per line");
    graph->add_flag("--summary", gr.summary, "also report the maximum clique size and count");
    graph->add_option("-j,--threads", gr.threads, "clique counting threads")->check(CLI::Range(1u, 4096u));

    CountArgs ct;
    ct.threads = hw;
    auto* count = app.add_subcommand("count", "count maximum cliques and designs exactly");
    ct.shape.add_to(count);
    count->add_option("-j,--threads", ct.threads, "worker threads (default: all cores)")
        ->check(CLI::Range(1u, 4096u));
    count->add_flag("--json", ct.json, "JSON report");

    CliquesArgs cq;
    cq.threads = hw;
    auto* cliques = app.add_subcommand("cliques", "write every maximum clique to a file");
    cq.shape.add_to(cliques);
    cliques->add_option("-o,--output", cq.output, "output file");
    cliques->add_option("-f,--format", cq.format, "store (binary) or ascii (1-based ids)")
        ->check(CLI::IsMember({"store", "ascii"}));
    cliques->add_option("-j,--threads", cq.threads, "worker threads for ascii output")->check(CLI::Range(1u, 4096u));

    VerifyArgs vf;
    auto* verify = app.add_subcommand("verify", "check grids against their Latin or Sudoku invariants");
    verify->add_option("path", vf.path, "grid file, or - for standard input")->required();
    verify->add_option("--kind", vf.kind, "kind for grids that do not declare one")
        ->check(CLI::IsMember({"latin", "sudoku"}));
    verify->add_option("-f,--format", vf.format, "text, json or csv (default: detect)")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    verify->add_flag("-q,--quiet", vf.quiet, "no output on success");

    UniformityArgs un;
    auto* uniformity = app.add_subcommand("uniformity", "chi-square test against the full design population");
    un.shape.add_to(uniformity);
    uniformity->add_option("-i,--input", un.input, "grids to test (- for standard input); otherwise sample");
    uniformity->add_option("-d,--draws", un.draws, "draws when sampling (default: 100 per design)");
    uniformity->add_option("-s,--seed", un.seed, "seed when sampling");
    uniformity->add_flag("--biased", un.biased, "pin the clique index to 0 (negative control)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*generate)
            return cmd_generate(gen);
        if (*graph)
            return cmd_graph(gr);
        if (*count)
            return cmd_count(ct);
        if (*cliques)
            return cmd_cliques(cq);
        if (*verify)
            return cmd_verify(vf);
        if (*uniformity)
            return cmd_uniformity(un);
    } catch (const Interrupted& e) {
        std::cerr << "interrupted: " << e.what() << '\n';
        return resource;
    } catch (const BudgetExceeded& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return resource;
    } catch (const IoFailure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return resource;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::bad_alloc&) {
        std::cerr << "resource limit: out of memory\n";
        return resource;
    }
    return usage;
}
