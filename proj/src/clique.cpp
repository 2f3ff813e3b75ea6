#include "lsclique/clique.hpp"

#include "lsclique/errors.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>

namespace lsclique {

namespace {

// Bits strictly above position b of a word.
inline Word above(std::size_t b) {
    return b == word_bits - 1 ? Word{0} : (~Word{0} << (b + 1));
}

// Bits strictly below position b of a word.
inline Word below_bit(std::size_t b) {
    return b == 0 ? Word{0} : (~Word{0} >> (word_bits - b));
}

}  // namespace

struct CliqueSearch::Walker {
    const CliqueSearch& s;
    const BitGraph& g;
    std::size_t W;
    std::vector<Word> buffers;
    std::vector<std::uint32_t> path;
    Cancel cancel;
    std::uint64_t ticks = 0;
    std::size_t best = 0;

    Walker(const CliqueSearch& search, std::size_t depth_limit, Cancel c)
        : s(search), g(*search.g_), W(g.words()), buffers((depth_limit + 1) * W), path(depth_limit + 1), cancel(c) {}

    Word* level(std::size_t depth) { return buffers.data() + depth * W; }

    void tick() {
        if (cancel && (++ticks & 0xFFF) == 0 && cancel->load(std::memory_order_relaxed))
            throw Interrupted("clique enumeration interrupted");
    }

    std::uint32_t limit(std::size_t need) const { return need < s.end_.size() ? s.end_[need] : 0; }

    // Candidates adjacent to v with ids above v, written from word v/64 on.
    Word* extend(const Word* cands, std::size_t v, std::size_t depth) {
        Word* next = level(depth);
        const auto row = g.row(v);
        const std::size_t w0 = v / word_bits;
        for (std::size_t w = w0; w < W; ++w)
            next[w] = cands[w] & row[w];
        next[w0] &= above(v % word_bits);
        return next;
    }

    // Calls f(v) for set bits v in [lo_word·64, end); f returns false to stop.
    template <class F>
    bool scan(const Word* cands, std::size_t lo_word, std::uint32_t end, F&& f) {
        const std::size_t hi_word = words_for(end);
        for (std::size_t w = lo_word; w < hi_word; ++w) {
            Word bits = cands[w];
            if (w + 1 == hi_word && end % word_bits)
                bits &= below_bit(end % word_bits);
            while (bits) {
                const auto v = w * word_bits + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                if (!f(v))
                    return false;
            }
        }
        return true;
    }

    std::uint64_t count_below(const Word* cands, std::size_t lo_word, std::uint32_t end) const {
        const std::size_t hi_word = words_for(end);
        std::uint64_t c = 0;
        for (std::size_t w = lo_word; w < hi_word; ++w) {
            Word bits = cands[w];
            if (w + 1 == hi_word && end % word_bits)
                bits &= below_bit(end % word_bits);
            c += static_cast<std::uint64_t>(std::popcount(bits));
        }
        return c;
    }

    std::uint64_t count(const Word* cands, std::size_t lo_word, std::size_t need, std::size_t depth) {
        tick();
        if (need == 1)
            return count_below(cands, lo_word, limit(1));
        std::uint64_t total = 0;
        scan(cands, lo_word, limit(need), [&](std::size_t v) {
            total += count(extend(cands, v, depth), v / word_bits, need - 1, depth + 1);
            return true;
        });
        return total;
    }

    bool visit(const Word* cands, std::size_t lo_word, std::size_t need, std::size_t depth, const Visitor& f) {
        tick();
        return scan(cands, lo_word, limit(need), [&](std::size_t v) {
            path[depth] = static_cast<std::uint32_t>(v);
            if (need == 1)
                return f(std::span<const std::uint32_t>(path.data(), depth + 1));
            return visit(extend(cands, v, depth), v / word_bits, need - 1, depth + 1, f);
        });
    }

    // Finds the clique at `index` below this node, or consumes the node's
    // cliques from `index` and returns false.
    bool select(const Word* cands, std::size_t lo_word, std::size_t need, std::size_t depth, std::uint64_t& index) {
        tick();
        if (need == 1) {
            const auto here = count_below(cands, lo_word, limit(1));
            if (index >= here) {
                index -= here;
                return false;
            }
            scan(cands, lo_word, limit(1), [&](std::size_t v) {
                if (index-- == 0) {
                    path[depth] = static_cast<std::uint32_t>(v);
                    return false;
                }
                return true;
            });
            return true;
        }
        bool found = false;
        scan(cands, lo_word, limit(need), [&](std::size_t v) {
            path[depth] = static_cast<std::uint32_t>(v);
            found = select(extend(cands, v, depth), v / word_bits, need - 1, depth + 1, index);
            return !found;
        });
        return found;
    }

    void maximum(const Word* cands, std::size_t lo_word, std::size_t depth) {
        tick();
        std::size_t remaining = 0;
        for (std::size_t w = lo_word; w < W; ++w)
            remaining += static_cast<std::size_t>(std::popcount(cands[w]));
        if (remaining == 0) {
            best = std::max(best, depth);
            return;
        }
        scan(cands, lo_word, static_cast<std::uint32_t>(g.size()), [&](std::size_t v) {
            if (depth + remaining <= best || depth + (s.colours_ - s.rank_[v]) <= best)
                return false;
            maximum(extend(cands, v, depth), v / word_bits, depth + 1);
            --remaining;
            return true;
        });
    }
};

CliqueSearch::CliqueSearch(const BitGraph& g, std::span<const std::uint32_t> colours) : g_(&g) {
    const std::size_t V = g.size();
    rank_.resize(V);
    if (colours.empty()) {
        for (std::size_t v = 0; v < V; ++v)
            rank_[v] = static_cast<std::uint32_t>(v);
        colours_ = V;
    } else {
        if (colours.size() != V)
            throw InvalidArgument("colouring has " + std::to_string(colours.size()) + " entries for " +
                                  std::to_string(V) + " vertices");
        std::size_t class_start = 0;
        std::uint32_t r = 0;
        for (std::size_t v = 0; v < V; ++v) {
            if (v > 0 && colours[v] < colours[v - 1])
                throw InvalidArgument("colouring is not nondecreasing in vertex id");
            if (v > 0 && colours[v] != colours[v - 1]) {
                ++r;
                class_start = v;
            }
            rank_[v] = r;
            // Same-colour vertices occupy [class_start, v]; none may be adjacent.
            for (std::size_t u = class_start; u < v; ++u)
                if (g.adjacent(u, v))
                    throw InvalidArgument("colouring is not proper: vertices " + std::to_string(u) + " and " +
                                          std::to_string(v) + " share a colour and are adjacent");
        }
        colours_ = V ? r + 1 : 0;
    }
    end_.assign(colours_ + 2, 0);
    for (std::size_t need = 1; need <= colours_; ++need) {
        const auto max_rank = colours_ - need;
        auto it = std::upper_bound(rank_.begin(), rank_.end(), static_cast<std::uint32_t>(max_rank));
        end_[need] = static_cast<std::uint32_t>(it - rank_.begin());
    }
}

namespace {

std::vector<std::uint32_t> graph_colours(const CompatibilityGraph& g) {
    return g.vertices().order() == 0 ? std::vector<std::uint32_t>{} : g.leading_value_classes();
}

}  // namespace

CliqueSearch::CliqueSearch(const CompatibilityGraph& g) : CliqueSearch(g.adjacency(), graph_colours(g)) {}

std::vector<std::uint64_t> CliqueSearch::count_by_root(std::size_t size, unsigned threads, Cancel cancel) const {
    const std::size_t V = g_->size();
    std::vector<std::uint64_t> per_root(V, 0);
    if (size == 0 || size >= end_.size())
        return per_root;
    const std::uint32_t roots = end_[size];

    auto run_root = [&](Walker& w, std::size_t r) {
        if (size == 1) {
            per_root[r] = 1;
            return;
        }
        std::vector<Word> all(g_->words(), ~Word{0});
        const Word* next = w.extend(all.data(), r, 0);
        per_root[r] = w.count(next, r / word_bits, size - 1, 1);
    };

    threads = std::max(1u, threads);
    if (threads == 1 || roots < 2) {
        Walker w(*this, size, cancel);
        for (std::size_t r = 0; r < roots; ++r)
            run_root(w, r);
        return per_root;
    }

    std::atomic<std::size_t> next_root{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::atomic<bool> stop{false};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            try {
                Walker w(*this, size, cancel);
                while (!stop.load(std::memory_order_relaxed)) {
                    const auto r = next_root.fetch_add(1);
                    if (r >= roots)
                        break;
                    run_root(w, r);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                stop = true;
            }
        });
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
    return per_root;
}

std::uint64_t CliqueSearch::count(std::size_t size, unsigned threads, Cancel cancel) const {
    std::uint64_t total = 0;
    for (auto c : count_by_root(size, threads, cancel))
        total += c;
    return total;
}

bool CliqueSearch::has_clique(std::size_t size, Cancel cancel) const {
    if (size == 0)
        return true;
    bool found = false;
    for_each(size, [&](std::span<const std::uint32_t>) {
        found = true;
        return false;
    }, cancel);
    return found;
}

std::size_t CliqueSearch::maximum_clique_size(Cancel cancel) const {
    Walker w(*this, colours_, cancel);
    std::vector<Word> all(g_->words(), 0);
    for (std::size_t v = 0; v < g_->size(); ++v)
        set_bit(all, v);
    w.maximum(all.data(), 0, 0);
    return w.best;
}

void CliqueSearch::for_each(std::size_t size, const Visitor& visit, Cancel cancel) const {
    if (size == 0 || size >= end_.size())
        return;
    Walker w(*this, size, cancel);
    std::vector<Word> all(g_->words(), ~Word{0});
    w.visit(all.data(), 0, size, 0, visit);
}

void CliqueSearch::for_each_from_root(std::size_t size, std::uint32_t root, const Visitor& visit,
                                      Cancel cancel) const {
    if (size == 0 || size >= end_.size() || root >= end_[size])
        return;
    Walker w(*this, size, cancel);
    w.path[0] = root;
    if (size == 1) {
        visit(std::span<const std::uint32_t>(w.path.data(), 1));
        return;
    }
    std::vector<Word> all(g_->words(), ~Word{0});
    const Word* next = w.extend(all.data(), root, 0);
    w.visit(next, root / word_bits, size - 1, 1, visit);
}

std::vector<std::uint32_t> CliqueSearch::clique_at(std::size_t size, std::uint64_t index,
                                                   std::span<const std::uint64_t> per_root, Cancel cancel) const {
    std::size_t root = 0;
    while (root < per_root.size() && index >= per_root[root])
        index -= per_root[root++];
    if (root == per_root.size())
        throw InvalidArgument("clique index out of range");
    Walker w(*this, size, cancel);
    w.path[0] = static_cast<std::uint32_t>(root);
    if (size > 1) {
        std::vector<Word> all(g_->words(), ~Word{0});
        const Word* next = w.extend(all.data(), root, 0);
        if (!w.select(next, root / word_bits, size - 1, 1, index))
            throw InvalidArgument("per-root counts do not match the graph");
    }
    return std::vector<std::uint32_t>(w.path.begin(), w.path.begin() + static_cast<std::ptrdiff_t>(size));
}

CliqueSet::CliqueSet(std::size_t clique_size, std::size_t maximum_size, std::vector<std::uint32_t> flat_ids)
    : clique_size_(clique_size), maximum_size_(maximum_size), ids_(std::move(flat_ids)) {
    if (clique_size_ == 0 ? !ids_.empty() : ids_.size() % clique_size_ != 0)
        throw InvalidArgument("flat id list is not a whole number of cliques");
    count_ = clique_size_ ? ids_.size() / clique_size_ : 0;
}

std::span<const std::uint32_t> CliqueSet::clique(std::uint64_t index) const {
    if (index >= count_)
        throw InvalidArgument("clique index " + std::to_string(index) + " out of range");
    return std::span<const std::uint32_t>(ids_).subspan(index * clique_size_, clique_size_);
}

CliqueCount count_maximum_cliques(const CliqueSearch& search, const CliqueSearchOptions& opts) {
    CliqueCount out;
    if (search.graph().size() == 0)
        return out;
    if (opts.target_size) {
        out.clique_size = *opts.target_size;
        out.per_root = search.count_by_root(out.clique_size, opts.threads, opts.cancel);
        for (auto c : out.per_root)
            out.count += c;
        if (out.count == 0 || search.has_clique(out.clique_size + 1, opts.cancel))
            out.maximum_size = search.maximum_clique_size(opts.cancel);
        else
            out.maximum_size = out.clique_size;
        return out;
    }
    out.maximum_size = out.clique_size = search.maximum_clique_size(opts.cancel);
    out.per_root = search.count_by_root(out.clique_size, opts.threads, opts.cancel);
    for (auto c : out.per_root)
        out.count += c;
    return out;
}

CliqueCount count_maximum_cliques(const CompatibilityGraph& g, const CliqueSearchOptions& opts) {
    return count_maximum_cliques(CliqueSearch(g), opts);
}

CliqueSet enumerate_maximum_cliques(const CompatibilityGraph& g, const CliqueSearchOptions& opts,
                                    const Budget& budget) {
    const CliqueSearch search(g);
    const auto counted = count_maximum_cliques(search, opts);
    if (counted.count > budget.max_stored_cliques)
        throw StorageExceeded(std::to_string(counted.count) + " cliques exceed the in-memory budget of " +
                              std::to_string(budget.max_stored_cliques) + "; stream them to a clique store instead");
    std::vector<std::uint32_t> flat;
    flat.reserve(counted.count * counted.clique_size);
    search.for_each(counted.clique_size, [&](std::span<const std::uint32_t> c) {
        flat.insert(flat.end(), c.begin(), c.end());
        return true;
    }, opts.cancel);
    return CliqueSet(counted.clique_size, counted.maximum_size, std::move(flat));
}

OrderedClique make_ordered_clique(const VertexSet& vs, std::span<const std::uint32_t> ids) {
    OrderedClique out;
    out.ids.assign(ids.begin(), ids.end());
    for (auto id : out.ids)
        if (id >= vs.size())
            throw InvalidArgument("vertex id " + std::to_string(id) + " out of range");
    std::sort(out.ids.begin(), out.ids.end(),
              [&](std::uint32_t a, std::uint32_t b) { return lex_compare(vs[a], vs[b]) == LexOrder::less; });
    for (auto id : out.ids)
        out.members.push_back(vs[id]);
    for (std::size_t i = 0; i < out.members.size(); ++i)
        for (std::size_t j = i + 1; j < out.members.size(); ++j)
            if (!is_disjoint(out.members[i], out.members[j]))
                throw InvalidArgument("clique members " + out.members[i].to_string() + " and " +
                                      out.members[j].to_string() + " are not disjoint");
    return out;
}

OrderedClique select_uniform_clique(const CliqueSet& cs, const VertexSet& vs, Rng& rng) {
    if (cs.count() == 0)
        throw EmptyCliqueSet("cannot select from an empty clique set");
    return make_ordered_clique(vs, cs.clique(rng.below(cs.count())));
}

OrderedClique select_uniform_clique(const CliqueSet& cs, const VertexSet& vs, std::uint64_t seed) {
    Rng rng(seed);
    return select_uniform_clique(cs, vs, rng);
}

OrderedClique select_uniform_clique(const CliqueSearch& search, const CliqueCount& counted, const VertexSet& vs,
                                    Rng& rng, CliqueSearch::Cancel cancel) {
    if (counted.count == 0)
        throw EmptyCliqueSet("cannot select from an empty clique set");
    const auto index = rng.below(counted.count);
    return make_ordered_clique(vs, search.clique_at(counted.clique_size, index, counted.per_root, cancel));
}

// ---------------------------------------------------------------------------
// Clique store

namespace {

constexpr std::array<char, 8> store_magic = {'L', 'S', 'C', 'Q', 'S', 'T', 'R', '1'};
constexpr std::size_t store_header_bytes = 32;

template <class T>
void put_le(std::vector<char>& out, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i)
        out.push_back(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF));
}

template <class T>
T get_le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
        v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return static_cast<T>(v);
}

std::vector<char> encode_header(const CliqueStoreHeader& h) {
    std::vector<char> out(store_magic.begin(), store_magic.end());
    put_le<std::uint32_t>(out, h.order);
    put_le<std::uint32_t>(out, h.vertex_count);
    put_le<std::uint64_t>(out, h.count);
    put_le<std::uint32_t>(out, h.clique_size);
    put_le<std::uint32_t>(out, h.complete ? 1u : 0u);
    return out;
}

class StoreWriter {
public:
    StoreWriter(const std::filesystem::path& path, CliqueStoreHeader header)
        : path_(path), header_(header), os_(path, std::ios::binary | std::ios::trunc) {
        if (!os_)
            throw IoFailure("cannot open clique store " + path.string());
        header_.complete = false;
        header_.count = 0;
        write_header();
    }

    void add(std::span<const std::uint32_t> clique) {
        buffer_.clear();
        for (auto id : clique)
            put_le<std::uint32_t>(buffer_, id);
        os_.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
        ++header_.count;
    }

    CliqueStoreHeader finish() {
        header_.complete = true;
        os_.seekp(0);
        write_header();
        os_.flush();
        if (!os_)
            throw IoFailure("failed writing clique store " + path_.string());
        return header_;
    }

private:
    void write_header() {
        auto bytes = encode_header(header_);
        os_.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }

    std::filesystem::path path_;
    CliqueStoreHeader header_;
    std::ofstream os_;
    std::vector<char> buffer_;
};

}  // namespace

CliqueStoreHeader write_clique_store(const std::filesystem::path& path, const CliqueSearch& search, std::size_t order,
                                     std::size_t clique_size, CliqueSearch::Cancel cancel) {
    CliqueStoreHeader h;
    h.order = static_cast<std::uint32_t>(order);
    h.vertex_count = static_cast<std::uint32_t>(search.graph().size());
    h.clique_size = static_cast<std::uint32_t>(clique_size);
    StoreWriter writer(path, h);
    search.for_each(clique_size, [&](std::span<const std::uint32_t> c) {
        writer.add(c);
        return true;
    }, cancel);
    return writer.finish();
}

void write_clique_store(const std::filesystem::path& path, const CliqueSet& cs, std::size_t order,
                        std::size_t vertex_count) {
    CliqueStoreHeader h;
    h.order = static_cast<std::uint32_t>(order);
    h.vertex_count = static_cast<std::uint32_t>(vertex_count);
    h.clique_size = static_cast<std::uint32_t>(cs.clique_size());
    StoreWriter writer(path, h);
    for (std::uint64_t i = 0; i < cs.count(); ++i)
        writer.add(cs.clique(i));
    writer.finish();
}

CliqueStoreHeader read_clique_store_header(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoFailure("cannot open clique store " + path.string());
    std::array<unsigned char, store_header_bytes> raw{};
    if (!is.read(reinterpret_cast<char*>(raw.data()), raw.size()))
        throw ParseError(path.string() + ": truncated clique store header");
    if (std::memcmp(raw.data(), store_magic.data(), store_magic.size()) != 0)
        throw ParseError(path.string() + ": not a clique store (bad magic)");
    CliqueStoreHeader h;
    h.order = get_le<std::uint32_t>(raw.data() + 8);
    h.vertex_count = get_le<std::uint32_t>(raw.data() + 12);
    h.count = get_le<std::uint64_t>(raw.data() + 16);
    h.clique_size = get_le<std::uint32_t>(raw.data() + 24);
    h.complete = (get_le<std::uint32_t>(raw.data() + 28) & 1u) != 0;
    return h;
}

CliqueSet read_clique_store(const std::filesystem::path& path) {
    const auto h = read_clique_store_header(path);
    if (!h.complete)
        throw ParseError(path.string() + ": clique store is incomplete (interrupted writer)");
    const auto expected = store_header_bytes + h.count * h.clique_size * 4;
    if (std::filesystem::file_size(path) != expected)
        throw ParseError(path.string() + ": size does not match the header");
    std::ifstream is(path, std::ios::binary);
    is.seekg(store_header_bytes);
    std::vector<unsigned char> raw(h.count * h.clique_size * 4);
    is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    std::vector<std::uint32_t> ids(h.count * h.clique_size);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        ids[i] = get_le<std::uint32_t>(raw.data() + 4 * i);
        if (ids[i] >= h.vertex_count)
            throw ParseError(path.string() + ": vertex id out of range");
    }
    return CliqueSet(h.clique_size, h.clique_size, std::move(ids));
}

void write_clique_list(std::ostream& os, const CliqueSet& cs) {
    for (std::uint64_t i = 0; i < cs.count(); ++i) {
        const auto c = cs.clique(i);
        for (std::size_t j = 0; j < c.size(); ++j)
            os << (j ? " " : "") << c[j] + 1;
        os << '\n';
    }
    if (!os)
        throw IoFailure("failed writing clique list");
}

CliqueSet read_clique_list(std::istream& is, const BitGraph& g) {
    std::set<std::vector<std::uint32_t>> cliques;
    std::size_t size = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        auto fail = [&](const std::string& what) {
            throw ParseError("clique list line " + std::to_string(line_no) + ": " + what);
        };
        std::istringstream ls(line);
        std::vector<std::uint32_t> ids;
        long long id = 0;
        while (ls >> id) {
            if (id < 1 || static_cast<std::size_t>(id) > g.size())
                fail("vertex id " + std::to_string(id) + " out of range 1.." + std::to_string(g.size()));
            ids.push_back(static_cast<std::uint32_t>(id - 1));
        }
        if (!ls.eof())
            fail("non-numeric token");
        if (ids.empty())
            continue;
        std::sort(ids.begin(), ids.end());
        if (size == 0)
            size = ids.size();
        if (ids.size() != size)
            fail("clique has " + std::to_string(ids.size()) + " vertices, expected " + std::to_string(size));
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i + 1; j < ids.size(); ++j)
                if (!g.adjacent(ids[i], ids[j]))
                    fail("vertices " + std::to_string(ids[i] + 1) + " and " + std::to_string(ids[j] + 1) +
                         " are not adjacent");
        if (!cliques.insert(std::move(ids)).second)
            fail("duplicate clique");
    }
    std::vector<std::uint32_t> flat;
    for (const auto& c : cliques)
        flat.insert(flat.end(), c.begin(), c.end());
    return CliqueSet(size, size, std::move(flat));
}

}  // namespace lsclique
