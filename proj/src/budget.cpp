#include "lsclique/budget.hpp"

#include "lsclique/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <string>
#include <string_view>

namespace lsclique {

namespace {

template <class T>
void override_from(const char* name, T& slot) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0')
        return;
    std::string_view text(raw);
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || value == 0)
        throw InvalidArgument(std::string(name) + " must be a positive integer, got '" + raw + "'");
    slot = static_cast<T>(value);
}

}  // namespace

Budget Budget::from_environment() {
    Budget b;
    override_from("LSCLIQUE_MAX_VERTEX_SET", b.max_vertex_set);
    override_from("LSCLIQUE_MAX_GRAPH_VERTICES", b.max_graph_vertices);
    override_from("LSCLIQUE_MAX_STORED_CLIQUES", b.max_stored_cliques);
    return b;
}

}  // namespace lsclique
