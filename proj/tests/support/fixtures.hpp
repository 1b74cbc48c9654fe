// Shared test fixtures.
#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "navtime/graph.hpp"

namespace fixtures {

inline navtime::Graph graph_from_text(const std::string& text) {
    std::istringstream in(text);
    return navtime::load_edge_list(in);
}

/// Path a0-a1-a2-a3. Node ids equal their position.
inline navtime::Graph four_path() {
    return graph_from_text("a0 a1\na1 a2\na2 a3\n");
}

/// Q = {a0,a1,a2}, C = {a3} on the four-path.
inline navtime::Partition four_path_partition() {
    return {{0, 1, 2}, {3}};
}

inline std::string data_file(const std::string& name) {
    return std::string(NAVTIME_DATA_DIR) + "/" + name;
}

}  // namespace fixtures
