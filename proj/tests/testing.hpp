#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "contree/continuum.hpp"
#include "contree/corpus.hpp"
#include "contree/structural_tree.hpp"

namespace testing {

inline contree::GraphContinuum corpus(std::string_view name) {
    auto* e = contree::find_corpus(name);
    if (!e) throw std::runtime_error("no corpus graph " + std::string(name));
    return contree::parse_graph(e->text);
}

inline contree::GraphContinuum data_graph(const std::string& file) {
    std::ifstream in(std::string(TEST_DATA_DIR) + "/" + file);
    std::ostringstream s;
    s << in.rdbuf();
    return contree::parse_graph(s.str());
}

inline std::size_t count_kind(const contree::StructuralTree& t, contree::NodeKind k) {
    std::size_t n = 0;
    for (const auto& node : t.nodes()) n += node.kind == k;
    return n;
}

}  // namespace testing
