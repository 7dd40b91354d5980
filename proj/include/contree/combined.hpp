#pragma once

// Cut-point tree with every nonsingleton class replaced by the JSJ tree of
// its block closure.

#include <cstddef>
#include <string>
#include <vector>

#include "contree/continuum.hpp"
#include "contree/cutpoint.hpp"
#include "contree/structural_tree.hpp"

namespace contree {

/// The closure of a class as a standalone graph, keeping vertex and edge
/// names and lengths. Throws InternalError if it is disconnected or has a
/// cut point.
GraphContinuum block_closure(const GraphContinuum& X, const EquivClass& cls);

struct Attachment {
    std::string cut_point;  // node key of the cut point
    std::string node;       // node key inside the embedded subtree
};

struct CombinedTree {
    StructuralTree tree;
    std::vector<Attachment> attachments;
};

/// Node keys of embedded subtrees are "<class key>/<jsj key>"; their block
/// provenance is the class's comma-joined cell names.
CombinedTree build_combined_tree(const GraphContinuum& X, std::size_t grid = 3);

}  // namespace contree
