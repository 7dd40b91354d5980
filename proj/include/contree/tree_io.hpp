#pragma once

// Structured text and DOT for structural trees, plus the auxiliary records
// describing cut-pair structure and actions.

#include <string>
#include <string_view>

#include "contree/structural_tree.hpp"

namespace contree {

class CutPairAnalysis;

/// One record per line:
///   tree name="<name>" [root="<key>"]
///   node key="<key>" kind=<kind> label="<label>" cells="<c1,c2>" [block="<cells>"]
///   arc from="<key>" to="<key>" kind=<glue|arc> length=<p/q> [provenance="<cell>"]
/// Quoted values escape `"` and `\` with a backslash; `#` starts a comment.
std::string write_tree_text(const StructuralTree& tree);

/// Parses the format above. Records other than tree/node/arc that are
/// written alongside trees (necklace, gap, element, action) are skipped.
/// Throws InputError with the line number on malformed input.
StructuralTree parse_tree_text(std::string_view text);

/// Undirected DOT; node shape by kind, arc lengths as edge labels.
std::string write_tree_dot(const StructuralTree& tree);

/// necklace / gap / element records for a cut-pair analysis.
std::string write_cutpair_records(const CutPairAnalysis& A);

/// `"..."` with escapes.
std::string quote(std::string_view s);

}  // namespace contree
