#pragma once

// Executable property suites over one graph, and the corpus matrix used by
// `contree verify` and the acceptance binary.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "contree/continuum.hpp"
#include "contree/cutpair.hpp"
#include "contree/pretree.hpp"
#include "contree/structural_tree.hpp"

namespace contree {

struct Check {
    std::string group;
    std::string name;
    bool pass = true;
    std::string detail;  // first counterexample, or a short summary
};

enum class VerifyLevel { Off, Lemmas, Full };

/// Axioms, interval subset, nested unions, supremum, interval adjacency.
std::vector<Check> check_pretree_table(const BetweennessTable& t, const std::string& group);
/// Tree betweenness equals the source table on all node triples.
Check check_tree_matches_table(const StructuralTree& tree, const BetweennessTable& t, const std::string& group);

std::vector<Check> check_continuum(const GraphContinuum& X);
std::vector<Check> check_cutpoint(const GraphContinuum& X, std::size_t grid);
std::vector<Check> check_cutpair(const CutPairAnalysis& A);
std::vector<Check> check_combined(const GraphContinuum& X, std::size_t grid);
std::vector<Check> check_actions(const GraphContinuum& X, std::size_t grid);
std::vector<Check> check_io(const GraphContinuum& X, std::size_t grid);

/// The closures of the nonsingleton cut-point classes (X itself when X has
/// no cut points), named "<graph>" or "<graph>[<class key>]".
std::vector<std::pair<std::string, GraphContinuum>> blocks_of(const std::string& name, const GraphContinuum& X,
                                                              std::size_t grid);

/// Lengths of the canonical metrization recomputed from path differences.
std::vector<Rational> replay_canonical_lengths(const StructuralTree& tree, const std::optional<std::string>& seed = {});

/// Every reported decomposition in one grid-independent text.
std::string fingerprint(const GraphContinuum& X, std::size_t grid);

struct GraphReport {
    std::string graph;
    std::size_t grid = 3;
    std::vector<Check> checks;

    bool passed() const;
};

GraphReport verify_graph(const std::string& name, const GraphContinuum& X, std::size_t grid, VerifyLevel level);

/// Per graph and grid, plus one stability row per graph comparing grids.
struct CorpusReport {
    std::vector<GraphReport> runs;
    std::vector<Check> stability;

    bool passed() const;
    std::string matrix() const;
};

CorpusReport verify_corpus(const std::vector<std::size_t>& grids, VerifyLevel level);

}  // namespace contree
