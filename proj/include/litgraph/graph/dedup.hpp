#pragma once

#include <string>
#include <vector>

#include "litgraph/graph/literature_graph.hpp"

namespace litgraph::graph {

struct MergeGroup {
  std::string kept_id;
  std::vector<std::string> absorbed_ids;  // sorted
};

using MergeReport = std::vector<MergeGroup>;

// Deterministically merges duplicate papers. Candidates share the first four
// characters of the canonicalized title; a pair merges when the normalized
// Levenshtein similarity of the canonical titles reaches the threshold and the
// years are equal or at least one is missing. Merging is by connected
// component, keeps the lexicographically smallest id, copies attributes from
// the member with the most non-empty fields (ties to the smaller id), unions
// source_ids, and re-points citation/authorship edges and mention references
// to the kept node. Running it a second time reports nothing.
MergeReport dedup_papers(LiteratureGraph& graph, double similarity_threshold);

}  // namespace litgraph::graph
