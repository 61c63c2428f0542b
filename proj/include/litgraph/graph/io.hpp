#pragma once

#include <filesystem>

#include "litgraph/graph/literature_graph.hpp"

namespace litgraph::graph {

// Persistence is two JSONL files with stable field order: nodes.jsonl holds
// one {"kind", "id", ...} object per node, edges.jsonl one
// {"kind", "from", "to", "attrs"} object per edge. Records are sorted so that
// exporting the same graph twice produces identical bytes.
void export_graph(const LiteratureGraph& graph, const std::filesystem::path& nodes_path,
                  const std::filesystem::path& edges_path);

LiteratureGraph import_graph(const std::filesystem::path& nodes_path,
                             const std::filesystem::path& edges_path);

}  // namespace litgraph::graph
