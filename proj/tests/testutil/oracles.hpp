#pragma once

// Independent reference implementations used as test oracles. Everything here
// is deliberately brute-force and shares no code with the library paths it
// checks.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "litgraph/nn/crf.hpp"
#include "litgraph/nn/tagger.hpp"

namespace litgraph::testutil {

struct EnumerationResult {
  double log_partition;
  std::vector<int> best_labels;
  double best_score;
  litgraph::nn::Matd marginals;  // N x L
};

// Scores every one of the L^N labelings by direct summation.
EnumerationResult enumerate_crf(const litgraph::nn::CrfParams<double>& crf,
                                const litgraph::nn::Matd& emissions);

// Plain BFS distance oracle over an undirected bipartite author/paper graph.
// An author-paper-author hop counts as distance 1. Returns -1 when
// unreachable.
int bfs_collaboration_oracle(const std::vector<std::pair<std::string, std::string>>& authorships,
                             const std::string& a, const std::string& b);

// Simple memoized recursive Levenshtein, independent of the DP in the library.
std::size_t levenshtein_oracle(const std::string& a, const std::string& b);

// All sets of non-overlapping half-open spans over [0, n).
std::vector<std::vector<std::pair<int, int>>> enumerate_span_sets(int n);

// Central finite differences over every element of every tensor.
// Returns the maximum relative error, with the error of element i defined as
// |analytic - numeric| / max(|analytic| + |numeric|, floor).
struct GradCheckReport {
  double max_rel_err = 0;
  std::string worst_tensor;
};

GradCheckReport finite_difference_check(std::vector<litgraph::nn::TensorRef<double>> params,
                                        std::vector<litgraph::nn::TensorRef<double>> analytic,
                                        const std::function<double()>& loss_fn,
                                        double step = 1e-5, double floor = 1e-3);

}  // namespace litgraph::testutil
