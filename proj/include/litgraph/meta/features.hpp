#pragma once

#include <array>
#include <utility>
#include <vector>

#include "litgraph/meta/pdf_token.hpp"
#include "litgraph/nn/embedding.hpp"
#include "litgraph/nn/tagger.hpp"

namespace litgraph::meta {

struct MinMax {
  double min = 0;
  double max = 0;
  bool seen = false;

  void add(double v) {
    if (!seen) {
      min = max = v;
      seen = true;
    } else {
      if (v < min) min = v;
      if (v > max) max = v;
    }
  }
};

// Min/max of font size and space width at one scope (page, document, corpus).
struct ScopeStats {
  MinMax font;
  MinMax space;
};

// Per-document stats; corpus stats are computed once over the training set,
// serialized with the model, and never updated afterwards.
struct DocumentStats {
  ScopeStats document;
  std::vector<ScopeStats> pages;
};

DocumentStats compute_document_stats(const PdfDocument& doc);
ScopeStats compute_corpus_stats(const std::vector<PdfDocument>& docs);

// (value - min) / (max - min) - 0.5, clamped to [-0.5, 0.5]; a degenerate
// scope (min == max) maps to 0.
double normalize_scalar(double value, const MinMax& stats);

// Linear map of page coordinates to [-0.5, 0.5]^2: (0,0) at the top-left
// corner, (width,height) at the bottom-right.
std::pair<double, double> scale_position(double x, double y, double page_width, double page_height);

// [first-upper, first-lower, second-upper, second-lower, frac-upper,
//  frac-lower, frac-digit]; single-character tokens zero both second-letter
// features; fractions are over all characters.
std::array<double, 7> case_features(const std::string& text);

// Discrete page position relative to the start and end of the document, each
// clamped to {0, 1, 2}.
std::pair<int, int> page_position_features(int page_index, int total_pages);

// Number of numeric input dimensions: 3 font norms + 3 space norms + 2
// position + 7 case + two 3-way one-hots for the page features.
inline constexpr Eigen::Index kNumericFeatureDim = 3 + 3 + 2 + 7 + 3 + 3;

// The numeric block of i_k, laid out as
// [font norms | space norms | x,y | case | one-hot from_start | one-hot from_end].
nn::Vecd numeric_features(const PdfToken& token, const PdfPage& page, const ScopeStats& page_stats,
                          const ScopeStats& doc_stats, const ScopeStats& corpus_stats,
                          int total_pages);

// Font sizes are bucketed to the nearest 0.5pt; each bucket is one embedding
// row keyed by this token.
std::string font_bucket_token(double font_size);

// Full input vector i_k = [numeric | font-size embedding | word embedding of
// the lowercased token], materialized. The tagger assembles the same layout
// internally; this entry point exists for the feature-layer contract.
nn::Vecd build_input(const PdfToken& token, const PdfPage& page, const ScopeStats& page_stats,
                     const ScopeStats& doc_stats, const ScopeStats& corpus_stats, int total_pages,
                     const nn::EmbeddingTable<double>& font_table,
                     const nn::EmbeddingTable<double>& word_table);

}  // namespace litgraph::meta
