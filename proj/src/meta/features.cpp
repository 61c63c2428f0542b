#include "litgraph/meta/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "litgraph/error.hpp"
#include "litgraph/text.hpp"

namespace litgraph::meta {

DocumentStats compute_document_stats(const PdfDocument& doc) {
  DocumentStats stats;
  stats.pages.resize(doc.pages.size());
  for (std::size_t p = 0; p < doc.pages.size(); ++p) {
    for (const auto& tok : doc.pages[p].tokens) {
      stats.pages[p].font.add(tok.font_size);
      stats.pages[p].space.add(tok.space_width);
      stats.document.font.add(tok.font_size);
      stats.document.space.add(tok.space_width);
    }
  }
  return stats;
}

ScopeStats compute_corpus_stats(const std::vector<PdfDocument>& docs) {
  ScopeStats stats;
  for (const auto& doc : docs)
    for (const auto& page : doc.pages)
      for (const auto& tok : page.tokens) {
        stats.font.add(tok.font_size);
        stats.space.add(tok.space_width);
      }
  return stats;
}

double normalize_scalar(double value, const MinMax& stats) {
  if (!stats.seen || stats.max == stats.min) return 0.0;
  const double v = (value - stats.min) / (stats.max - stats.min) - 0.5;
  return std::clamp(v, -0.5, 0.5);
}

std::pair<double, double> scale_position(double x, double y, double page_width, double page_height) {
  if (page_width <= 0 || page_height <= 0) throw Error("scale_position: nonpositive page size");
  return {x / page_width - 0.5, y / page_height - 0.5};
}

std::array<double, 7> case_features(const std::string& text) {
  if (text.empty()) throw Error("case_features: empty token");
  const auto upper = [](char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; };
  const auto lower = [](char c) { return std::islower(static_cast<unsigned char>(c)) != 0; };
  const auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };

  std::array<double, 7> f{};
  f[0] = upper(text[0]) ? 1.0 : 0.0;
  f[1] = lower(text[0]) ? 1.0 : 0.0;
  if (text.size() > 1) {
    f[2] = upper(text[1]) ? 1.0 : 0.0;
    f[3] = lower(text[1]) ? 1.0 : 0.0;
  }
  double n_upper = 0, n_lower = 0, n_digit = 0;
  for (char c : text) {
    n_upper += upper(c);
    n_lower += lower(c);
    n_digit += digit(c);
  }
  const double n = static_cast<double>(text.size());
  f[4] = n_upper / n;
  f[5] = n_lower / n;
  f[6] = n_digit / n;
  return f;
}

std::pair<int, int> page_position_features(int page_index, int total_pages) {
  if (page_index < 0 || page_index >= total_pages)
    throw Error("page_position_features: page index out of range");
  return {std::min(page_index, 2), std::min(total_pages - 1 - page_index, 2)};
}

nn::Vecd numeric_features(const PdfToken& token, const PdfPage& page, const ScopeStats& page_stats,
                          const ScopeStats& doc_stats, const ScopeStats& corpus_stats,
                          int total_pages) {
  nn::Vecd v = nn::Vecd::Zero(kNumericFeatureDim);
  Eigen::Index i = 0;
  v(i++) = normalize_scalar(token.font_size, page_stats.font);
  v(i++) = normalize_scalar(token.font_size, doc_stats.font);
  v(i++) = normalize_scalar(token.font_size, corpus_stats.font);
  v(i++) = normalize_scalar(token.space_width, page_stats.space);
  v(i++) = normalize_scalar(token.space_width, doc_stats.space);
  v(i++) = normalize_scalar(token.space_width, corpus_stats.space);
  const auto [px, py] = scale_position(token.x, token.y, page.width, page.height);
  v(i++) = px;
  v(i++) = py;
  for (double c : case_features(token.text)) v(i++) = c;
  const auto [from_start, from_end] = page_position_features(token.page_index, total_pages);
  v(i + from_start) = 1.0;
  i += 3;
  v(i + from_end) = 1.0;
  return v;
}

std::string font_bucket_token(double font_size) {
  return "f" + std::to_string(static_cast<long>(std::lround(font_size * 2.0)));
}

nn::Vecd build_input(const PdfToken& token, const PdfPage& page, const ScopeStats& page_stats,
                     const ScopeStats& doc_stats, const ScopeStats& corpus_stats, int total_pages,
                     const nn::EmbeddingTable<double>& font_table,
                     const nn::EmbeddingTable<double>& word_table) {
  const nn::Vecd numeric =
      numeric_features(token, page, page_stats, doc_stats, corpus_stats, total_pages);
  nn::Vecd out(numeric.size() + font_table.dim() + word_table.dim());
  out.head(numeric.size()) = numeric;
  out.segment(numeric.size(), font_table.dim()) =
      font_table.lookup(font_bucket_token(token.font_size));
  out.tail(word_table.dim()) = word_table.lookup(to_lower(token.text));
  return out;
}

}  // namespace litgraph::meta
