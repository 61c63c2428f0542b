#pragma once

#include <string>
#include <vector>

#include "litgraph/meta/metadata.hpp"
#include "litgraph/meta/pdf_token.hpp"

namespace litgraph::meta {

struct PageLabels {
  int page_index = 0;
  std::vector<int> labels;  // one per token of that page
};

// Output of the heuristic training-label generator. Failure is a value, not
// an error: documents whose title or authors cannot be located are excluded
// from training. Only pages with at least one labeled token are kept.
struct HeuristicResult {
  bool success = false;
  std::string failure_reason;
  std::vector<PageLabels> pages;
};

// Projects gold metadata strings onto the token stream: exact contiguous
// token-run matches (case-insensitive, punctuation-stripped; punctuation-only
// tokens inside a run are tolerated) receive BILOU field labels. Earlier
// fields win conflicts (title, then authors, then reference fields).
HeuristicResult heuristic_label(const PdfDocument& doc, const PaperMetadata& gold);

}  // namespace litgraph::meta
