#include "litgraph/meta/heuristic.hpp"

#include <algorithm>

#include "litgraph/meta/labels.hpp"
#include "litgraph/text.hpp"

namespace litgraph::meta {

namespace {

std::vector<std::string> gold_tokens(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& piece : split_whitespace(text)) {
    std::string canon = canonicalize(piece);
    if (!canon.empty()) out.push_back(std::move(canon));
  }
  return out;
}

struct PageView {
  const PdfPage* page;
  std::vector<std::string> norm;   // canonicalized token texts
  std::vector<int> labels;         // O / field labels being accumulated
};

// Finds every contiguous run of tokens matching the gold token list and
// labels unclaimed runs with BILOU tags for `field`. Punctuation-only tokens
// inside a run are allowed; the run must start and end on matching tokens.
int label_matches(PageView& view, const std::vector<std::string>& gold, Field field) {
  if (gold.empty()) return 0;
  int labeled = 0;
  const auto& norm = view.norm;
  for (std::size_t start = 0; start < norm.size(); ++start) {
    if (norm[start] != gold[0]) continue;
    std::size_t pos = start + 1;
    std::size_t matched = 1;
    std::size_t last = start;
    while (matched < gold.size() && pos < norm.size()) {
      if (norm[pos].empty()) {
        ++pos;  // punctuation token inside the run
        continue;
      }
      if (norm[pos] != gold[matched]) break;
      last = pos;
      ++matched;
      ++pos;
    }
    if (matched != gold.size()) continue;

    bool claimed = false;
    for (std::size_t k = start; k <= last; ++k) claimed |= view.labels[k] != ner::kOutsideLabel;
    if (claimed) continue;

    if (last == start) {
      view.labels[start] = label_id(field, ner::BilouTag::kU);
    } else {
      view.labels[start] = label_id(field, ner::BilouTag::kB);
      for (std::size_t k = start + 1; k < last; ++k)
        view.labels[k] = label_id(field, ner::BilouTag::kI);
      view.labels[last] = label_id(field, ner::BilouTag::kL);
    }
    ++labeled;
  }
  return labeled;
}

int label_on_all_pages(std::vector<PageView>& views, const std::string& text, Field field) {
  const auto gold = gold_tokens(text);
  int total = 0;
  for (auto& view : views) total += label_matches(view, gold, field);
  return total;
}

}  // namespace

HeuristicResult heuristic_label(const PdfDocument& doc, const PaperMetadata& gold) {
  HeuristicResult result;

  std::vector<PageView> views;
  for (const auto& page : doc.pages) {
    PageView view;
    view.page = &page;
    for (const auto& tok : page.tokens) view.norm.push_back(canonicalize(tok.text));
    view.labels.assign(page.tokens.size(), ner::kOutsideLabel);
    views.push_back(std::move(view));
  }

  // Fields in priority order; earlier fields claim tokens first.
  if (label_on_all_pages(views, gold.title, Field::kTitle) == 0) {
    result.failure_reason = "title not found in tokens";
    return result;
  }
  for (const auto& author : gold.authors) {
    if (label_on_all_pages(views, full_name(author), Field::kAuthor) == 0) {
      result.failure_reason = "author '" + full_name(author) + "' not found in tokens";
      return result;
    }
  }
  for (const auto& ref : gold.references) {
    label_on_all_pages(views, ref.title, Field::kRefTitle);
    for (const auto& author : ref.authors)
      label_on_all_pages(views, full_name(author), Field::kRefAuthor);
    if (!ref.venue.empty()) label_on_all_pages(views, ref.venue, Field::kRefVenue);
    if (ref.year) label_on_all_pages(views, std::to_string(*ref.year), Field::kRefYear);
  }

  result.success = true;
  for (std::size_t p = 0; p < views.size(); ++p) {
    const bool has_label = std::any_of(views[p].labels.begin(), views[p].labels.end(),
                                       [](int y) { return y != ner::kOutsideLabel; });
    if (has_label) result.pages.push_back({int(p), std::move(views[p].labels)});
  }
  return result;
}

}  // namespace litgraph::meta
