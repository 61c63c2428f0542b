#include "litgraph/meta/decode.hpp"

#include <algorithm>
#include <cctype>

#include "litgraph/error.hpp"
#include "litgraph/meta/labels.hpp"
#include "litgraph/text.hpp"

namespace litgraph::meta {

namespace {

std::string join_tokens(const PdfPage& page, int start, int end) {
  std::string out;
  for (int k = start; k < end; ++k) {
    if (!out.empty()) out.push_back(' ');
    out += page.tokens[k].text;
  }
  return out;
}

bool has_field(int label, Field field) {
  return !ner::is_outside(label) && ner::bilou_field_of(label) == int(field);
}

std::optional<int> parse_year(const std::string& text) {
  for (std::size_t i = 0; i + 4 <= text.size(); ++i) {
    bool four_digits = true;
    for (std::size_t j = i; j < i + 4; ++j)
      four_digits &= std::isdigit(static_cast<unsigned char>(text[j])) != 0;
    if (four_digits && (i + 4 == text.size() || !std::isdigit(static_cast<unsigned char>(text[i + 4]))))
      return std::stoi(text.substr(i, 4));
  }
  return std::nullopt;
}

}  // namespace

AuthorName split_author_name(const std::string& joined) {
  const auto parts = split_whitespace(joined);
  if (parts.empty()) return {"", ""};
  if (parts.size() == 1) return {"", parts[0]};
  std::string first;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!first.empty()) first.push_back(' ');
    first += parts[i];
  }
  return {first, parts.back()};
}

PaperMetadata decode_metadata(const std::vector<PageLabels>& pages, const PdfDocument& doc) {
  PaperMetadata out;

  std::vector<PageLabels> ordered = pages;
  std::sort(ordered.begin(), ordered.end(),
            [](const PageLabels& a, const PageLabels& b) { return a.page_index < b.page_index; });

  // Title: longest continuous run of title-labeled tokens, ties to the
  // earliest run in reading order.
  int best_len = 0, best_page = -1, best_start = 0;
  for (const auto& pl : ordered) {
    if (pl.page_index < 0 || pl.page_index >= int(doc.pages.size()))
      throw Error("decode_metadata: label page out of range");
    const auto& labels = pl.labels;
    if (labels.size() != doc.pages[pl.page_index].tokens.size())
      throw Error("decode_metadata: label/token length mismatch");
    int k = 0;
    while (k < int(labels.size())) {
      if (!has_field(labels[k], Field::kTitle)) {
        ++k;
        continue;
      }
      int end = k;
      while (end < int(labels.size()) && has_field(labels[end], Field::kTitle)) ++end;
      if (end - k > best_len) {
        best_len = end - k;
        best_page = pl.page_index;
        best_start = k;
      }
      k = end;
    }
  }
  if (best_page >= 0)
    out.title = join_tokens(doc.pages[best_page], best_start, best_start + best_len);

  // Authors: BILOU segments per page; the page with the most author runs wins,
  // earliest page on ties.
  std::vector<std::vector<Segment>> page_segments;
  std::vector<int> page_indices;
  for (const auto& pl : ordered) {
    page_segments.push_back(ner::bilou_segments(pl.labels));
    page_indices.push_back(pl.page_index);
  }

  int author_page = -1;
  std::size_t most_runs = 0;
  for (std::size_t p = 0; p < page_segments.size(); ++p) {
    std::size_t runs = 0;
    for (const auto& seg : page_segments[p]) runs += seg.field == int(Field::kAuthor);
    if (runs > most_runs) {
      most_runs = runs;
      author_page = int(p);
    }
  }
  if (author_page >= 0) {
    const PdfPage& page = doc.pages[page_indices[author_page]];
    for (const auto& seg : page_segments[author_page])
      if (seg.field == int(Field::kAuthor))
        out.authors.push_back(split_author_name(join_tokens(page, seg.start, seg.end)));
  }

  // References: a record opens at each ref_title run; later field runs attach
  // to the open record until the next title.
  bool open = false;
  for (std::size_t p = 0; p < page_segments.size(); ++p) {
    const PdfPage& page = doc.pages[page_indices[p]];
    for (const auto& seg : page_segments[p]) {
      const std::string text = join_tokens(page, seg.start, seg.end);
      switch (Field(seg.field)) {
        case Field::kRefTitle:
          out.references.push_back({});
          out.references.back().title = text;
          open = true;
          break;
        case Field::kRefAuthor:
          if (open) out.references.back().authors.push_back(split_author_name(text));
          break;
        case Field::kRefVenue:
          if (open && out.references.back().venue.empty()) out.references.back().venue = text;
          break;
        case Field::kRefYear:
          if (open && !out.references.back().year) out.references.back().year = parse_year(text);
          break;
        case Field::kTitle:
        case Field::kAuthor:
          break;
      }
    }
  }
  return out;
}

}  // namespace litgraph::meta
