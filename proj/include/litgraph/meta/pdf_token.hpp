#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace litgraph::meta {

// One page token as produced by an external PDF tokenizer. Coordinates are in
// points with the origin at the top-left of the page.
struct PdfToken {
  std::string text;
  double font_size = 0;
  double space_width = 0;
  double x = 0;
  double y = 0;
  int page_index = 0;
};

struct PdfPage {
  double width = 0;
  double height = 0;
  std::vector<PdfToken> tokens;
};

struct PdfDocument {
  std::string doc_id;
  std::vector<PdfPage> pages;

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& p : pages) n += p.tokens.size();
    return n;
  }
};

// Reads documents from JSONL:
// {"doc_id":str, "pages":[{"width":num,"height":num,
//   "tokens":[{"text":str,"font_size":num,"space_width":num,"x":num,"y":num}]}]}
std::vector<PdfDocument> load_documents(const std::filesystem::path& path);

void save_documents(const std::vector<PdfDocument>& docs, const std::filesystem::path& path);

}  // namespace litgraph::meta
