#pragma once

#include <vector>

#include "litgraph/meta/heuristic.hpp"
#include "litgraph/meta/metadata.hpp"
#include "litgraph/meta/pdf_token.hpp"

namespace litgraph::meta {

// Turns per-page label sequences into structured metadata:
//   - title: the longest continuous run of title-labeled tokens, earliest on
//     ties;
//   - authors: all author runs on the single page carrying the most runs;
//   - references: a record opens at each ref_title run; following
//     ref_author/ref_venue/ref_year runs attach to the open record.
// Token texts inside a run are joined with single spaces.
PaperMetadata decode_metadata(const std::vector<PageLabels>& pages, const PdfDocument& doc);

// Splits a decoded name run: the final token is the last name, everything
// before it is the first (and middle) name.
AuthorName split_author_name(const std::string& joined);

}  // namespace litgraph::meta
