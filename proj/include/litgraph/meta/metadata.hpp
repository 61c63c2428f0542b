#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "litgraph/jsonl.hpp"

namespace litgraph::meta {

using AuthorName = std::pair<std::string, std::string>;  // (first [+ middle], last)

struct Reference {
  std::string title;
  std::vector<AuthorName> authors;
  std::string venue;
  std::optional<int> year;

  friend bool operator==(const Reference&, const Reference&) = default;
};

struct PaperMetadata {
  std::string title;
  std::vector<AuthorName> authors;
  std::vector<Reference> references;

  friend bool operator==(const PaperMetadata&, const PaperMetadata&) = default;
};

std::string full_name(const AuthorName& name);

ojson metadata_to_json(const PaperMetadata& m);
PaperMetadata metadata_from_json(const json& j);

}  // namespace litgraph::meta
