#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace litgraph::graph {

struct PaperNode {
  std::string id;
  std::string title;
  std::optional<std::string> abstract;
  std::optional<std::string> full_text;
  std::vector<std::string> venues;
  std::optional<int> year;
  std::vector<std::pair<std::string, std::string>> source_ids;  // (source name, external id)

  friend bool operator==(const PaperNode&, const PaperNode&) = default;
};

struct AuthorNode {
  std::string id;
  std::string first_name;
  std::string last_name;

  friend bool operator==(const AuthorNode&, const AuthorNode&) = default;
};

struct EntityNode {
  std::string id;
  std::string canonical_name;
  std::set<std::string> aliases;
  std::optional<std::string> description;
  std::string source_kb;

  friend bool operator==(const EntityNode&, const EntityNode&) = default;
};

struct MentionNode {
  std::string id;
  std::string paper_id;
  std::string mention_text;
  std::string left_context;
  std::string right_context;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  double confidence = 1.0;

  friend bool operator==(const MentionNode&, const MentionNode&) = default;
};

enum class EdgeKind { kCitation, kAuthorship, kEntityLinking, kMentionMention, kEntityEntity };

const char* to_string(EdgeKind kind);
std::optional<EdgeKind> edge_kind_from_string(const std::string& s);

struct EdgeAttrs {
  std::vector<std::string> contexts;  // citation: sentences citing the target
  std::string relation_type;          // mention-mention / entity-entity
  std::string provenance;             // entity-entity: "kb-import" | "inferred"
  bool symmetric = false;             // mention-mention: reverse edge expected

  friend bool operator==(const EdgeAttrs&, const EdgeAttrs&) = default;
};

struct Edge {
  EdgeKind kind = EdgeKind::kCitation;
  std::string from;
  std::string to;
  EdgeAttrs attrs;

  friend bool operator==(const Edge&, const Edge&) = default;
};

}  // namespace litgraph::graph
