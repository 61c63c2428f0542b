#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "litgraph/graph/types.hpp"

namespace litgraph::graph {

// Typed in-memory property graph over papers, authors, entities and mentions.
//
// Concurrency: callers may run any number of concurrent readers OR one
// exclusive writer. Batch operations (dedup, import) take the writer role.
// The graph starts no threads and holds no internal locks.
class LiteratureGraph {
 public:
  LiteratureGraph();

  // Relation vocabulary for mention-mention edges; name -> is-symmetric.
  explicit LiteratureGraph(std::map<std::string, bool> mention_relation_types);

  // add_node is idempotent for identical payloads; re-adding an id with a
  // different payload is a conflict. Returns the node id.
  std::string add_node(const PaperNode& node);
  std::string add_node(const AuthorNode& node);
  std::string add_node(const EntityNode& node);
  std::string add_node(const MentionNode& node);

  // Endpoints must exist and match the edge kind's (from, to) node kinds.
  // Returns the edge id ("e" + index).
  std::string add_edge(const Edge& edge);

  // Adds a mention-mention relation; symmetric relation types produce the two
  // directed edges m1 -> m2 and m2 -> m1.
  void add_mention_relation(const std::string& m1, const std::string& m2,
                            const std::string& relation_type);

  bool has_paper(const std::string& id) const { return papers_.count(id) > 0; }
  bool has_author(const std::string& id) const { return authors_.count(id) > 0; }
  bool has_entity(const std::string& id) const { return entities_.count(id) > 0; }
  bool has_mention(const std::string& id) const { return mentions_.count(id) > 0; }

  const PaperNode* paper(const std::string& id) const;
  const AuthorNode* author(const std::string& id) const;
  const EntityNode* entity(const std::string& id) const;
  const MentionNode* mention(const std::string& id) const;

  const std::map<std::string, PaperNode>& papers() const { return papers_; }
  const std::map<std::string, AuthorNode>& authors() const { return authors_; }
  const std::map<std::string, EntityNode>& entities() const { return entities_; }
  const std::map<std::string, MentionNode>& mentions() const { return mentions_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::map<std::string, bool>& mention_relation_types() const {
    return mention_relation_types_;
  }

  std::vector<const Edge*> edges_from(const std::string& id, EdgeKind kind) const;
  std::vector<const Edge*> edges_to(const std::string& id, EdgeKind kind) const;

  // Co-authorship hops between two authors along the undirected view of
  // authorship edges; author-paper-author counts as one hop; 0 iff a == b.
  // nullopt when unreachable.
  std::optional<int> collaboration_distance(const std::string& author_a,
                                            const std::string& author_b) const;

  // Whole-graph invariant check; returns one message per violation.
  std::vector<std::string> validate() const;

 private:
  friend struct DedupAccess;

  void index_edge(std::size_t edge_index);
  void rebuild_adjacency();
  void check_endpoints(const Edge& edge) const;

  std::map<std::string, PaperNode> papers_;
  std::map<std::string, AuthorNode> authors_;
  std::map<std::string, EntityNode> entities_;
  std::map<std::string, MentionNode> mentions_;
  std::vector<Edge> edges_;
  std::map<std::string, bool> mention_relation_types_;

  // adjacency per edge kind
  std::map<EdgeKind, std::map<std::string, std::vector<std::size_t>>> forward_;
  std::map<EdgeKind, std::map<std::string, std::vector<std::size_t>>> reverse_;
};

}  // namespace litgraph::graph
