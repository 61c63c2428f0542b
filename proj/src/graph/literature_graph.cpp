#include "litgraph/graph/literature_graph.hpp"

#include <deque>

#include "litgraph/error.hpp"
#include "litgraph/text.hpp"

namespace litgraph::graph {

const char* to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::kCitation: return "citation";
    case EdgeKind::kAuthorship: return "authorship";
    case EdgeKind::kEntityLinking: return "entity_linking";
    case EdgeKind::kMentionMention: return "mention_mention";
    case EdgeKind::kEntityEntity: return "entity_entity";
  }
  return "?";
}

std::optional<EdgeKind> edge_kind_from_string(const std::string& s) {
  if (s == "citation") return EdgeKind::kCitation;
  if (s == "authorship") return EdgeKind::kAuthorship;
  if (s == "entity_linking") return EdgeKind::kEntityLinking;
  if (s == "mention_mention") return EdgeKind::kMentionMention;
  if (s == "entity_entity") return EdgeKind::kEntityEntity;
  return std::nullopt;
}

LiteratureGraph::LiteratureGraph()
    : LiteratureGraph(std::map<std::string, bool>{{"hyponym-of", false}, {"synonym-of", true}}) {}

LiteratureGraph::LiteratureGraph(std::map<std::string, bool> mention_relation_types)
    : mention_relation_types_(std::move(mention_relation_types)) {}

namespace {

template <typename Node>
std::string insert_node(std::map<std::string, Node>& table, const Node& node, const char* kind) {
  if (node.id.empty()) throw TypeError(std::string(kind) + " node with empty id");
  auto [it, inserted] = table.emplace(node.id, node);
  if (!inserted && !(it->second == node))
    throw ConflictError(std::string(kind) + " id '" + node.id + "' already exists with a different payload");
  return node.id;
}

}  // namespace

std::string LiteratureGraph::add_node(const PaperNode& node) {
  if (canonicalize(node.title).empty())
    throw TypeError("paper '" + node.id + "' has an empty title after canonicalization");
  if (node.year && (*node.year < 1500 || *node.year > 2100))
    throw TypeError("paper '" + node.id + "' has out-of-range year " + std::to_string(*node.year));
  return insert_node(papers_, node, "paper");
}

std::string LiteratureGraph::add_node(const AuthorNode& node) {
  if (node.last_name.empty()) throw TypeError("author '" + node.id + "' has an empty last name");
  return insert_node(authors_, node, "author");
}

std::string LiteratureGraph::add_node(const EntityNode& node) {
  if (node.canonical_name.empty())
    throw TypeError("entity '" + node.id + "' has an empty canonical name");
  return insert_node(entities_, node, "entity");
}

std::string LiteratureGraph::add_node(const MentionNode& node) {
  if (node.char_start >= node.char_end)
    throw TypeError("mention '" + node.id + "' has an empty character span");
  if (node.confidence < 0.0 || node.confidence > 1.0)
    throw TypeError("mention '" + node.id + "' has confidence outside [0,1]");
  if (!has_paper(node.paper_id))
    throw ReferenceError("mention '" + node.id + "' references missing paper '" + node.paper_id + "'");
  return insert_node(mentions_, node, "mention");
}

void LiteratureGraph::check_endpoints(const Edge& edge) const {
  const auto kind_of = [&](const std::string& id) -> const char* {
    if (has_paper(id)) return "paper";
    if (has_author(id)) return "author";
    if (has_entity(id)) return "entity";
    if (has_mention(id)) return "mention";
    return nullptr;
  };
  const auto expect = [&](const std::string& id, const char* wanted) {
    const char* actual = kind_of(id);
    if (actual == nullptr) throw ReferenceError("edge endpoint '" + id + "' does not exist");
    if (std::string(actual) != wanted)
      throw TypeError(std::string(to_string(edge.kind)) + " edge endpoint '" + id + "' is a " +
                      actual + ", expected a " + wanted);
  };
  switch (edge.kind) {
    case EdgeKind::kCitation: expect(edge.from, "paper"); expect(edge.to, "paper"); break;
    case EdgeKind::kAuthorship: expect(edge.from, "author"); expect(edge.to, "paper"); break;
    case EdgeKind::kEntityLinking: expect(edge.from, "mention"); expect(edge.to, "entity"); break;
    case EdgeKind::kMentionMention: expect(edge.from, "mention"); expect(edge.to, "mention"); break;
    case EdgeKind::kEntityEntity: expect(edge.from, "entity"); expect(edge.to, "entity"); break;
  }
}

std::string LiteratureGraph::add_edge(const Edge& edge) {
  check_endpoints(edge);
  if (edge.kind == EdgeKind::kMentionMention) {
    auto it = mention_relation_types_.find(edge.attrs.relation_type);
    if (it == mention_relation_types_.end())
      throw TypeError("unknown mention relation type '" + edge.attrs.relation_type + "'");
  }
  if (edge.kind == EdgeKind::kEntityEntity) {
    if (edge.attrs.provenance != "kb-import" && edge.attrs.provenance != "inferred")
      throw TypeError("entity-entity edge provenance must be 'kb-import' or 'inferred'");
  }
  edges_.push_back(edge);
  index_edge(edges_.size() - 1);
  return "e" + std::to_string(edges_.size() - 1);
}

void LiteratureGraph::add_mention_relation(const std::string& m1, const std::string& m2,
                                           const std::string& relation_type) {
  auto it = mention_relation_types_.find(relation_type);
  if (it == mention_relation_types_.end())
    throw TypeError("unknown mention relation type '" + relation_type + "'");
  Edge edge{EdgeKind::kMentionMention, m1, m2, {}};
  edge.attrs.relation_type = relation_type;
  edge.attrs.symmetric = it->second;
  add_edge(edge);
  if (it->second) {
    Edge reverse{EdgeKind::kMentionMention, m2, m1, edge.attrs};
    add_edge(reverse);
  }
}

void LiteratureGraph::index_edge(std::size_t edge_index) {
  const Edge& e = edges_[edge_index];
  forward_[e.kind][e.from].push_back(edge_index);
  reverse_[e.kind][e.to].push_back(edge_index);
}

void LiteratureGraph::rebuild_adjacency() {
  forward_.clear();
  reverse_.clear();
  for (std::size_t i = 0; i < edges_.size(); ++i) index_edge(i);
}

const PaperNode* LiteratureGraph::paper(const std::string& id) const {
  auto it = papers_.find(id);
  return it == papers_.end() ? nullptr : &it->second;
}
const AuthorNode* LiteratureGraph::author(const std::string& id) const {
  auto it = authors_.find(id);
  return it == authors_.end() ? nullptr : &it->second;
}
const EntityNode* LiteratureGraph::entity(const std::string& id) const {
  auto it = entities_.find(id);
  return it == entities_.end() ? nullptr : &it->second;
}
const MentionNode* LiteratureGraph::mention(const std::string& id) const {
  auto it = mentions_.find(id);
  return it == mentions_.end() ? nullptr : &it->second;
}

std::vector<const Edge*> LiteratureGraph::edges_from(const std::string& id, EdgeKind kind) const {
  std::vector<const Edge*> out;
  auto kind_it = forward_.find(kind);
  if (kind_it == forward_.end()) return out;
  auto it = kind_it->second.find(id);
  if (it == kind_it->second.end()) return out;
  for (std::size_t idx : it->second) out.push_back(&edges_[idx]);
  return out;
}

std::vector<const Edge*> LiteratureGraph::edges_to(const std::string& id, EdgeKind kind) const {
  std::vector<const Edge*> out;
  auto kind_it = reverse_.find(kind);
  if (kind_it == reverse_.end()) return out;
  auto it = kind_it->second.find(id);
  if (it == kind_it->second.end()) return out;
  for (std::size_t idx : it->second) out.push_back(&edges_[idx]);
  return out;
}

std::optional<int> LiteratureGraph::collaboration_distance(const std::string& author_a,
                                                           const std::string& author_b) const {
  if (!has_author(author_a)) throw ReferenceError("unknown author '" + author_a + "'");
  if (!has_author(author_b)) throw ReferenceError("unknown author '" + author_b + "'");
  if (author_a == author_b) return 0;

  std::map<std::string, int> dist{{author_a, 0}};
  std::deque<std::string> queue{author_a};
  while (!queue.empty()) {
    const std::string cur = queue.front();
    queue.pop_front();
    for (const Edge* authored : edges_from(cur, EdgeKind::kAuthorship)) {
      for (const Edge* coauthored : edges_to(authored->to, EdgeKind::kAuthorship)) {
        const std::string& other = coauthored->from;
        if (dist.count(other)) continue;
        dist[other] = dist[cur] + 1;
        if (other == author_b) return dist[other];
        queue.push_back(other);
      }
    }
  }
  return std::nullopt;
}

std::vector<std::string> LiteratureGraph::validate() const {
  std::vector<std::string> violations;
  const auto complain = [&](std::string msg) { violations.push_back(std::move(msg)); };

  for (const auto& [id, m] : mentions_) {
    if (!has_paper(m.paper_id))
      complain("mention '" + id + "' references missing paper '" + m.paper_id + "'");
    if (m.confidence < 0.0 || m.confidence > 1.0)
      complain("mention '" + id + "' confidence outside [0,1]");
    if (m.char_start >= m.char_end) complain("mention '" + id + "' has an empty span");
  }
  for (const auto& [id, p] : papers_) {
    if (canonicalize(p.title).empty()) complain("paper '" + id + "' has an empty title");
    if (p.year && (*p.year < 1500 || *p.year > 2100))
      complain("paper '" + id + "' has out-of-range year");
  }
  for (const auto& [id, a] : authors_) {
    if (a.last_name.empty()) complain("author '" + id + "' has an empty last name");
  }

  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    try {
      check_endpoints(e);
    } catch (const Error& err) {
      complain("edge e" + std::to_string(i) + ": " + err.what());
      continue;
    }
    if (e.kind == EdgeKind::kMentionMention && e.attrs.symmetric) {
      bool found = false;
      for (const Edge* other : edges_from(e.to, EdgeKind::kMentionMention))
        if (other->to == e.from && other->attrs.relation_type == e.attrs.relation_type) found = true;
      if (!found)
        complain("symmetric mention relation e" + std::to_string(i) + " is missing its reverse edge");
    }
  }

  // Reverse adjacency must mirror forward adjacency.
  for (const auto& [kind, table] : forward_) {
    std::size_t fwd_count = 0, rev_count = 0;
    for (const auto& [id, v] : table) fwd_count += v.size();
    auto rev_it = reverse_.find(kind);
    if (rev_it != reverse_.end())
      for (const auto& [id, v] : rev_it->second) rev_count += v.size();
    if (fwd_count != rev_count)
      complain(std::string("adjacency mismatch for edge kind ") + to_string(kind));
  }
  return violations;
}

}  // namespace litgraph::graph
