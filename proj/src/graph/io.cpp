#include "litgraph/graph/io.hpp"

#include <algorithm>

#include "litgraph/jsonl.hpp"

namespace litgraph::graph {

namespace {

ojson paper_to_json(const PaperNode& p) {
  ojson j;
  j["kind"] = "paper";
  j["id"] = p.id;
  j["title"] = p.title;
  if (p.abstract) j["abstract"] = *p.abstract;
  if (p.full_text) j["full_text"] = *p.full_text;
  j["venues"] = p.venues;
  if (p.year) j["year"] = *p.year;
  ojson sources = ojson::array();
  for (const auto& [src, ext] : p.source_ids) sources.push_back(ojson::array({src, ext}));
  j["source_ids"] = std::move(sources);
  return j;
}

ojson author_to_json(const AuthorNode& a) {
  ojson j;
  j["kind"] = "author";
  j["id"] = a.id;
  j["first_name"] = a.first_name;
  j["last_name"] = a.last_name;
  return j;
}

ojson entity_to_json(const EntityNode& e) {
  ojson j;
  j["kind"] = "entity";
  j["id"] = e.id;
  j["canonical_name"] = e.canonical_name;
  j["aliases"] = std::vector<std::string>(e.aliases.begin(), e.aliases.end());
  if (e.description) j["description"] = *e.description;
  j["source_kb"] = e.source_kb;
  return j;
}

ojson mention_to_json(const MentionNode& m) {
  ojson j;
  j["kind"] = "mention";
  j["id"] = m.id;
  j["paper_id"] = m.paper_id;
  j["mention_text"] = m.mention_text;
  j["left_context"] = m.left_context;
  j["right_context"] = m.right_context;
  j["char_start"] = m.char_start;
  j["char_end"] = m.char_end;
  j["confidence"] = m.confidence;
  return j;
}

ojson edge_to_json(const Edge& e) {
  ojson j;
  j["kind"] = to_string(e.kind);
  j["from"] = e.from;
  j["to"] = e.to;
  ojson attrs = ojson::object();
  switch (e.kind) {
    case EdgeKind::kCitation: attrs["contexts"] = e.attrs.contexts; break;
    case EdgeKind::kAuthorship: break;
    case EdgeKind::kEntityLinking: break;
    case EdgeKind::kMentionMention:
      attrs["relation_type"] = e.attrs.relation_type;
      attrs["symmetric"] = e.attrs.symmetric;
      break;
    case EdgeKind::kEntityEntity:
      attrs["relation_type"] = e.attrs.relation_type;
      attrs["provenance"] = e.attrs.provenance;
      break;
  }
  j["attrs"] = std::move(attrs);
  return j;
}

template <typename T>
T get_required(const json& j, const char* key, std::size_t line) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'", line);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("bad value for field '") + key + "'", line);
  }
}

}  // namespace

void export_graph(const LiteratureGraph& graph, const std::filesystem::path& nodes_path,
                  const std::filesystem::path& edges_path) {
  AtomicFile nodes(nodes_path);
  // node maps are ordered by id already; write kinds in a fixed order
  for (const auto& [id, p] : graph.papers()) nodes.write_line(paper_to_json(p));
  for (const auto& [id, a] : graph.authors()) nodes.write_line(author_to_json(a));
  for (const auto& [id, e] : graph.entities()) nodes.write_line(entity_to_json(e));
  for (const auto& [id, m] : graph.mentions()) nodes.write_line(mention_to_json(m));
  nodes.commit();

  std::vector<std::string> lines;
  lines.reserve(graph.edges().size());
  for (const auto& e : graph.edges()) lines.push_back(edge_to_json(e).dump());
  std::sort(lines.begin(), lines.end());
  AtomicFile edges(edges_path);
  for (const auto& line : lines) edges.stream() << line << '\n';
  edges.commit();
}

LiteratureGraph import_graph(const std::filesystem::path& nodes_path,
                             const std::filesystem::path& edges_path) {
  LiteratureGraph graph;

  // Mentions are loaded after the papers they reference.
  std::vector<std::pair<std::size_t, json>> deferred_mentions;

  for_each_jsonl(nodes_path, [&](std::size_t line, const json& j) {
    const std::string kind = get_required<std::string>(j, "kind", line);
    if (kind == "paper") {
      PaperNode p;
      p.id = get_required<std::string>(j, "id", line);
      p.title = get_required<std::string>(j, "title", line);
      if (j.contains("abstract")) p.abstract = j.at("abstract").get<std::string>();
      if (j.contains("full_text")) p.full_text = j.at("full_text").get<std::string>();
      if (j.contains("venues")) p.venues = j.at("venues").get<std::vector<std::string>>();
      if (j.contains("year")) p.year = j.at("year").get<int>();
      if (j.contains("source_ids"))
        for (const auto& s : j.at("source_ids"))
          p.source_ids.emplace_back(s.at(0).get<std::string>(), s.at(1).get<std::string>());
      graph.add_node(p);
    } else if (kind == "author") {
      AuthorNode a;
      a.id = get_required<std::string>(j, "id", line);
      a.first_name = get_required<std::string>(j, "first_name", line);
      a.last_name = get_required<std::string>(j, "last_name", line);
      graph.add_node(a);
    } else if (kind == "entity") {
      EntityNode e;
      e.id = get_required<std::string>(j, "id", line);
      e.canonical_name = get_required<std::string>(j, "canonical_name", line);
      if (j.contains("aliases"))
        for (const auto& al : j.at("aliases")) e.aliases.insert(al.get<std::string>());
      if (j.contains("description")) e.description = j.at("description").get<std::string>();
      e.source_kb = get_required<std::string>(j, "source_kb", line);
      graph.add_node(e);
    } else if (kind == "mention") {
      deferred_mentions.emplace_back(line, j);
    } else {
      throw ParseError("unknown node kind '" + kind + "'", line);
    }
  });

  for (const auto& [line, j] : deferred_mentions) {
    MentionNode m;
    m.id = get_required<std::string>(j, "id", line);
    m.paper_id = get_required<std::string>(j, "paper_id", line);
    m.mention_text = get_required<std::string>(j, "mention_text", line);
    m.left_context = j.value("left_context", "");
    m.right_context = j.value("right_context", "");
    m.char_start = get_required<std::size_t>(j, "char_start", line);
    m.char_end = get_required<std::size_t>(j, "char_end", line);
    m.confidence = get_required<double>(j, "confidence", line);
    graph.add_node(m);
  }

  for_each_jsonl(edges_path, [&](std::size_t line, const json& j) {
    Edge e;
    const std::string kind = get_required<std::string>(j, "kind", line);
    const auto parsed = edge_kind_from_string(kind);
    if (!parsed) throw ParseError("unknown edge kind '" + kind + "'", line);
    e.kind = *parsed;
    e.from = get_required<std::string>(j, "from", line);
    e.to = get_required<std::string>(j, "to", line);
    if (!j.contains("attrs")) throw ParseError("edge record missing 'attrs'", line);
    const json& attrs = j.at("attrs");
    switch (e.kind) {
      case EdgeKind::kCitation:
        if (attrs.contains("contexts"))
          e.attrs.contexts = attrs.at("contexts").get<std::vector<std::string>>();
        break;
      case EdgeKind::kAuthorship:
      case EdgeKind::kEntityLinking:
        break;
      case EdgeKind::kMentionMention:
        e.attrs.relation_type = get_required<std::string>(attrs, "relation_type", line);
        e.attrs.symmetric = attrs.value("symmetric", false);
        break;
      case EdgeKind::kEntityEntity:
        e.attrs.relation_type = get_required<std::string>(attrs, "relation_type", line);
        e.attrs.provenance = get_required<std::string>(attrs, "provenance", line);
        break;
    }
    try {
      graph.add_edge(e);
    } catch (const litgraph::Error& err) {
      throw ParseError(std::string("bad edge record: ") + err.what(), line);
    }
  });

  return graph;
}

}  // namespace litgraph::graph
