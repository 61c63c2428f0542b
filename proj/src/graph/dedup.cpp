#include "litgraph/graph/dedup.hpp"

#include <algorithm>
#include <map>

#include "litgraph/error.hpp"
#include "litgraph/text.hpp"

namespace litgraph::graph {

namespace {

struct UnionFind {
  std::map<std::string, std::string> parent;

  std::string find(const std::string& x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      return x;
    }
    if (it->second == x) return x;
    const std::string root = find(it->second);
    parent[x] = root;
    return root;
  }

  void unite(const std::string& a, const std::string& b) {
    std::string ra = find(a), rb = find(b);
    if (ra == rb) return;
    // Smaller id becomes the root, which is also the kept id.
    if (rb < ra) std::swap(ra, rb);
    parent[rb] = ra;
  }
};

int non_empty_fields(const PaperNode& p) {
  int n = 0;
  n += !p.title.empty();
  n += p.abstract.has_value() && !p.abstract->empty();
  n += p.full_text.has_value() && !p.full_text->empty();
  n += !p.venues.empty();
  n += p.year.has_value();
  n += !p.source_ids.empty();
  return n;
}

bool years_compatible(const PaperNode& a, const PaperNode& b) {
  return !a.year || !b.year || *a.year == *b.year;
}

}  // namespace

// Private access for the batch rewrite.
struct DedupAccess {
  static std::map<std::string, PaperNode>& papers(LiteratureGraph& g) { return g.papers_; }
  static std::map<std::string, MentionNode>& mentions(LiteratureGraph& g) { return g.mentions_; }
  static std::vector<Edge>& edges(LiteratureGraph& g) { return g.edges_; }
  static void rebuild(LiteratureGraph& g) { g.rebuild_adjacency(); }
};

MergeReport dedup_papers(LiteratureGraph& graph, double similarity_threshold) {
  if (similarity_threshold <= 0.0 || similarity_threshold > 1.0)
    throw Error("dedup threshold must lie in (0, 1]");

  auto& papers = DedupAccess::papers(graph);

  // Blocking on the first four canonical-title characters keeps the pairwise
  // comparison local; year compatibility is part of the merge predicate, not
  // the block key, so a missing-year paper can still match a dated one.
  std::map<std::string, std::vector<std::string>> blocks;
  std::map<std::string, std::string> canonical;
  for (const auto& [id, p] : papers) {
    const std::string canon = canonicalize(p.title);
    canonical[id] = canon;
    blocks[canon.substr(0, 4)].push_back(id);
  }

  UnionFind uf;
  for (const auto& [key, ids] : blocks) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        const PaperNode& a = papers.at(ids[i]);
        const PaperNode& b = papers.at(ids[j]);
        if (!years_compatible(a, b)) continue;
        if (levenshtein_similarity(canonical[ids[i]], canonical[ids[j]]) >= similarity_threshold)
          uf.unite(ids[i], ids[j]);
      }
    }
  }

  std::map<std::string, std::vector<std::string>> groups;  // kept id -> members
  for (const auto& [id, p] : papers) groups[uf.find(id)].push_back(id);

  MergeReport report;
  for (auto& [kept_id, members] : groups) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end());

    // Attribute donor: most non-empty fields, smaller id on ties.
    const PaperNode* donor = &papers.at(members.front());
    for (const auto& id : members) {
      const PaperNode& candidate = papers.at(id);
      if (non_empty_fields(candidate) > non_empty_fields(*donor)) donor = &candidate;
    }

    PaperNode merged = *donor;
    merged.id = kept_id;
    merged.source_ids.clear();
    for (const auto& id : members) {
      const auto& src = papers.at(id).source_ids;
      merged.source_ids.insert(merged.source_ids.end(), src.begin(), src.end());
    }
    std::sort(merged.source_ids.begin(), merged.source_ids.end());
    merged.source_ids.erase(std::unique(merged.source_ids.begin(), merged.source_ids.end()),
                            merged.source_ids.end());

    MergeGroup group;
    group.kept_id = kept_id;
    for (const auto& id : members) {
      if (id != kept_id) {
        group.absorbed_ids.push_back(id);
        papers.erase(id);
      }
    }
    papers[kept_id] = merged;
    report.push_back(std::move(group));
  }

  if (report.empty()) return report;

  // Re-point citation/authorship edges and mention paper references.
  std::map<std::string, std::string> redirect;
  for (const auto& g : report)
    for (const auto& absorbed : g.absorbed_ids) redirect[absorbed] = g.kept_id;
  const auto target = [&](const std::string& id) {
    auto it = redirect.find(id);
    return it == redirect.end() ? id : it->second;
  };

  auto& edges = DedupAccess::edges(graph);
  for (auto& e : edges) {
    if (e.kind == EdgeKind::kCitation) {
      e.from = target(e.from);
      e.to = target(e.to);
    } else if (e.kind == EdgeKind::kAuthorship) {
      e.to = target(e.to);
    }
  }

  // Repointing can leave duplicate citation/authorship edges; fold them,
  // unioning citation contexts.
  std::map<std::tuple<EdgeKind, std::string, std::string>, std::size_t> seen;
  std::vector<Edge> folded;
  for (auto& e : edges) {
    if (e.kind != EdgeKind::kCitation && e.kind != EdgeKind::kAuthorship) {
      folded.push_back(std::move(e));
      continue;
    }
    // Self-citations created by merging two versions of the same paper vanish.
    if (e.kind == EdgeKind::kCitation && e.from == e.to) continue;
    const auto key = std::make_tuple(e.kind, e.from, e.to);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen[key] = folded.size();
      folded.push_back(std::move(e));
    } else if (e.kind == EdgeKind::kCitation) {
      auto& contexts = folded[it->second].attrs.contexts;
      for (auto& c : e.attrs.contexts)
        if (std::find(contexts.begin(), contexts.end(), c) == contexts.end())
          contexts.push_back(std::move(c));
    }
  }
  edges = std::move(folded);

  for (auto& [id, m] : DedupAccess::mentions(graph)) m.paper_id = target(m.paper_id);

  DedupAccess::rebuild(graph);
  return report;
}

}  // namespace litgraph::graph
