#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "litgraph/error.hpp"
#include "litgraph/text.hpp"
#include "litgraph/graph/dedup.hpp"
#include "litgraph/graph/io.hpp"
#include "litgraph/graph/literature_graph.hpp"
#include "litgraph/rng.hpp"
#include "testutil/oracles.hpp"

using namespace litgraph;
using namespace litgraph::graph;

namespace {

PaperNode make_paper(const std::string& id, const std::string& title,
                     std::optional<int> year = std::nullopt) {
  PaperNode p;
  p.id = id;
  p.title = title;
  p.year = year;
  return p;
}

AuthorNode make_author(const std::string& id, const std::string& first, const std::string& last) {
  return AuthorNode{id, first, last};
}

}  // namespace

TEST_CASE("add_node stores and is idempotent for identical payloads") {
  LiteratureGraph g;
  CHECK(g.add_node(make_paper("p1", "X")) == "p1");
  CHECK(g.paper("p1") != nullptr);
  CHECK(g.paper("p1")->title == "X");

  // identical payload: second call succeeds, graph unchanged
  CHECK(g.add_node(make_paper("p1", "X")) == "p1");
  CHECK(g.papers().size() == 1);

  // same id, different payload
  CHECK_THROWS_AS(g.add_node(make_paper("p1", "Y")), ConflictError);
}

TEST_CASE("mention nodes require an existing paper and a sane span") {
  LiteratureGraph g;
  g.add_node(make_paper("p1", "A paper"));
  MentionNode m{"m1", "missing", "ILP", "", "", 0, 3, 0.9};
  CHECK_THROWS_AS(g.add_node(m), ReferenceError);
  m.paper_id = "p1";
  g.add_node(m);
  MentionNode bad_span{"m2", "p1", "x", "", "", 5, 5, 0.9};
  CHECK_THROWS_AS(g.add_node(bad_span), TypeError);
  MentionNode bad_conf{"m3", "p1", "x", "", "", 0, 1, 1.5};
  CHECK_THROWS_AS(g.add_node(bad_conf), TypeError);
}

TEST_CASE("paper year and title invariants") {
  LiteratureGraph g;
  CHECK_THROWS_AS(g.add_node(make_paper("p1", "T", 1200)), TypeError);
  CHECK_THROWS_AS(g.add_node(make_paper("p2", "???")), TypeError);
  g.add_node(make_paper("p3", "Fine", 1999));
}

TEST_CASE("add_edge updates forward and reverse adjacency") {
  LiteratureGraph g;
  g.add_node(make_paper("p1", "Paper one"));
  g.add_node(make_author("a1", "Ada", "Lovelace"));
  g.add_edge({EdgeKind::kAuthorship, "a1", "p1", {}});

  auto from_a1 = g.edges_from("a1", EdgeKind::kAuthorship);
  REQUIRE(from_a1.size() == 1);
  CHECK(from_a1[0]->to == "p1");
  auto to_p1 = g.edges_to("p1", EdgeKind::kAuthorship);
  REQUIRE(to_p1.size() == 1);
  CHECK(to_p1[0]->from == "a1");
}

TEST_CASE("citation contexts are preserved on read-back") {
  LiteratureGraph g;
  g.add_node(make_paper("p1", "Alpha"));
  g.add_node(make_paper("p2", "Beta"));
  Edge e{EdgeKind::kCitation, "p1", "p2", {}};
  e.attrs.contexts = {"as shown in [3]"};
  g.add_edge(e);
  auto edges = g.edges_from("p1", EdgeKind::kCitation);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0]->attrs.contexts == std::vector<std::string>{"as shown in [3]"});
}

TEST_CASE("edge kind mismatches and dangling endpoints are rejected") {
  LiteratureGraph g;
  g.add_node(make_paper("p1", "Alpha"));
  g.add_node(make_paper("p2", "Beta"));
  // Authorship paper->paper is a type error
  CHECK_THROWS_AS(g.add_edge({EdgeKind::kAuthorship, "p1", "p2", {}}), TypeError);
  // Dangling endpoint is a reference error
  CHECK_THROWS_AS(g.add_edge({EdgeKind::kCitation, "p1", "nowhere", {}}), ReferenceError);
}

TEST_CASE("symmetric mention relations are stored as two directed edges") {
  LiteratureGraph g;
  g.add_node(make_paper("p1", "Alpha"));
  g.add_node(MentionNode{"m1", "p1", "CRF", "", "", 0, 3, 1.0});
  g.add_node(MentionNode{"m2", "p1", "HMM", "", "", 4, 7, 1.0});
  g.add_mention_relation("m1", "m2", "synonym-of");
  CHECK(g.edges().size() == 2);
  CHECK(g.validate().empty());

  // Asymmetric relation produces a single edge and still validates.
  g.add_mention_relation("m1", "m2", "hyponym-of");
  CHECK(g.edges().size() == 3);
  CHECK(g.validate().empty());

  CHECK_THROWS_AS(g.add_mention_relation("m1", "m2", "made-up"), TypeError);
}

TEST_CASE("entity-entity edges carry provenance") {
  LiteratureGraph g;
  g.add_node(EntityNode{"e1", "CRF", {}, std::nullopt, "kb"});
  g.add_node(EntityNode{"e2", "HMM", {}, std::nullopt, "kb"});
  Edge e{EdgeKind::kEntityEntity, "e1", "e2", {}};
  e.attrs.relation_type = "related-to";
  e.attrs.provenance = "hearsay";
  CHECK_THROWS_AS(g.add_edge(e), TypeError);
  e.attrs.provenance = "kb-import";
  g.add_edge(e);
  CHECK(g.validate().empty());
}

TEST_CASE("dedup merges case-insensitive identical titles") {
  LiteratureGraph g;
  g.add_node(make_paper("p2", "Deep Learning", 2015));
  g.add_node(make_paper("p1", "deep learning", 2015));
  auto report = dedup_papers(g, 0.95);
  REQUIRE(report.size() == 1);
  CHECK(report[0].kept_id == "p1");
  CHECK(report[0].absorbed_ids == std::vector<std::string>{"p2"});
  CHECK(g.papers().size() == 1);

  // applying twice: second report is empty
  CHECK(dedup_papers(g, 0.95).empty());
}

TEST_CASE("dedup respects the similarity threshold") {
  // canonical titles of length 10 with edit distance 1: similarity 0.9
  LiteratureGraph g;
  g.add_node(make_paper("p1", "abcdefghij", 2018));
  g.add_node(make_paper("p2", "abcdefghix", 2018));
  CHECK(levenshtein_similarity("abcdefghij", "abcdefghix") == doctest::Approx(0.9));
  CHECK(dedup_papers(g, 0.95).empty());
  CHECK(g.papers().size() == 2);
  // at threshold 0.9 they do merge
  auto report = dedup_papers(g, 0.9);
  REQUIRE(report.size() == 1);
  CHECK(g.papers().size() == 1);
}

TEST_CASE("dedup requires compatible years but allows a missing year") {
  LiteratureGraph g;
  g.add_node(make_paper("p1", "Same Title", 2018));
  g.add_node(make_paper("p2", "Same Title", 2019));
  CHECK(dedup_papers(g, 0.95).empty());

  g.add_node(make_paper("p3", "Same Title"));  // no year: merges with one of them
  auto report = dedup_papers(g, 0.95);
  REQUIRE(report.size() == 1);
}

TEST_CASE("dedup re-points edges and unions source ids") {
  LiteratureGraph g;
  auto dup = make_paper("pb", "The Graph Paper", 2017);
  dup.source_ids = {{"dblp", "x1"}};
  auto kept = make_paper("pa", "the graph paper!", 2017);
  kept.source_ids = {{"mag", "77"}};
  kept.abstract = "rich";
  g.add_node(dup);
  g.add_node(kept);
  g.add_node(make_paper("pc", "Another Work", 2016));
  g.add_node(make_author("a1", "Grace", "Hopper"));
  g.add_edge({EdgeKind::kAuthorship, "a1", "pb", {}});
  g.add_edge({EdgeKind::kAuthorship, "a1", "pa", {}});
  Edge cite{EdgeKind::kCitation, "pc", "pb", {}};
  cite.attrs.contexts = {"see [2]"};
  g.add_edge(cite);

  auto report = dedup_papers(g, 0.95);
  REQUIRE(report.size() == 1);
  CHECK(report[0].kept_id == "pa");
  REQUIRE(g.paper("pa") != nullptr);
  // attribute donor is the node with more non-empty fields (pa has abstract)
  CHECK(g.paper("pa")->abstract == "rich");
  CHECK(g.paper("pa")->source_ids ==
        std::vector<std::pair<std::string, std::string>>{{"dblp", "x1"}, {"mag", "77"}});

  // authorship edges folded into one, citation re-pointed
  CHECK(g.edges_from("a1", EdgeKind::kAuthorship).size() == 1);
  auto cites = g.edges_from("pc", EdgeKind::kCitation);
  REQUIRE(cites.size() == 1);
  CHECK(cites[0]->to == "pa");
  CHECK(g.validate().empty());
}

TEST_CASE("dedup is idempotent and input-order independent on random paper sets") {
  Rng rng(2024);
  const std::vector<std::string> stems = {"graph mining", "entity linking", "neural parsing",
                                          "author names", "citation analysis"};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PaperNode> papers;
    const int n = 5 + int(rng.index(45));
    for (int i = 0; i < n; ++i) {
      std::string title = stems[rng.index(stems.size())];
      if (rng.uniform() < 0.5) title += " " + std::to_string(rng.index(3));
      if (rng.uniform() < 0.3) title[0] = char(std::toupper(title[0]));
      PaperNode p = make_paper("p" + std::to_string(i), title);
      if (rng.uniform() < 0.7) p.year = 2015 + int(rng.index(3));
      papers.push_back(p);
    }

    LiteratureGraph g1, g2;
    for (const auto& p : papers) g1.add_node(p);
    auto reversed = papers;
    std::reverse(reversed.begin(), reversed.end());
    for (const auto& p : reversed) g2.add_node(p);

    auto r1 = dedup_papers(g1, 0.92);
    auto r2 = dedup_papers(g2, 0.92);
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
      CHECK(r1[i].kept_id == r2[i].kept_id);
      CHECK(r1[i].absorbed_ids == r2[i].absorbed_ids);
    }
    CHECK(dedup_papers(g1, 0.92).empty());
    CHECK(g1.validate().empty());
  }
}

TEST_CASE("collaboration distance basics") {
  LiteratureGraph g;
  g.add_node(make_paper("p1", "Joint work"));
  g.add_node(make_author("a1", "A", "One"));
  g.add_node(make_author("a2", "B", "Two"));
  g.add_edge({EdgeKind::kAuthorship, "a1", "p1", {}});
  g.add_edge({EdgeKind::kAuthorship, "a2", "p1", {}});

  CHECK(g.collaboration_distance("a1", "a1") == 0);
  CHECK(g.collaboration_distance("a1", "a2") == 1);
  CHECK_THROWS_AS(g.collaboration_distance("a1", "ghost"), ReferenceError);

  g.add_node(make_author("a3", "C", "Three"));
  CHECK(g.collaboration_distance("a1", "a3") == std::nullopt);
}

TEST_CASE("collaboration distance matches the BFS oracle on random graphs") {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const int n_authors = 2 + int(rng.index(12));
    const int n_papers = 1 + int(rng.index(14));
    LiteratureGraph g;
    for (int i = 0; i < n_authors; ++i)
      g.add_node(make_author("a" + std::to_string(i), "F", "L" + std::to_string(i)));
    for (int i = 0; i < n_papers; ++i) g.add_node(make_paper("p" + std::to_string(i), "Title " + std::to_string(i)));

    std::vector<std::pair<std::string, std::string>> authorships;
    const int n_edges = int(rng.index(std::size_t(2 * (n_authors + n_papers))));
    for (int i = 0; i < n_edges; ++i) {
      std::string a = "a" + std::to_string(rng.index(n_authors));
      std::string p = "p" + std::to_string(rng.index(n_papers));
      bool dup = false;
      for (auto& e : authorships) dup |= (e.first == a && e.second == p);
      if (dup) continue;
      authorships.emplace_back(a, p);
      g.add_edge({EdgeKind::kAuthorship, a, p, {}});
    }

    const std::string from = "a" + std::to_string(rng.index(n_authors));
    const std::string to = "a" + std::to_string(rng.index(n_authors));
    const int oracle = testutil::bfs_collaboration_oracle(authorships, from, to);
    const auto got = g.collaboration_distance(from, to);
    if (oracle < 0)
      CHECK(got == std::nullopt);
    else
      CHECK(got == oracle);
  }
}

TEST_CASE("export/import round-trips a graph with every node and edge kind") {
  LiteratureGraph g;
  auto p1 = make_paper("p1", "A Study of Things", 2018);
  p1.abstract = "We study things.";
  p1.venues = {"TestConf"};
  p1.source_ids = {{"arxiv", "1801.0001"}};
  g.add_node(p1);
  g.add_node(make_paper("p2", "Another Study", 2017));
  g.add_node(make_author("a1", "Ada", "Lovelace"));
  EntityNode ent{"e1", "Conditional Random Field", {"CRF", "conditional random field"}, "A model.", "dbpedia"};
  g.add_node(ent);
  g.add_node(EntityNode{"e2", "Hidden Markov Model", {"HMM"}, std::nullopt, "dbpedia"});
  g.add_node(MentionNode{"m1", "p1", "CRF", "a ", " model", 10, 13, 0.75});
  g.add_node(MentionNode{"m2", "p1", "HMM", "the ", "", 20, 23, 0.5});

  Edge cite{EdgeKind::kCitation, "p1", "p2", {}};
  cite.attrs.contexts = {"compared to [1]", "like [1]"};
  g.add_edge(cite);
  g.add_edge({EdgeKind::kAuthorship, "a1", "p1", {}});
  g.add_edge({EdgeKind::kEntityLinking, "m1", "e1", {}});
  g.add_mention_relation("m1", "m2", "synonym-of");
  Edge ee{EdgeKind::kEntityEntity, "e1", "e2", {}};
  ee.attrs.relation_type = "related-to";
  ee.attrs.provenance = "kb-import";
  g.add_edge(ee);

  const auto dir = std::filesystem::temp_directory_path() / "litgraph_io_test";
  std::filesystem::create_directories(dir);
  export_graph(g, dir / "nodes.jsonl", dir / "edges.jsonl");
  LiteratureGraph g2 = import_graph(dir / "nodes.jsonl", dir / "edges.jsonl");

  CHECK(g2.papers() == g.papers());
  CHECK(g2.authors() == g.authors());
  CHECK(g2.entities() == g.entities());
  CHECK(g2.mentions() == g.mentions());
  CHECK(g2.validate().empty());

  // Byte-identical re-export (exported edges are sorted).
  export_graph(g2, dir / "nodes2.jsonl", dir / "edges2.jsonl");
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  };
  CHECK(slurp(dir / "nodes.jsonl") == slurp(dir / "nodes2.jsonl"));
  CHECK(slurp(dir / "edges.jsonl") == slurp(dir / "edges2.jsonl"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("empty graph round-trips to an empty graph") {
  const auto dir = std::filesystem::temp_directory_path() / "litgraph_io_empty";
  std::filesystem::create_directories(dir);
  LiteratureGraph g;
  export_graph(g, dir / "nodes.jsonl", dir / "edges.jsonl");
  LiteratureGraph g2 = import_graph(dir / "nodes.jsonl", dir / "edges.jsonl");
  CHECK(g2.papers().empty());
  CHECK(g2.edges().empty());
  std::filesystem::remove_all(dir);
}

TEST_CASE("malformed records fail with the line number") {
  const auto dir = std::filesystem::temp_directory_path() / "litgraph_io_bad";
  std::filesystem::create_directories(dir);
  {
    std::ofstream nodes(dir / "nodes.jsonl");
    nodes << R"({"kind":"paper","id":"p1","title":"Fine"})" << "\n";
    nodes << R"({"kind":"paper","id":"p2")" << "\n";  // truncated
    std::ofstream edges(dir / "edges.jsonl");
  }
  try {
    import_graph(dir / "nodes.jsonl", dir / "edges.jsonl");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line_number == 2);
  }

  {
    std::ofstream nodes(dir / "nodes.jsonl");
    nodes << R"({"kind":"paper","id":"p1","title":"Fine"})" << "\n";
    std::ofstream edges(dir / "edges.jsonl");
    edges << R"({"kind":"citation","from":"p1"})" << "\n";  // truncated edge record
  }
  try {
    import_graph(dir / "nodes.jsonl", dir / "edges.jsonl");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line_number == 1);
  }
  std::filesystem::remove_all(dir);
}
