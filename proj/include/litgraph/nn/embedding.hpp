#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "litgraph/error.hpp"
#include "litgraph/nn/functions.hpp"
#include "litgraph/nn/types.hpp"

namespace litgraph::nn {

// Token -> dense vector lookup. Row 0 is the reserved unknown-token row, so a
// lookup never fails. Rows are only updated by the optimizer when `trainable`.
template <typename S>
struct EmbeddingTable {
  static constexpr const char* kUnknown = "<unk>";

  std::unordered_map<std::string, Eigen::Index> vocabulary;
  Mat<S> vectors;  // V x d, row per token
  bool trainable = true;

  EmbeddingTable() = default;

  // Builds a table over the given tokens (deduplicated, insertion order) with
  // uniformly initialized rows. Row 0 is the unknown token.
  EmbeddingTable(const std::vector<std::string>& tokens, Eigen::Index dim, Rng& rng) {
    vocabulary.emplace(kUnknown, 0);
    for (const auto& t : tokens) vocabulary.emplace(t, static_cast<Eigen::Index>(vocabulary.size()));
    vectors.resize(static_cast<Eigen::Index>(vocabulary.size()), dim);
    init_uniform(vectors, rng, S(0.5));  // pretrained-vector scale
  }

  bool empty() const { return vectors.size() == 0; }
  Eigen::Index size() const { return vectors.rows(); }
  Eigen::Index dim() const { return vectors.cols(); }

  Eigen::Index id_of(const std::string& token) const {
    auto it = vocabulary.find(token);
    return it == vocabulary.end() ? 0 : it->second;
  }

  Vec<S> lookup(Eigen::Index id) const {
    if (id < 0 || id >= vectors.rows()) throw DimensionError("embedding id out of range");
    return vectors.row(id).transpose();
  }

  Vec<S> lookup(const std::string& token) const { return lookup(id_of(token)); }

  // Overwrites rows for tokens present in a pretrained text file, one line per
  // token: the token followed by `dim()` whitespace-separated decimals.
  // Unknown file tokens are ignored; vocabulary tokens absent from the file
  // keep their random rows. Returns the number of rows loaded.
  std::size_t load_pretrained(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open embeddings: " + path.string());
    std::string line;
    std::size_t line_number = 0, loaded = 0;
    while (std::getline(in, line)) {
      ++line_number;
      if (line.empty()) continue;
      std::istringstream ss(line);
      std::string token;
      ss >> token;
      auto it = vocabulary.find(token);
      if (it == vocabulary.end()) continue;
      for (Eigen::Index j = 0; j < dim(); ++j) {
        double v;
        if (!(ss >> v)) throw ParseError("embedding row too short for '" + token + "'", line_number);
        vectors(it->second, j) = static_cast<S>(v);
      }
      double extra;
      if (ss >> extra) throw ParseError("embedding row too long for '" + token + "'", line_number);
      ++loaded;
    }
    return loaded;
  }

  static EmbeddingTable<S> zeros_like(const EmbeddingTable<S>& other) {
    EmbeddingTable<S> g;
    g.vocabulary = other.vocabulary;
    g.trainable = other.trainable;
    g.vectors = Mat<S>::Zero(other.vectors.rows(), other.vectors.cols());
    return g;
  }
};

}  // namespace litgraph::nn
