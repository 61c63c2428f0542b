#pragma once

#include <filesystem>
#include <fstream>
#include <vector>

#include "litgraph/jsonl.hpp"
#include "litgraph/nn/tagger.hpp"

namespace litgraph::nn {

inline constexpr int kCheckpointVersion = 1;

// Tensor checkpoints are a single JSON document:
//   {"format_version":1, "tensors":[{"name":..., "shape":[r,c], "data":[...]}]}
// plus an optional "meta" object for vocabularies and hyperparameters.
// Plain text keeps checkpoints portable and diff-able.
template <typename S>
void save_checkpoint(const std::filesystem::path& path, std::vector<TensorRef<S>> tensors,
                     const ojson& meta = nullptr) {
  ojson doc;
  doc["format_version"] = kCheckpointVersion;
  doc["tensors"] = ojson::array();
  for (const auto& t : tensors) {
    ojson entry;
    entry["name"] = t.name;
    entry["shape"] = {t.rows, t.cols};
    ojson data = ojson::array();
    for (Eigen::Index i = 0; i < t.size(); ++i) data.push_back(double(t.data[i]));
    entry["data"] = std::move(data);
    doc["tensors"].push_back(std::move(entry));
  }
  if (!meta.is_null()) doc["meta"] = meta;

  std::ofstream out(path);
  if (!out) throw Error("cannot write checkpoint: " + path.string());
  out << doc.dump(1) << '\n';
}

// Loads tensors by name into the given refs. Every ref must be present in the
// file with a matching shape; extra file tensors are an error (they indicate a
// config mismatch). Returns the "meta" object (null if absent).
template <typename S>
json load_checkpoint(const std::filesystem::path& path, std::vector<TensorRef<S>> tensors) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open checkpoint: " + path.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw Error("malformed checkpoint JSON: " + path.string());
  if (!doc.contains("format_version") || doc["format_version"].get<int>() != kCheckpointVersion)
    throw Error("unsupported checkpoint format_version in " + path.string());

  std::size_t used = 0;
  for (auto& t : tensors) {
    bool found = false;
    for (const auto& entry : doc["tensors"]) {
      if (entry["name"].get<std::string>() != t.name) continue;
      const auto shape = entry["shape"].get<std::vector<Eigen::Index>>();
      if (shape.size() != 2 || shape[0] != t.rows || shape[1] != t.cols)
        throw Error("checkpoint tensor '" + t.name + "' has wrong shape");
      const auto& data = entry["data"];
      if (static_cast<Eigen::Index>(data.size()) != t.size())
        throw Error("checkpoint tensor '" + t.name + "' has wrong element count");
      for (Eigen::Index i = 0; i < t.size(); ++i) t.data[i] = static_cast<S>(data[i].get<double>());
      found = true;
      ++used;
      break;
    }
    if (!found) throw Error("checkpoint is missing tensor '" + t.name + "'");
  }
  if (used != doc["tensors"].size())
    throw Error("checkpoint has unexpected extra tensors: " + path.string());
  return doc.contains("meta") ? doc["meta"] : json(nullptr);
}

}  // namespace litgraph::nn
