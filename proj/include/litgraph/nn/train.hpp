#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "litgraph/nn/tagger.hpp"
#include "litgraph/rng.hpp"

namespace litgraph::nn {

struct TrainConfig {
  int epochs = 10;
  double learning_rate = 0.1;
  std::uint64_t seed = 0;
  int batch_size = 1;
  double clip_norm = 5.0;  // global gradient norm clip
};

// Applies one SGD step: params -= lr * grads, with the gradient rescaled when
// its global norm (over trainable tensors) exceeds clip_norm. Frozen tensors
// are never touched.
template <typename S>
void sgd_apply(std::vector<TensorRef<S>> params, std::vector<TensorRef<S>> grads, double lr,
               double clip_norm) {
  if (params.size() != grads.size()) throw DimensionError("sgd: parameter/gradient mismatch");
  double sq = 0;
  for (std::size_t t = 0; t < grads.size(); ++t) {
    if (!params[t].trainable) continue;
    for (Eigen::Index i = 0; i < grads[t].size(); ++i) sq += double(grads[t].data[i]) * double(grads[t].data[i]);
  }
  const double norm = std::sqrt(sq);
  const double scale = (clip_norm > 0 && norm > clip_norm) ? clip_norm / norm : 1.0;
  for (std::size_t t = 0; t < params.size(); ++t) {
    if (!params[t].trainable) continue;
    if (params[t].size() != grads[t].size()) throw DimensionError("sgd: tensor shape mismatch");
    for (Eigen::Index i = 0; i < params[t].size(); ++i)
      params[t].data[i] -= static_cast<S>(lr * scale * double(grads[t].data[i]));
  }
}

// Plain SGD over the dataset. Deterministic given the seed; returns the summed
// loss per epoch (computed on the fly as batches are visited).
template <typename S>
std::vector<S> train(TaggerParams<S>& model, const std::vector<SequenceExample<S>>& dataset,
                     const TrainConfig& config) {
  if (dataset.empty()) throw Error("train: empty dataset");
  Rng rng(config.seed);
  std::vector<S> epoch_loss;
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  const int batch = std::max(1, config.batch_size);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    S total = 0;
    for (std::size_t b = 0; b < order.size(); b += batch) {
      TaggerParams<S> grads = TaggerParams<S>::zeros_like(model);
      const std::size_t count = std::min(order.size(), b + batch) - b;
      for (std::size_t i = b; i < b + count; ++i)
        total += tagger_nll_accumulate(model, dataset[order[i]], grads);
      // The applied gradient is the batch mean; clipping then behaves the
      // same across batch sizes.
      for (auto& t : grads.tensor_refs())
        for (Eigen::Index j = 0; j < t.size(); ++j) t.data[j] /= static_cast<S>(count);
      sgd_apply(model.tensor_refs(), grads.tensor_refs(), config.learning_rate, config.clip_norm);
    }
    if (!std::isfinite(double(total))) throw NumericalError("train: non-finite epoch loss");
    epoch_loss.push_back(total);
  }
  return epoch_loss;
}

}  // namespace litgraph::nn
