#pragma once

#include <cmath>

#include "litgraph/nn/functions.hpp"
#include "litgraph/nn/types.hpp"

namespace litgraph::nn {

// Affine map y = W x + b. With use_bias=false it is a plain linear map
// (the input projection of the metadata tagger has no bias term).
template <typename S>
struct Dense {
  Mat<S> weight;  // out x in
  Vec<S> bias;    // out, empty when use_bias == false
  bool use_bias = true;

  Dense() = default;
  Dense(Eigen::Index out, Eigen::Index in, Rng& rng, bool with_bias = true)
      : weight(out, in), use_bias(with_bias) {
    init_uniform(weight, rng, static_cast<S>(std::sqrt(3.0 / double(in))));
    if (use_bias) {
      bias = Vec<S>::Zero(out);
    }
  }

  bool empty() const { return weight.size() == 0; }
  Eigen::Index in_dim() const { return weight.cols(); }
  Eigen::Index out_dim() const { return weight.rows(); }

  // Columns of x are examples.
  Mat<S> forward(const Mat<S>& x) const {
    if (x.rows() != in_dim())
      throw DimensionError("dense: input has " + std::to_string(x.rows()) +
                           " rows, expected " + std::to_string(in_dim()));
    Mat<S> y = weight * x;
    if (use_bias) y.colwise() += bias;
    return y;
  }

  // Accumulates parameter gradients into grad and returns dL/dx.
  Mat<S> backward(const Mat<S>& x, const Mat<S>& dy, Dense<S>& grad) const {
    grad.weight.noalias() += dy * x.transpose();
    if (use_bias) grad.bias.noalias() += dy.rowwise().sum();
    return weight.transpose() * dy;
  }

  static Dense<S> zeros_like(const Dense<S>& other) {
    Dense<S> g;
    g.weight = Mat<S>::Zero(other.weight.rows(), other.weight.cols());
    g.use_bias = other.use_bias;
    if (other.use_bias) g.bias = Vec<S>::Zero(other.bias.size());
    return g;
  }
};

}  // namespace litgraph::nn
