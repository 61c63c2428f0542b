#pragma once

#include <Eigen/Core>

namespace litgraph::nn {

template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <typename S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

// Default scalar for training and tests. Inference kernels are templated and
// can be instantiated at float when memory matters.
using Scalar = double;
using Matd = Mat<Scalar>;
using Vecd = Vec<Scalar>;

// Stand-in for -inf in log space. exp() underflows to exactly 0 in both float
// and double, which keeps log-sum-exp arithmetic free of NaNs.
template <typename S>
constexpr S neg_inf() {
  return S(-1e30);
}

template <typename S>
constexpr bool is_neg_inf(S x) {
  return x <= S(-1e29);
}

}  // namespace litgraph::nn
