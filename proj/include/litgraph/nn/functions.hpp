#pragma once

#include <cmath>
#include <type_traits>

#include "litgraph/error.hpp"
#include "litgraph/nn/types.hpp"
#include "litgraph/rng.hpp"

namespace litgraph::nn {

template <typename S>
  requires std::is_arithmetic_v<S>
S sigmoid(S x) {
  return S(1) / (S(1) + std::exp(-x));
}

template <typename Derived>
auto sigmoid(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  return x.unaryExpr([](S v) { return sigmoid(v); }).eval();
}

// log(sum(exp(v))) over a vector expression, stable in log space. Returns
// neg_inf when every entry is (effectively) -inf.
template <typename Derived>
typename Derived::Scalar log_sum_exp(const Eigen::MatrixBase<Derived>& v) {
  using S = typename Derived::Scalar;
  const S m = v.maxCoeff();
  if (is_neg_inf(m)) return neg_inf<S>();
  return m + std::log((v.array() - m).exp().sum());
}

// Argmax with the smallest index winning ties.
template <typename Derived>
Eigen::Index argmax_lowest(const Eigen::MatrixBase<Derived>& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v(i) > v(best)) best = i;
  }
  return best;
}

template <typename Derived>
void check_finite(const Eigen::MatrixBase<Derived>& x, const char* what) {
  if (!x.allFinite()) throw NumericalError(std::string("non-finite values in ") + what);
}

// Uniform(-scale, scale) init from the project RNG.
template <typename S>
void init_uniform(Mat<S>& m, Rng& rng, S scale = S(0.1)) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      m(i, j) = static_cast<S>(rng.uniform(-double(scale), double(scale)));
}

template <typename S>
void init_uniform(Vec<S>& v, Rng& rng, S scale = S(0.1)) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = static_cast<S>(rng.uniform(-double(scale), double(scale)));
}

}  // namespace litgraph::nn
