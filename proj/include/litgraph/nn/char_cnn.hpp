#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "litgraph/error.hpp"
#include "litgraph/nn/functions.hpp"
#include "litgraph/nn/types.hpp"

namespace litgraph::nn {

// Character CNN over token bytes: width-3 convolution, max-pooled over all
// window positions. Tokens shorter than 3 characters are padded on the right
// with a reserved pad character so 1-2 character tokens stay well-defined.
template <typename S>
struct CharCnnParams {
  static constexpr Eigen::Index kFilterWidth = 3;
  static constexpr Eigen::Index kPadRow = 0;  // rows 1..256 are byte values

  Mat<S> char_vectors;  // 257 x d_char
  Mat<S> filters;       // n_filters x (3 * d_char)
  Vec<S> bias;          // n_filters

  CharCnnParams() = default;
  CharCnnParams(Eigen::Index n_filters, Eigen::Index char_dim, Rng& rng)
      : char_vectors(257, char_dim), filters(n_filters, kFilterWidth * char_dim), bias(Vec<S>::Zero(n_filters)) {
    init_uniform(char_vectors, rng, S(0.5));
    init_uniform(filters, rng, static_cast<S>(std::sqrt(3.0 / double(kFilterWidth * char_dim))));
  }

  bool empty() const { return filters.size() == 0; }
  Eigen::Index out_dim() const { return filters.rows(); }
  Eigen::Index char_dim() const { return char_vectors.cols(); }

  static CharCnnParams<S> zeros_like(const CharCnnParams<S>& o) {
    CharCnnParams<S> g;
    g.char_vectors = Mat<S>::Zero(o.char_vectors.rows(), o.char_vectors.cols());
    g.filters = Mat<S>::Zero(o.filters.rows(), o.filters.cols());
    g.bias = Vec<S>::Zero(o.bias.size());
    return g;
  }
};

template <typename S>
struct CharCnnTrace {
  std::vector<Eigen::Index> char_rows;      // padded row ids
  Mat<S> windows;                           // (3*d_char) x n_windows
  std::vector<Eigen::Index> argmax;         // winning window per filter
};

template <typename S>
std::vector<Eigen::Index> char_rows_of(const std::string& token) {
  std::vector<Eigen::Index> rows;
  rows.reserve(std::max<std::size_t>(token.size(), 3));
  for (unsigned char c : token) rows.push_back(Eigen::Index(c) + 1);
  while (rows.size() < 3) rows.push_back(CharCnnParams<S>::kPadRow);
  return rows;
}

template <typename S>
Vec<S> char_cnn_forward(const CharCnnParams<S>& p, const std::string& token, CharCnnTrace<S>* trace) {
  if (token.empty()) throw DimensionError("char_cnn: empty token");
  if (p.empty()) return Vec<S>::Zero(0);

  const auto rows = char_rows_of<S>(token);
  const Eigen::Index d = p.char_dim();
  const Eigen::Index n_windows = static_cast<Eigen::Index>(rows.size()) - 2;
  Mat<S> windows(3 * d, n_windows);
  for (Eigen::Index w = 0; w < n_windows; ++w)
    for (Eigen::Index j = 0; j < 3; ++j)
      windows.col(w).segment(j * d, d) = p.char_vectors.row(rows[w + j]).transpose();

  Mat<S> responses = p.filters * windows;  // n_filters x n_windows
  responses.colwise() += p.bias;

  Vec<S> out(p.out_dim());
  std::vector<Eigen::Index> argmax(p.out_dim());
  for (Eigen::Index f = 0; f < p.out_dim(); ++f) {
    Eigen::Index best = 0;
    for (Eigen::Index w = 1; w < n_windows; ++w)
      if (responses(f, w) > responses(f, best)) best = w;
    argmax[f] = best;
    out(f) = responses(f, best);
  }

  if (trace) {
    trace->char_rows = rows;
    trace->windows = std::move(windows);
    trace->argmax = std::move(argmax);
  }
  return out;
}

template <typename S>
Vec<S> char_cnn_encode(const CharCnnParams<S>& p, const std::string& token) {
  return char_cnn_forward(p, token, static_cast<CharCnnTrace<S>*>(nullptr));
}

// Routes dL/d output back into the filters, bias, and the character rows that
// won the max pool.
template <typename S>
void char_cnn_backward(const CharCnnParams<S>& p, const CharCnnTrace<S>& trace, const Vec<S>& d_out,
                       CharCnnParams<S>& grad) {
  const Eigen::Index d = p.char_dim();
  for (Eigen::Index f = 0; f < p.out_dim(); ++f) {
    const Eigen::Index w = trace.argmax[f];
    grad.filters.row(f).noalias() += d_out(f) * trace.windows.col(w).transpose();
    grad.bias(f) += d_out(f);
    const Vec<S> d_window = d_out(f) * p.filters.row(f).transpose();
    for (Eigen::Index j = 0; j < 3; ++j)
      grad.char_vectors.row(trace.char_rows[w + j]) += d_window.segment(j * d, d).transpose();
  }
}

}  // namespace litgraph::nn
