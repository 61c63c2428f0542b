#pragma once

#include <vector>

#include "litgraph/nn/dense.hpp"
#include "litgraph/nn/functions.hpp"
#include "litgraph/nn/types.hpp"

namespace litgraph::nn {

// Linear-chain CRF head: a dense emission layer mapping the encoder's final
// hidden state to per-label scores, plus a label-bigram transition matrix with
// two virtual labels (start = L, stop = L+1). Forbidden transitions score
// -inf and are never selected by Viterbi.
template <typename S>
struct CrfParams {
  using BoolMat = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

  Dense<S> emission;    // hidden -> L
  Mat<S> transitions;   // (L+2) x (L+2)
  BoolMat forbidden;    // same shape; empty means nothing is forbidden

  CrfParams() = default;
  CrfParams(Eigen::Index hidden, Eigen::Index n_labels, Rng& rng)
      : emission(n_labels, hidden, rng), transitions(n_labels + 2, n_labels + 2) {
    init_uniform(transitions, rng);
  }

  Eigen::Index num_labels() const { return transitions.rows() - 2; }
  Eigen::Index start_index() const { return num_labels(); }
  Eigen::Index stop_index() const { return num_labels() + 1; }

  bool is_forbidden(Eigen::Index from, Eigen::Index to) const {
    return forbidden.size() != 0 && forbidden(from, to);
  }

  // Transition scores with the mask applied.
  Mat<S> effective_transitions() const {
    Mat<S> t = transitions;
    if (forbidden.size() != 0) t = forbidden.select(Mat<S>::Constant(t.rows(), t.cols(), neg_inf<S>()), t);
    return t;
  }

  static CrfParams<S> zeros_like(const CrfParams<S>& o) {
    CrfParams<S> g;
    g.emission = Dense<S>::zeros_like(o.emission);
    g.transitions = Mat<S>::Zero(o.transitions.rows(), o.transitions.cols());
    g.forbidden = o.forbidden;
    return g;
  }
};

namespace detail {
template <typename S>
void check_emissions(const CrfParams<S>& crf, const Mat<S>& emissions) {
  if (emissions.rows() < 1) throw DimensionError("crf: empty sequence");
  if (emissions.cols() != crf.num_labels())
    throw DimensionError("crf: emissions have " + std::to_string(emissions.cols()) +
                         " labels, transition table expects " + std::to_string(crf.num_labels()));
}
}  // namespace detail

// Path score: T[start,y0] + sum_k emissions[k,yk] + sum_k T[yk,yk+1] + T[yN-1,stop].
template <typename S>
S crf_score(const CrfParams<S>& crf, const Mat<S>& emissions, const std::vector<int>& labels) {
  detail::check_emissions(crf, emissions);
  if (static_cast<Eigen::Index>(labels.size()) != emissions.rows())
    throw DimensionError("crf_score: label sequence length mismatch");
  for (int y : labels)
    if (y < 0 || y >= crf.num_labels()) throw DimensionError("crf_score: label out of range");

  const Mat<S> t = crf.effective_transitions();
  S score = t(crf.start_index(), labels.front());
  for (Eigen::Index k = 0; k < emissions.rows(); ++k) {
    score += emissions(k, labels[k]);
    if (k + 1 < emissions.rows()) score += t(labels[k], labels[k + 1]);
  }
  score += t(labels.back(), crf.stop_index());
  return score;
}

// Forward algorithm in log space: alpha(k, j) = log sum over all prefixes
// ending in label j at position k.
template <typename S>
Mat<S> crf_forward(const CrfParams<S>& crf, const Mat<S>& emissions, const Mat<S>& t) {
  const Eigen::Index n = emissions.rows(), l = crf.num_labels();
  Mat<S> alpha(n, l);
  alpha.row(0) = t.row(crf.start_index()).head(l) + emissions.row(0);
  for (Eigen::Index k = 1; k < n; ++k)
    for (Eigen::Index j = 0; j < l; ++j)
      alpha(k, j) = emissions(k, j) +
                    log_sum_exp((alpha.row(k - 1).transpose() + t.col(j).head(l)).eval());
  return alpha;
}

template <typename S>
Mat<S> crf_backward_lattice(const CrfParams<S>& crf, const Mat<S>& emissions, const Mat<S>& t) {
  const Eigen::Index n = emissions.rows(), l = crf.num_labels();
  Mat<S> beta(n, l);
  beta.row(n - 1) = t.col(crf.stop_index()).head(l).transpose();
  for (Eigen::Index k = n - 2; k >= 0; --k)
    for (Eigen::Index i = 0; i < l; ++i)
      beta(k, i) = log_sum_exp(
          (t.row(i).head(l).transpose() + emissions.row(k + 1).transpose() + beta.row(k + 1).transpose()).eval());
  return beta;
}

// log of the partition function (normalizer over all L^N labelings).
template <typename S>
S crf_log_partition(const CrfParams<S>& crf, const Mat<S>& emissions) {
  detail::check_emissions(crf, emissions);
  const Mat<S> t = crf.effective_transitions();
  const Mat<S> alpha = crf_forward(crf, emissions, t);
  const Eigen::Index n = emissions.rows(), l = crf.num_labels();
  return log_sum_exp((alpha.row(n - 1).transpose() + t.col(crf.stop_index()).head(l)).eval());
}

template <typename S>
struct ViterbiResult {
  std::vector<int> labels;
  S score;
};

// Maximum-score labeling. Ties are broken toward the smallest label index at
// every backtrack step, so decoding is deterministic.
template <typename S>
ViterbiResult<S> viterbi_decode(const CrfParams<S>& crf, const Mat<S>& emissions) {
  detail::check_emissions(crf, emissions);
  const Mat<S> t = crf.effective_transitions();
  const Eigen::Index n = emissions.rows(), l = crf.num_labels();

  Mat<S> v(n, l);
  Eigen::Matrix<Eigen::Index, Eigen::Dynamic, Eigen::Dynamic> back(n, l);
  v.row(0) = t.row(crf.start_index()).head(l) + emissions.row(0);
  for (Eigen::Index k = 1; k < n; ++k) {
    for (Eigen::Index j = 0; j < l; ++j) {
      Eigen::Index best = 0;
      S best_score = v(k - 1, 0) + t(0, j);
      for (Eigen::Index i = 1; i < l; ++i) {
        const S s = v(k - 1, i) + t(i, j);
        if (s > best_score) {
          best_score = s;
          best = i;
        }
      }
      v(k, j) = best_score + emissions(k, j);
      back(k, j) = best;
    }
  }

  Eigen::Index best = 0;
  S best_final = v(n - 1, 0) + t(0, crf.stop_index());
  for (Eigen::Index j = 1; j < l; ++j) {
    const S s = v(n - 1, j) + t(j, crf.stop_index());
    if (s > best_final) {
      best_final = s;
      best = j;
    }
  }
  if (is_neg_inf(best_final)) throw InfeasiblePathError("viterbi: every label path is forbidden");

  ViterbiResult<S> result;
  result.labels.assign(n, 0);
  result.labels[n - 1] = static_cast<int>(best);
  for (Eigen::Index k = n - 1; k > 0; --k)
    result.labels[k - 1] = static_cast<int>(back(k, result.labels[k]));
  // Recompute through crf_score so the reported score is bitwise consistent
  // with the score contract regardless of the DP's summation order.
  result.score = crf_score(crf, emissions, result.labels);
  return result;
}

// Per-position label posteriors; each row sums to 1.
template <typename S>
Mat<S> crf_marginals(const CrfParams<S>& crf, const Mat<S>& emissions) {
  detail::check_emissions(crf, emissions);
  const Mat<S> t = crf.effective_transitions();
  const Mat<S> alpha = crf_forward(crf, emissions, t);
  const Mat<S> beta = crf_backward_lattice(crf, emissions, t);
  const Eigen::Index n = emissions.rows(), l = crf.num_labels();
  const S log_z = log_sum_exp((alpha.row(n - 1).transpose() + t.col(crf.stop_index()).head(l)).eval());
  if (is_neg_inf(log_z)) throw InfeasiblePathError("crf_marginals: every label path is forbidden");
  return ((alpha + beta).array() - log_z).exp();
}

template <typename S>
struct CrfLossGrads {
  S loss;            // log Z - gold score, always >= 0
  S log_partition;
  Mat<S> d_emissions;   // marginals - onehot(gold)
  Mat<S> d_transitions; // expected - observed bigram counts, (L+2)^2
};

// Negative log-likelihood of the gold labeling and its exact gradients.
template <typename S>
CrfLossGrads<S> crf_nll(const CrfParams<S>& crf, const Mat<S>& emissions, const std::vector<int>& gold) {
  detail::check_emissions(crf, emissions);
  const Mat<S> t = crf.effective_transitions();
  const Eigen::Index n = emissions.rows(), l = crf.num_labels();

  const S gold_score = crf_score(crf, emissions, gold);
  if (is_neg_inf(gold_score))
    throw NumericalError("crf_nll: gold labeling uses a forbidden transition");

  const Mat<S> alpha = crf_forward(crf, emissions, t);
  const Mat<S> beta = crf_backward_lattice(crf, emissions, t);
  const S log_z = log_sum_exp((alpha.row(n - 1).transpose() + t.col(crf.stop_index()).head(l)).eval());

  CrfLossGrads<S> out;
  out.log_partition = log_z;
  out.loss = log_z - gold_score;
  if (!std::isfinite(out.loss)) throw NumericalError("crf_nll: non-finite loss");

  out.d_emissions = ((alpha + beta).array() - log_z).exp();
  for (Eigen::Index k = 0; k < n; ++k) out.d_emissions(k, gold[k]) -= S(1);

  out.d_transitions = Mat<S>::Zero(l + 2, l + 2);
  // Start and stop bigrams: expected count is the unary marginal at the ends.
  const Mat<S> unary = ((alpha + beta).array() - log_z).exp();
  for (Eigen::Index j = 0; j < l; ++j) {
    out.d_transitions(crf.start_index(), j) += unary(0, j);
    out.d_transitions(j, crf.stop_index()) += unary(n - 1, j);
  }
  // Interior bigrams via pairwise posteriors.
  for (Eigen::Index k = 0; k + 1 < n; ++k)
    for (Eigen::Index i = 0; i < l; ++i) {
      if (is_neg_inf(alpha(k, i))) continue;
      for (Eigen::Index j = 0; j < l; ++j) {
        const S lp = alpha(k, i) + t(i, j) + emissions(k + 1, j) + beta(k + 1, j) - log_z;
        if (is_neg_inf(lp)) continue;
        out.d_transitions(i, j) += std::exp(lp);
      }
    }
  // Observed counts.
  out.d_transitions(crf.start_index(), gold.front()) -= S(1);
  out.d_transitions(gold.back(), crf.stop_index()) -= S(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) out.d_transitions(gold[k], gold[k + 1]) -= S(1);

  // Forbidden entries stay put no matter what.
  if (crf.forbidden.size() != 0)
    out.d_transitions = crf.forbidden.select(Mat<S>::Zero(l + 2, l + 2), out.d_transitions);
  return out;
}

}  // namespace litgraph::nn
