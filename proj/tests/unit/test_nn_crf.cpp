#include <doctest.h>

#include <cmath>

#include "litgraph/nn/crf.hpp"
#include "litgraph/rng.hpp"
#include "testutil/oracles.hpp"

using namespace litgraph;
using namespace litgraph::nn;

namespace {

CrfParams<double> zero_crf(Eigen::Index n_labels) {
  CrfParams<double> crf;
  crf.transitions = Matd::Zero(n_labels + 2, n_labels + 2);
  return crf;
}

CrfParams<double> random_crf(Eigen::Index n_labels, Rng& rng) {
  CrfParams<double> crf = zero_crf(n_labels);
  init_uniform(crf.transitions, rng, 1.0);
  return crf;
}

Matd random_emissions(Eigen::Index n, Eigen::Index l, Rng& rng) {
  Matd e(n, l);
  init_uniform(e, rng, 2.0);
  return e;
}

}  // namespace

TEST_CASE("crf_score sums emissions and transitions along the path") {
  auto crf = zero_crf(3);
  Matd emissions(1, 3);
  emissions << 0.3, -1.2, 2.0;
  // N=1, zero transitions: the score is just the emission.
  CHECK(crf_score(crf, emissions, {1}) == doctest::Approx(-1.2));

  // All-zero emissions and transitions score 0 for any labeling.
  Matd zeros = Matd::Zero(4, 3);
  CHECK(crf_score(crf, zeros, {0, 2, 1, 1}) == 0.0);

  CHECK_THROWS_AS(crf_score(crf, emissions, {3}), DimensionError);
}

TEST_CASE("crf_score matches direct-summation oracle on random instances") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto crf = random_crf(3, rng);
    Matd emissions = random_emissions(3, 3, rng);
    std::vector<int> labels = {int(rng.index(3)), int(rng.index(3)), int(rng.index(3))};
    const Matd t = crf.effective_transitions();
    double expected = t(3, labels[0]) + emissions(0, labels[0]) + t(labels[0], labels[1]) +
                      emissions(1, labels[1]) + t(labels[1], labels[2]) +
                      emissions(2, labels[2]) + t(labels[2], 4);
    CHECK(crf_score(crf, emissions, labels) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("log partition of a uniform single position is log L") {
  auto crf = zero_crf(4);
  Matd emissions = Matd::Zero(1, 4);
  CHECK(crf_log_partition(crf, emissions) == doctest::Approx(1.3862943611198906).epsilon(1e-12));
}

TEST_CASE("adding a constant to one position shifts log Z by that constant") {
  Rng rng(11);
  auto crf = random_crf(3, rng);
  Matd emissions = random_emissions(4, 3, rng);
  const double base = crf_log_partition(crf, emissions);
  Matd shifted = emissions;
  shifted.row(2).array() += 0.7;
  CHECK(crf_log_partition(crf, shifted) == doctest::Approx(base + 0.7).epsilon(1e-12));
}

TEST_CASE("forward algorithm, Viterbi and marginals agree with enumeration") {
  Rng rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = 1 + Eigen::Index(rng.index(6));
    const Eigen::Index l = 2 + Eigen::Index(rng.index(3));
    auto crf = random_crf(l, rng);
    Matd emissions = random_emissions(n, l, rng);

    const auto oracle = testutil::enumerate_crf(crf, emissions);
    CHECK(crf_log_partition(crf, emissions) ==
          doctest::Approx(oracle.log_partition).epsilon(1e-11));

    const auto vit = viterbi_decode(crf, emissions);
    CHECK(vit.score == doctest::Approx(oracle.best_score).epsilon(1e-11));
    CHECK(vit.labels == oracle.best_labels);
    // max <= log-sum-exp, strictly when more than one labeling exists
    CHECK(vit.score < oracle.log_partition);

    const Matd marg = crf_marginals(crf, emissions);
    for (Eigen::Index k = 0; k < n; ++k) {
      CHECK(marg.row(k).sum() == doctest::Approx(1.0).epsilon(1e-9));
      for (Eigen::Index j = 0; j < l; ++j)
        CHECK(marg(k, j) == doctest::Approx(oracle.marginals(k, j)).epsilon(1e-9));
    }
  }
}

TEST_CASE("viterbi worked example: emissions [[1,0],[0,2]] with zero transitions") {
  auto crf = zero_crf(2);
  Matd emissions(2, 2);
  emissions << 1, 0, 0, 2;
  const auto result = viterbi_decode(crf, emissions);
  CHECK(result.labels == std::vector<int>{0, 1});
  CHECK(result.score == doctest::Approx(3.0));
}

TEST_CASE("viterbi tie-break picks the smallest label index") {
  auto crf = zero_crf(3);
  Matd emissions = Matd::Zero(4, 3);
  const auto result = viterbi_decode(crf, emissions);
  CHECK(result.labels == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("single position viterbi is argmax of emissions plus start/stop") {
  Rng rng(17);
  auto crf = random_crf(4, rng);
  Matd emissions = random_emissions(1, 4, rng);
  const auto result = viterbi_decode(crf, emissions);
  const Matd t = crf.effective_transitions();
  Vecd totals = emissions.row(0).transpose() + t.row(4).head(4).transpose() + t.col(5).head(4);
  CHECK(result.labels[0] == int(argmax_lowest(totals)));
}

TEST_CASE("forbidden transitions are never selected and infeasible lattices throw") {
  auto crf = zero_crf(2);
  crf.forbidden = CrfParams<double>::BoolMat::Constant(4, 4, false);
  // Forbid label 1 entirely: start->1 and 0->1.
  crf.forbidden(2, 1) = true;
  crf.forbidden(0, 1) = true;
  crf.forbidden(1, 1) = true;
  Matd emissions(3, 2);
  emissions << 0, 10, 0, 10, 0, 10;
  const auto result = viterbi_decode(crf, emissions);
  CHECK(result.labels == std::vector<int>{0, 0, 0});

  // Forbid everything out of start: no feasible path remains.
  crf.forbidden(2, 0) = true;
  CHECK_THROWS_AS(viterbi_decode(crf, emissions), InfeasiblePathError);
  CHECK_THROWS_AS(crf_marginals(crf, emissions), InfeasiblePathError);
}

TEST_CASE("mask isolating one path gives that path marginal 1") {
  auto crf = zero_crf(2);
  crf.forbidden = CrfParams<double>::BoolMat::Constant(4, 4, false);
  crf.forbidden(2, 1) = true;  // start -> 1
  crf.forbidden(0, 0) = true;  // 0 -> 0
  crf.forbidden(1, 0) = true;  // 1 -> 0 (so after 0 comes 1, then stuck at 1)
  crf.forbidden(1, 1) = true;
  // Only path of length 2: [0, 1].
  Matd emissions = Matd::Zero(2, 2);
  const Matd marg = crf_marginals(crf, emissions);
  CHECK(marg(0, 0) == doctest::Approx(1.0));
  CHECK(marg(1, 1) == doctest::Approx(1.0));
  CHECK(marg(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("all-zero scores give uniform marginals") {
  auto crf = zero_crf(3);
  Matd emissions = Matd::Zero(4, 3);
  const Matd marg = crf_marginals(crf, emissions);
  for (Eigen::Index k = 0; k < 4; ++k)
    for (Eigen::Index j = 0; j < 3; ++j) CHECK(marg(k, j) == doctest::Approx(1.0 / 3));
}

TEST_CASE("shift invariance: constant shift at a position changes no decode or marginal") {
  Rng rng(23);
  auto crf = random_crf(3, rng);
  Matd emissions = random_emissions(5, 3, rng);
  const auto baseline = viterbi_decode(crf, emissions);
  const Matd marg = crf_marginals(crf, emissions);
  Matd shifted = emissions;
  shifted.row(3).array() += 11.5;
  const auto after = viterbi_decode(crf, shifted);
  CHECK(after.labels == baseline.labels);
  const Matd marg2 = crf_marginals(crf, shifted);
  CHECK((marg2 - marg).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("crf_nll loss is log-partition minus gold score and nonnegative") {
  Rng rng(29);
  auto crf = random_crf(3, rng);
  Matd emissions = random_emissions(4, 3, rng);
  std::vector<int> gold = {2, 0, 1, 1};
  const auto result = crf_nll(crf, emissions, gold);
  CHECK(result.loss ==
        doctest::Approx(crf_log_partition(crf, emissions) - crf_score(crf, emissions, gold)));
  CHECK(result.loss >= 0.0);
}

TEST_CASE("gold-only feasible path has zero loss") {
  auto crf = zero_crf(2);
  crf.forbidden = CrfParams<double>::BoolMat::Constant(4, 4, false);
  crf.forbidden(2, 1) = true;
  crf.forbidden(0, 0) = true;
  crf.forbidden(1, 0) = true;
  crf.forbidden(1, 1) = true;
  Matd emissions = Matd::Zero(2, 2);
  const auto result = crf_nll(crf, emissions, {0, 1});
  CHECK(result.loss == doctest::Approx(0.0).epsilon(1e-12));
}
