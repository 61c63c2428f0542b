#include <doctest.h>

#include <limits>

#include "litgraph/nn/char_cnn.hpp"
#include "litgraph/nn/lstm.hpp"
#include "litgraph/rng.hpp"

using namespace litgraph;
using namespace litgraph::nn;

namespace {

LstmParams<double> zero_lstm(Eigen::Index h, Eigen::Index in, Direction dir = Direction::kForward) {
  Rng rng(0);
  LstmParams<double> p(h, in, rng, dir);
  for (Mat<double>* m : {&p.w_input, &p.w_forget, &p.w_output, &p.w_cand, &p.u_input, &p.u_forget,
                         &p.u_output, &p.u_cand})
    m->setZero();
  return p;
}

}  // namespace

TEST_CASE("all-zero parameters and states give a zero hidden vector") {
  auto p = zero_lstm(3, 2);
  const auto out = lstm_step(p, Vecd(Vecd::Zero(2)), Vecd(Vecd::Zero(3)), Vecd(Vecd::Zero(3)));
  CHECK(out.hidden.isZero());
  // sigmoid(0)*tanh(0) = 0 but the cell gets f*c_prev = 0.5*0 too
  CHECK(out.cell.isZero());
}

TEST_CASE("lstm_step matches hand-computed gate equations on a 2-dim case") {
  LstmParams<double> p;
  p.w_input = (Matd(2, 2) << 0.1, -0.2, 0.3, 0.4).finished();
  p.u_input = (Matd(2, 2) << 0.05, 0.0, 0.0, -0.05).finished();
  p.b_input = (Vecd(2) << 0.01, -0.01).finished();
  p.w_forget = (Matd(2, 2) << -0.1, 0.2, 0.15, -0.25).finished();
  p.u_forget = (Matd(2, 2) << 0.02, 0.03, -0.02, 0.04).finished();
  p.b_forget = (Vecd(2) << 0.0, 0.1).finished();
  p.w_output = (Matd(2, 2) << 0.2, 0.1, -0.3, 0.05).finished();
  p.u_output = (Matd(2, 2) << 0.01, -0.01, 0.02, 0.02).finished();
  p.b_output = (Vecd(2) << -0.05, 0.05).finished();
  p.w_cand = (Matd(2, 2) << 0.3, -0.3, 0.1, 0.2).finished();
  p.u_cand = (Matd(2, 2) << 0.06, -0.04, 0.03, 0.01).finished();
  p.b_cand = (Vecd(2) << 0.02, 0.0).finished();

  const Vecd x = (Vecd(2) << 0.5, -1.0).finished();
  const Vecd h_prev = (Vecd(2) << 0.1, -0.2).finished();
  const Vecd c_prev = (Vecd(2) << 0.3, 0.4).finished();
  const auto out = lstm_step(p, x, h_prev, c_prev);

  // Frozen from an independent evaluation of the gate formulas.
  CHECK(out.cell(0) == doctest::Approx(0.3853748945446988).epsilon(1e-12));
  CHECK(out.cell(1) == doctest::Approx(0.17615728634956482).epsilon(1e-12));
  CHECK(out.hidden(0) == doctest::Approx(0.1793673082328035).epsilon(1e-12));
  CHECK(out.hidden(1) == doctest::Approx(0.08056588652305616).epsilon(1e-12));
}

TEST_CASE("lstm_step rejects non-finite input and bad shapes") {
  auto p = zero_lstm(2, 2);
  Vecd bad(2);
  bad << 1.0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(lstm_step(p, bad, Vecd(Vecd::Zero(2)), Vecd(Vecd::Zero(2))), NumericalError);
  CHECK_THROWS_AS(lstm_step(p, Vecd(Vecd::Zero(3)), Vecd(Vecd::Zero(2)), Vecd(Vecd::Zero(2))), DimensionError);
}

TEST_CASE("bilstm on one token concatenates single forward and backward steps") {
  Rng rng(3);
  LstmParams<double> fwd(3, 2, rng, Direction::kForward);
  LstmParams<double> bwd(3, 2, rng, Direction::kBackward);
  Matd inputs(2, 1);
  inputs << 0.4, -0.7;
  const Matd out = bilstm_encode(fwd, bwd, inputs);
  const auto f = lstm_step(fwd, Vecd(inputs.col(0)), Vecd(Vecd::Zero(3)), Vecd(Vecd::Zero(3)));
  const auto b = lstm_step(bwd, Vecd(inputs.col(0)), Vecd(Vecd::Zero(3)), Vecd(Vecd::Zero(3)));
  CHECK((out.col(0).head(3) - f.hidden).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((out.col(0).tail(3) - b.hidden).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("zero-parameter bilstm encodes everything to zero") {
  auto fwd = zero_lstm(2, 3);
  auto bwd = zero_lstm(2, 3, Direction::kBackward);
  Matd inputs = Matd::Random(3, 4);
  CHECK(bilstm_encode(fwd, bwd, inputs).isZero());
  CHECK_THROWS_AS(bilstm_encode(fwd, bwd, Matd(3, 0)), DimensionError);
}

TEST_CASE("backward direction equals forward run on the reversed sequence") {
  Rng rng(5);
  LstmParams<double> bwd(3, 2, rng, Direction::kBackward);
  LstmParams<double> as_fwd = bwd;
  as_fwd.direction = Direction::kForward;

  Matd inputs(2, 3);
  inputs << 0.1, -0.4, 0.9, 0.5, 0.2, -0.3;
  Matd reversed = inputs.rowwise().reverse();

  const auto b = lstm_run(bwd, inputs);
  const auto f = lstm_run(as_fwd, reversed);
  // State at position k of the backward pass equals state at reversed position.
  for (Eigen::Index k = 0; k < 3; ++k)
    CHECK((b.hidden.col(k) - f.hidden.col(2 - k)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("char-cnn with zero filters returns a zero vector") {
  Rng rng(9);
  CharCnnParams<double> p(4, 3, rng);
  p.filters.setZero();
  p.bias.setZero();
  CHECK(char_cnn_encode(p, "hello").isZero());
  CHECK_THROWS_AS(char_cnn_encode(p, ""), DimensionError);
}

TEST_CASE("one-character tokens are padded to a single width-3 window") {
  Rng rng(10);
  CharCnnParams<double> p(2, 3, rng);
  const Vecd out = char_cnn_encode(p, "a");
  // Exactly one window: [a, pad, pad]; recompute it directly.
  Vecd window(9);
  window.segment(0, 3) = p.char_vectors.row(Eigen::Index('a') + 1).transpose();
  window.segment(3, 3) = p.char_vectors.row(0).transpose();
  window.segment(6, 3) = p.char_vectors.row(0).transpose();
  const Vecd expected = p.filters * window + p.bias;
  CHECK((out - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("token 'abc' with an identity-like filter gives the hand-computed response") {
  CharCnnParams<double> p;
  p.char_vectors = Matd::Zero(257, 2);
  p.char_vectors.row(Eigen::Index('a') + 1) << 0.5, -0.3;
  p.char_vectors.row(Eigen::Index('b') + 1) << 0.2, 0.7;
  p.char_vectors.row(Eigen::Index('c') + 1) << -0.4, 0.1;
  p.filters = Matd::Zero(1, 6);
  p.filters(0, 0) = 1.0;  // first char, dim 0
  p.filters(0, 3) = 1.0;  // second char, dim 1
  p.bias = Vecd::Constant(1, 0.25);
  const Vecd out = char_cnn_encode(p, "abc");
  CHECK(out(0) == doctest::Approx(1.45).epsilon(1e-12));
}

TEST_CASE("max pooling picks the strongest window") {
  CharCnnParams<double> p;
  p.char_vectors = Matd::Zero(257, 1);
  p.char_vectors(Eigen::Index('z') + 1, 0) = 2.0;
  p.char_vectors(Eigen::Index('a') + 1, 0) = -1.0;
  p.filters = Matd::Ones(1, 3);
  p.bias = Vecd::Zero(1);
  // Windows of "azaaz": (a,z,a)=0? sums: window k = sum of the three char values.
  // (a,z,a)=0, (z,a,a)=0, (a,a,z)=0 ... use "zza": (z,z,a)=3. Compare with "aaa" = -3.
  CHECK(char_cnn_encode(p, "zza")(0) == doctest::Approx(3.0));
  CHECK(char_cnn_encode(p, "aaazz")(0) == doctest::Approx(3.0));  // best window (a,z,z)
}
