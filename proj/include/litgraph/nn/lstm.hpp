#pragma once

#include <cmath>
#include <string>

#include "litgraph/error.hpp"
#include "litgraph/nn/functions.hpp"
#include "litgraph/nn/types.hpp"

namespace litgraph::nn {

enum class Direction { kForward, kBackward };

// Standard LSTM cell parameters, one weight matrix / recurrent matrix / bias
// per gate (input, forget, output, candidate).
template <typename S>
struct LstmParams {
  Mat<S> w_input, w_forget, w_output, w_cand;  // h x in
  Mat<S> u_input, u_forget, u_output, u_cand;  // h x h
  Vec<S> b_input, b_forget, b_output, b_cand;  // h
  Direction direction = Direction::kForward;

  LstmParams() = default;
  LstmParams(Eigen::Index hidden, Eigen::Index input, Rng& rng,
             Direction dir = Direction::kForward)
      : direction(dir) {
    // Fan-in-scaled uniform init; a flat scale starves stacked layers of
    // signal and makes toy-scale training impractically slow.
    auto make = [&](Mat<S>& m, Eigen::Index r, Eigen::Index c) {
      m.resize(r, c);
      init_uniform(m, rng, static_cast<S>(std::sqrt(3.0 / double(c))));
    };
    make(w_input, hidden, input);
    make(w_forget, hidden, input);
    make(w_output, hidden, input);
    make(w_cand, hidden, input);
    make(u_input, hidden, hidden);
    make(u_forget, hidden, hidden);
    make(u_output, hidden, hidden);
    make(u_cand, hidden, hidden);
    b_input = Vec<S>::Zero(hidden);
    b_forget = Vec<S>::Zero(hidden);
    b_output = Vec<S>::Zero(hidden);
    b_cand = Vec<S>::Zero(hidden);
  }

  Eigen::Index hidden_size() const { return w_input.rows(); }
  Eigen::Index input_size() const { return w_input.cols(); }

  void check_shapes() const {
    const Eigen::Index h = hidden_size(), in = input_size();
    auto expect = [](const auto& m, Eigen::Index r, Eigen::Index c, const char* name) {
      if (m.rows() != r || m.cols() != c)
        throw DimensionError(std::string("lstm: bad shape for ") + name);
    };
    expect(w_forget, h, in, "w_forget");
    expect(w_output, h, in, "w_output");
    expect(w_cand, h, in, "w_cand");
    expect(u_input, h, h, "u_input");
    expect(u_forget, h, h, "u_forget");
    expect(u_output, h, h, "u_output");
    expect(u_cand, h, h, "u_cand");
    expect(b_input, h, 1, "b_input");
    expect(b_forget, h, 1, "b_forget");
    expect(b_output, h, 1, "b_output");
    expect(b_cand, h, 1, "b_cand");
  }

  static LstmParams<S> zeros_like(const LstmParams<S>& o) {
    LstmParams<S> g;
    g.direction = o.direction;
    auto z = [](const Mat<S>& m) { return Mat<S>::Zero(m.rows(), m.cols()).eval(); };
    g.w_input = z(o.w_input);
    g.w_forget = z(o.w_forget);
    g.w_output = z(o.w_output);
    g.w_cand = z(o.w_cand);
    g.u_input = z(o.u_input);
    g.u_forget = z(o.u_forget);
    g.u_output = z(o.u_output);
    g.u_cand = z(o.u_cand);
    g.b_input = Vec<S>::Zero(o.b_input.size());
    g.b_forget = Vec<S>::Zero(o.b_forget.size());
    g.b_output = Vec<S>::Zero(o.b_output.size());
    g.b_cand = Vec<S>::Zero(o.b_cand.size());
    return g;
  }
};

template <typename S>
struct LstmState {
  Vec<S> hidden;
  Vec<S> cell;
};

// One LSTM step. Deterministic, rejects non-finite inputs and shape mismatches.
template <typename S>
LstmState<S> lstm_step(const LstmParams<S>& p, const Vec<S>& input,
                       const Vec<S>& prev_hidden, const Vec<S>& prev_cell) {
  if (input.size() != p.input_size()) throw DimensionError("lstm_step: input size mismatch");
  if (prev_hidden.size() != p.hidden_size() || prev_cell.size() != p.hidden_size())
    throw DimensionError("lstm_step: state size mismatch");
  check_finite(input, "lstm_step input");

  const Vec<S> i = sigmoid((p.w_input * input + p.u_input * prev_hidden + p.b_input).eval());
  const Vec<S> f = sigmoid((p.w_forget * input + p.u_forget * prev_hidden + p.b_forget).eval());
  const Vec<S> o = sigmoid((p.w_output * input + p.u_output * prev_hidden + p.b_output).eval());
  const Vec<S> g = (p.w_cand * input + p.u_cand * prev_hidden + p.b_cand).array().tanh();

  LstmState<S> out;
  out.cell = f.cwiseProduct(prev_cell) + i.cwiseProduct(g);
  out.hidden = o.cwiseProduct(out.cell.array().tanh().matrix());
  return out;
}

// Forward pass over a whole sequence with the per-step activations kept for
// backpropagation through time. Columns of `inputs` are positions; a backward
// direction processes them right to left but stores states per position, so
// hidden.col(k) is always the state *at* position k.
template <typename S>
struct LstmTrace {
  Mat<S> inputs;                       // in x N
  Mat<S> gate_i, gate_f, gate_o, gate_g;  // h x N
  Mat<S> cell, cell_tanh, hidden;      // h x N

  Eigen::Index length() const { return inputs.cols(); }
};

template <typename S>
LstmTrace<S> lstm_run(const LstmParams<S>& p, const Mat<S>& inputs) {
  const Eigen::Index n = inputs.cols();
  if (n == 0) throw DimensionError("lstm_run: empty sequence");
  if (inputs.rows() != p.input_size()) throw DimensionError("lstm_run: input size mismatch");
  check_finite(inputs, "lstm inputs");
  const Eigen::Index h = p.hidden_size();

  LstmTrace<S> t;
  t.inputs = inputs;
  t.gate_i.resize(h, n);
  t.gate_f.resize(h, n);
  t.gate_o.resize(h, n);
  t.gate_g.resize(h, n);
  t.cell.resize(h, n);
  t.cell_tanh.resize(h, n);
  t.hidden.resize(h, n);

  // Input contributions for the whole sequence in one product per gate.
  const Mat<S> xi = p.w_input * inputs;
  const Mat<S> xf = p.w_forget * inputs;
  const Mat<S> xo = p.w_output * inputs;
  const Mat<S> xg = p.w_cand * inputs;

  Vec<S> h_prev = Vec<S>::Zero(h);
  Vec<S> c_prev = Vec<S>::Zero(h);
  const bool fwd = p.direction == Direction::kForward;
  for (Eigen::Index step = 0; step < n; ++step) {
    const Eigen::Index k = fwd ? step : n - 1 - step;
    t.gate_i.col(k) = sigmoid((xi.col(k) + p.u_input * h_prev + p.b_input).eval());
    t.gate_f.col(k) = sigmoid((xf.col(k) + p.u_forget * h_prev + p.b_forget).eval());
    t.gate_o.col(k) = sigmoid((xo.col(k) + p.u_output * h_prev + p.b_output).eval());
    t.gate_g.col(k) = (xg.col(k) + p.u_cand * h_prev + p.b_cand).array().tanh();
    t.cell.col(k) = t.gate_f.col(k).cwiseProduct(c_prev) + t.gate_i.col(k).cwiseProduct(t.gate_g.col(k));
    t.cell_tanh.col(k) = t.cell.col(k).array().tanh();
    t.hidden.col(k) = t.gate_o.col(k).cwiseProduct(t.cell_tanh.col(k));
    h_prev = t.hidden.col(k);
    c_prev = t.cell.col(k);
  }
  return t;
}

// Backpropagation through time. d_hidden holds dL/d hidden.col(k); parameter
// gradients are accumulated into `grad`; returns dL/d inputs.
template <typename S>
Mat<S> lstm_backward(const LstmParams<S>& p, const LstmTrace<S>& t, const Mat<S>& d_hidden,
                     LstmParams<S>& grad) {
  const Eigen::Index n = t.length();
  const Eigen::Index h = p.hidden_size();
  const bool fwd = p.direction == Direction::kForward;

  Mat<S> da_i(h, n), da_f(h, n), da_o(h, n), da_g(h, n);
  Mat<S> d_inputs = Mat<S>::Zero(t.inputs.rows(), n);

  Vec<S> dh_next = Vec<S>::Zero(h);  // dL/dh flowing from the later step
  Vec<S> dc_next = Vec<S>::Zero(h);
  // Walk in reverse processing order.
  for (Eigen::Index step = n; step-- > 0;) {
    const Eigen::Index k = fwd ? step : n - 1 - step;
    const Vec<S> dh = d_hidden.col(k) + dh_next;
    const auto i = t.gate_i.col(k), f = t.gate_f.col(k), o = t.gate_o.col(k), g = t.gate_g.col(k);
    const auto ct = t.cell_tanh.col(k);

    Vec<S> dc = dc_next + (dh.cwiseProduct(o).array() * (S(1) - ct.array().square())).matrix();
    const Vec<S> do_ = dh.cwiseProduct(ct);

    // Previous-position state in processing order.
    const Eigen::Index k_prev = fwd ? k - 1 : k + 1;
    const bool has_prev = fwd ? (k_prev >= 0) : (k_prev < n);
    const Vec<S> c_prev = has_prev ? Vec<S>(t.cell.col(k_prev)) : Vec<S>(Vec<S>::Zero(h));
    const Vec<S> h_prev = has_prev ? Vec<S>(t.hidden.col(k_prev)) : Vec<S>(Vec<S>::Zero(h));

    const Vec<S> di = dc.cwiseProduct(g);
    const Vec<S> df = dc.cwiseProduct(c_prev);
    const Vec<S> dg = dc.cwiseProduct(i);

    da_i.col(k) = (di.array() * i.array() * (S(1) - i.array())).matrix();
    da_f.col(k) = (df.array() * f.array() * (S(1) - f.array())).matrix();
    da_o.col(k) = (do_.array() * o.array() * (S(1) - o.array())).matrix();
    da_g.col(k) = (dg.array() * (S(1) - g.array().square())).matrix();

    dh_next = p.u_input.transpose() * da_i.col(k) + p.u_forget.transpose() * da_f.col(k) +
              p.u_output.transpose() * da_o.col(k) + p.u_cand.transpose() * da_g.col(k);
    dc_next = dc.cwiseProduct(f);

    if (has_prev) {
      grad.u_input.noalias() += da_i.col(k) * h_prev.transpose();
      grad.u_forget.noalias() += da_f.col(k) * h_prev.transpose();
      grad.u_output.noalias() += da_o.col(k) * h_prev.transpose();
      grad.u_cand.noalias() += da_g.col(k) * h_prev.transpose();
    }
  }

  grad.w_input.noalias() += da_i * t.inputs.transpose();
  grad.w_forget.noalias() += da_f * t.inputs.transpose();
  grad.w_output.noalias() += da_o * t.inputs.transpose();
  grad.w_cand.noalias() += da_g * t.inputs.transpose();
  grad.b_input.noalias() += da_i.rowwise().sum();
  grad.b_forget.noalias() += da_f.rowwise().sum();
  grad.b_output.noalias() += da_o.rowwise().sum();
  grad.b_cand.noalias() += da_g.rowwise().sum();

  d_inputs.noalias() += p.w_input.transpose() * da_i;
  d_inputs.noalias() += p.w_forget.transpose() * da_f;
  d_inputs.noalias() += p.w_output.transpose() * da_o;
  d_inputs.noalias() += p.w_cand.transpose() * da_g;
  return d_inputs;
}

template <typename S>
struct BiLstmParams {
  LstmParams<S> fwd;
  LstmParams<S> bwd;

  BiLstmParams() = default;
  BiLstmParams(Eigen::Index hidden, Eigen::Index input, Rng& rng)
      : fwd(hidden, input, rng, Direction::kForward),
        bwd(hidden, input, rng, Direction::kBackward) {}

  Eigen::Index out_dim() const { return fwd.hidden_size() + bwd.hidden_size(); }

  static BiLstmParams<S> zeros_like(const BiLstmParams<S>& o) {
    BiLstmParams<S> g;
    g.fwd = LstmParams<S>::zeros_like(o.fwd);
    g.bwd = LstmParams<S>::zeros_like(o.bwd);
    return g;
  }
};

// output.col(k) = [forward state at k; backward state at k].
template <typename S>
Mat<S> bilstm_encode(const LstmParams<S>& fwd, const LstmParams<S>& bwd, const Mat<S>& inputs) {
  if (inputs.cols() == 0) throw DimensionError("bilstm_encode: empty sequence");
  const LstmTrace<S> f = lstm_run(fwd, inputs);
  const LstmTrace<S> b = lstm_run(bwd, inputs);
  Mat<S> out(f.hidden.rows() + b.hidden.rows(), inputs.cols());
  out.topRows(f.hidden.rows()) = f.hidden;
  out.bottomRows(b.hidden.rows()) = b.hidden;
  return out;
}

}  // namespace litgraph::nn
