#pragma once

#include <string>
#include <vector>

#include "litgraph/nn/char_cnn.hpp"
#include "litgraph/nn/crf.hpp"
#include "litgraph/nn/dense.hpp"
#include "litgraph/nn/embedding.hpp"
#include "litgraph/nn/lstm.hpp"

namespace litgraph::nn {

// Flat named view of one parameter tensor; Eigen storage is contiguous
// column-major, so (data, rows, cols) is enough for SGD, checkpointing and
// finite-difference checks.
template <typename S>
struct TensorRef {
  std::string name;
  S* data;
  Eigen::Index rows, cols;
  bool trainable;
  Eigen::Index size() const { return rows * cols; }
};

template <typename S>
void append_tensor(std::vector<TensorRef<S>>& out, const std::string& name, Mat<S>& m,
                   bool trainable = true) {
  if (m.size() != 0) out.push_back({name, m.data(), m.rows(), m.cols(), trainable});
}

template <typename S>
void append_tensor(std::vector<TensorRef<S>>& out, const std::string& name, Vec<S>& v,
                   bool trainable = true) {
  if (v.size() != 0) out.push_back({name, v.data(), v.size(), 1, trainable});
}

template <typename S>
void append_lstm_tensors(std::vector<TensorRef<S>>& out, const std::string& prefix, LstmParams<S>& p) {
  append_tensor(out, prefix + ".w_input", p.w_input);
  append_tensor(out, prefix + ".w_forget", p.w_forget);
  append_tensor(out, prefix + ".w_output", p.w_output);
  append_tensor(out, prefix + ".w_cand", p.w_cand);
  append_tensor(out, prefix + ".u_input", p.u_input);
  append_tensor(out, prefix + ".u_forget", p.u_forget);
  append_tensor(out, prefix + ".u_output", p.u_output);
  append_tensor(out, prefix + ".u_cand", p.u_cand);
  append_tensor(out, prefix + ".b_input", p.b_input);
  append_tensor(out, prefix + ".b_forget", p.b_forget);
  append_tensor(out, prefix + ".b_output", p.b_output);
  append_tensor(out, prefix + ".b_cand", p.b_cand);
}

// One token of model input. Which fields are read is decided by the model:
// parts are assembled in the fixed order [numeric | font | char-cnn | word].
template <typename S>
struct TokenInput {
  Vec<S> numeric;
  Eigen::Index font_id = -1;
  Eigen::Index word_id = -1;
  std::string text;
};

template <typename S>
struct SequenceExample {
  std::vector<TokenInput<S>> tokens;
  Mat<S> aux;               // aux_dim x N context vectors (e.g. LM embeddings); may be empty
  std::vector<int> labels;  // gold labels; may be empty at inference
};

// CRF-topped BiLSTM tagger over assembled token vectors. Covers both
// configurations used in this project:
//   - metadata: numeric features + font embedding + word embedding, linear
//     input projection, 2 BiLSTM layers;
//   - entities: char-CNN + word embedding, 2 BiLSTM layers with frozen LM
//     vectors concatenated into the second layer's input.
template <typename S>
struct TaggerParams {
  Eigen::Index numeric_dim = 0;
  EmbeddingTable<S> word;
  EmbeddingTable<S> font;
  CharCnnParams<S> chars;
  Dense<S> input_proj;                 // bias-free when present
  std::vector<BiLstmParams<S>> layers;
  Eigen::Index aux_dim = 0;            // concatenated into layer 1's input when > 0
  CrfParams<S> crf;

  Eigen::Index assembled_dim() const {
    Eigen::Index d = numeric_dim;
    if (!font.empty()) d += font.dim();
    if (!chars.empty()) d += chars.out_dim();
    if (!word.empty()) d += word.dim();
    return d;
  }

  std::vector<TensorRef<S>> tensor_refs() {
    std::vector<TensorRef<S>> out;
    append_tensor(out, "word.vectors", word.vectors, word.trainable);
    append_tensor(out, "font.vectors", font.vectors, font.trainable);
    append_tensor(out, "chars.char_vectors", chars.char_vectors);
    append_tensor(out, "chars.filters", chars.filters);
    append_tensor(out, "chars.bias", chars.bias);
    append_tensor(out, "input_proj.weight", input_proj.weight);
    append_tensor(out, "input_proj.bias", input_proj.bias);
    for (std::size_t i = 0; i < layers.size(); ++i) {
      append_lstm_tensors(out, "layer" + std::to_string(i) + ".fwd", layers[i].fwd);
      append_lstm_tensors(out, "layer" + std::to_string(i) + ".bwd", layers[i].bwd);
    }
    append_tensor(out, "crf.emission.weight", crf.emission.weight);
    append_tensor(out, "crf.emission.bias", crf.emission.bias);
    append_tensor(out, "crf.transitions", crf.transitions);
    return out;
  }

  static TaggerParams<S> zeros_like(const TaggerParams<S>& o) {
    TaggerParams<S> g;
    g.numeric_dim = o.numeric_dim;
    g.word = EmbeddingTable<S>::zeros_like(o.word);
    g.font = EmbeddingTable<S>::zeros_like(o.font);
    g.chars = CharCnnParams<S>::zeros_like(o.chars);
    g.input_proj = Dense<S>::zeros_like(o.input_proj);
    g.layers.reserve(o.layers.size());
    for (const auto& l : o.layers) g.layers.push_back(BiLstmParams<S>::zeros_like(l));
    g.aux_dim = o.aux_dim;
    g.crf = CrfParams<S>::zeros_like(o.crf);
    return g;
  }
};

template <typename S>
struct TaggerTrace {
  Mat<S> assembled;  // in_dim x N
  std::vector<CharCnnTrace<S>> char_traces;
  std::vector<Mat<S>> layer_inputs;  // matrix actually fed to each BiLSTM layer
  std::vector<LstmTrace<S>> fwd_traces, bwd_traces;
  Mat<S> top;        // 2h x N
  Mat<S> emissions;  // N x L
};

template <typename S>
Mat<S> assemble_inputs(const TaggerParams<S>& p, const SequenceExample<S>& ex,
                       std::vector<CharCnnTrace<S>>* char_traces) {
  const Eigen::Index n = static_cast<Eigen::Index>(ex.tokens.size());
  if (n == 0) throw DimensionError("tagger: empty sequence");
  Mat<S> x(p.assembled_dim(), n);
  if (char_traces) char_traces->resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& tok = ex.tokens[k];
    Eigen::Index off = 0;
    if (p.numeric_dim > 0) {
      if (tok.numeric.size() != p.numeric_dim)
        throw DimensionError("tagger: numeric feature size mismatch");
      x.col(k).segment(off, p.numeric_dim) = tok.numeric;
      off += p.numeric_dim;
    }
    if (!p.font.empty()) {
      x.col(k).segment(off, p.font.dim()) = p.font.lookup(tok.font_id < 0 ? 0 : tok.font_id);
      off += p.font.dim();
    }
    if (!p.chars.empty()) {
      x.col(k).segment(off, p.chars.out_dim()) =
          char_cnn_forward(p.chars, tok.text, char_traces ? &(*char_traces)[k] : nullptr);
      off += p.chars.out_dim();
    }
    if (!p.word.empty()) {
      x.col(k).segment(off, p.word.dim()) = p.word.lookup(tok.word_id < 0 ? 0 : tok.word_id);
      off += p.word.dim();
    }
  }
  return x;
}

template <typename S>
TaggerTrace<S> tagger_forward(const TaggerParams<S>& p, const SequenceExample<S>& ex) {
  if (p.layers.empty()) throw DimensionError("tagger: no BiLSTM layers");
  const Eigen::Index n = static_cast<Eigen::Index>(ex.tokens.size());
  if (p.aux_dim > 0 && (ex.aux.rows() != p.aux_dim || ex.aux.cols() != n))
    throw DimensionError("tagger: aux vectors missing or mis-sized");

  TaggerTrace<S> t;
  t.assembled = assemble_inputs(p, ex, &t.char_traces);

  Mat<S> cur = p.input_proj.empty() ? t.assembled : p.input_proj.forward(t.assembled);
  for (std::size_t j = 0; j < p.layers.size(); ++j) {
    if (j == 1 && p.aux_dim > 0) {
      Mat<S> with_aux(cur.rows() + p.aux_dim, n);
      with_aux.topRows(cur.rows()) = cur;
      with_aux.bottomRows(p.aux_dim) = ex.aux;
      cur = std::move(with_aux);
    }
    t.layer_inputs.push_back(cur);
    t.fwd_traces.push_back(lstm_run(p.layers[j].fwd, cur));
    t.bwd_traces.push_back(lstm_run(p.layers[j].bwd, cur));
    Mat<S> out(p.layers[j].out_dim(), n);
    out.topRows(p.layers[j].fwd.hidden_size()) = t.fwd_traces.back().hidden;
    out.bottomRows(p.layers[j].bwd.hidden_size()) = t.bwd_traces.back().hidden;
    cur = std::move(out);
  }
  t.top = cur;
  t.emissions = p.crf.emission.forward(t.top).transpose();  // N x L
  return t;
}

template <typename S>
struct TaggerLoss {
  S loss;
  TaggerParams<S> grads;
};

// Negative log-likelihood (log Z - gold score) for one sequence, with exact
// gradients for every parameter tensor accumulated into `grads`.
template <typename S>
S tagger_nll_accumulate(const TaggerParams<S>& p, const SequenceExample<S>& ex,
                        TaggerParams<S>& grads) {
  const Eigen::Index n = static_cast<Eigen::Index>(ex.tokens.size());
  if (static_cast<Eigen::Index>(ex.labels.size()) != n)
    throw DimensionError("tagger: gold labels required");

  const TaggerTrace<S> t = tagger_forward(p, ex);
  const CrfLossGrads<S> crf = crf_nll(p.crf, t.emissions, ex.labels);
  grads.crf.transitions += crf.d_transitions;

  // Emission dense layer: emissions = (W * top + b)^T.
  Mat<S> d_top = p.crf.emission.backward(t.top, crf.d_emissions.transpose().eval(), grads.crf.emission);

  for (std::size_t j = p.layers.size(); j-- > 0;) {
    const Eigen::Index hf = p.layers[j].fwd.hidden_size();
    const Eigen::Index hb = p.layers[j].bwd.hidden_size();
    Mat<S> d_in = lstm_backward(p.layers[j].fwd, t.fwd_traces[j], d_top.topRows(hf).eval(),
                                grads.layers[j].fwd);
    d_in += lstm_backward(p.layers[j].bwd, t.bwd_traces[j], d_top.bottomRows(hb).eval(),
                          grads.layers[j].bwd);
    if (j == 1 && p.aux_dim > 0) d_in.conservativeResize(d_in.rows() - p.aux_dim, Eigen::NoChange);
    d_top = std::move(d_in);
  }

  Mat<S> d_assembled = p.input_proj.empty()
                           ? std::move(d_top)
                           : p.input_proj.backward(t.assembled, d_top, grads.input_proj);

  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& tok = ex.tokens[k];
    Eigen::Index off = p.numeric_dim;  // gradient w.r.t. raw numeric features is discarded
    if (!p.font.empty()) {
      grads.font.vectors.row(tok.font_id < 0 ? 0 : tok.font_id) +=
          d_assembled.col(k).segment(off, p.font.dim()).transpose();
      off += p.font.dim();
    }
    if (!p.chars.empty()) {
      char_cnn_backward(p.chars, t.char_traces[k],
                        d_assembled.col(k).segment(off, p.chars.out_dim()).eval(), grads.chars);
      off += p.chars.out_dim();
    }
    if (!p.word.empty()) {
      grads.word.vectors.row(tok.word_id < 0 ? 0 : tok.word_id) +=
          d_assembled.col(k).segment(off, p.word.dim()).transpose();
      off += p.word.dim();
    }
  }
  return crf.loss;
}

template <typename S>
TaggerLoss<S> nll_and_gradients(const TaggerParams<S>& p, const SequenceExample<S>& ex) {
  TaggerLoss<S> out{S(0), TaggerParams<S>::zeros_like(p)};
  out.loss = tagger_nll_accumulate(p, ex, out.grads);
  return out;
}

// Summed loss and gradients over a batch.
template <typename S>
TaggerLoss<S> nll_and_gradients(const TaggerParams<S>& p, const std::vector<SequenceExample<S>>& batch) {
  TaggerLoss<S> out{S(0), TaggerParams<S>::zeros_like(p)};
  for (const auto& ex : batch) out.loss += tagger_nll_accumulate(p, ex, out.grads);
  return out;
}

}  // namespace litgraph::nn
