#pragma once

#include <string>
#include <vector>

#include "litgraph/nn/crf.hpp"

namespace litgraph::ner {

// Token-level span encoding: O plus Begin/Inside/Last/Unit tags. Labels may
// carry a field (entity mentions use a single untyped field; the metadata
// tagger uses one field per metadata slot). Label ids are laid out as
//   0 = O,  1 + 4*field + tag  with tag in {B=0, I=1, L=2, U=3}.
enum class BilouTag { kB = 0, kI = 1, kL = 2, kU = 3 };

constexpr int kOutsideLabel = 0;

constexpr int bilou_label_count(int n_fields) { return 1 + 4 * n_fields; }
constexpr int bilou_label_id(int field, BilouTag tag) { return 1 + 4 * field + int(tag); }
constexpr bool is_outside(int label) { return label == kOutsideLabel; }
constexpr int bilou_field_of(int label) { return (label - 1) / 4; }
constexpr BilouTag bilou_tag_of(int label) { return BilouTag((label - 1) % 4); }

// Half-open token span.
struct Span {
  int start = 0;
  int end = 0;
  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

struct Segment {
  int field = 0;
  int start = 0;
  int end = 0;
};

// Valid-transition mask over (L+2)^2 including the virtual start/stop labels:
// B must be followed by I/L of the same field, I by I/L, and a span cannot be
// left open at the end of the sequence.
nn::CrfParams<double>::BoolMat bilou_transition_mask(int n_fields);

bool bilou_valid(const std::vector<int>& labels, int n_fields);

// Encodes non-overlapping spans (checked) into a label sequence of length n.
std::vector<int> bilou_encode(const std::vector<Span>& spans, int n, int field = 0);

// Strict inverse of bilou_encode for single-field sequences; rejects invalid
// sequences (which masked Viterbi decoding never produces).
std::vector<Span> bilou_decode(const std::vector<int>& labels);

// Lenient multi-field segmentation used by the decoders: maximal runs grouped
// by field, split at B/U boundaries.
std::vector<Segment> bilou_segments(const std::vector<int>& labels);

}  // namespace litgraph::ner
