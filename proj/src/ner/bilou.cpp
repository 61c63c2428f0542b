#include "litgraph/ner/bilou.hpp"

#include <algorithm>

#include "litgraph/error.hpp"

namespace litgraph::ner {

nn::CrfParams<double>::BoolMat bilou_transition_mask(int n_fields) {
  const int l = bilou_label_count(n_fields);
  const int start = l, stop = l + 1;
  nn::CrfParams<double>::BoolMat forbidden =
      nn::CrfParams<double>::BoolMat::Constant(l + 2, l + 2, true);

  const auto allow = [&](int from, int to) { forbidden(from, to) = false; };

  // "Open" states are those a span may start from: O, L-of-any, U-of-any,
  // plus the virtual start label.
  std::vector<int> open = {kOutsideLabel, start};
  for (int f = 0; f < n_fields; ++f) {
    open.push_back(bilou_label_id(f, BilouTag::kL));
    open.push_back(bilou_label_id(f, BilouTag::kU));
  }
  for (int from : open) {
    allow(from, kOutsideLabel);
    for (int f = 0; f < n_fields; ++f) {
      allow(from, bilou_label_id(f, BilouTag::kB));
      allow(from, bilou_label_id(f, BilouTag::kU));
    }
    if (from != start) allow(from, stop);
  }
  // Inside a span: B/I continue with I or close with L, same field only.
  for (int f = 0; f < n_fields; ++f) {
    for (BilouTag tag : {BilouTag::kB, BilouTag::kI}) {
      allow(bilou_label_id(f, tag), bilou_label_id(f, BilouTag::kI));
      allow(bilou_label_id(f, tag), bilou_label_id(f, BilouTag::kL));
    }
  }
  allow(kOutsideLabel, stop);
  return forbidden;
}

bool bilou_valid(const std::vector<int>& labels, int n_fields) {
  const auto mask = bilou_transition_mask(n_fields);
  const int l = bilou_label_count(n_fields);
  int prev = l;  // start
  for (int y : labels) {
    if (y < 0 || y >= l) return false;
    if (mask(prev, y)) return false;
    prev = y;
  }
  return !mask(prev, l + 1);
}

std::vector<int> bilou_encode(const std::vector<Span>& spans, int n, int field) {
  std::vector<Span> sorted = spans;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& s = sorted[i];
    if (s.start < 0 || s.end > n || s.start >= s.end)
      throw Error("bilou_encode: span out of range");
    if (i > 0 && sorted[i - 1].end > s.start) throw Error("bilou_encode: overlapping spans");
  }
  std::vector<int> labels(n, kOutsideLabel);
  for (const auto& s : sorted) {
    if (s.end - s.start == 1) {
      labels[s.start] = bilou_label_id(field, BilouTag::kU);
    } else {
      labels[s.start] = bilou_label_id(field, BilouTag::kB);
      for (int k = s.start + 1; k < s.end - 1; ++k) labels[k] = bilou_label_id(field, BilouTag::kI);
      labels[s.end - 1] = bilou_label_id(field, BilouTag::kL);
    }
  }
  return labels;
}

std::vector<Span> bilou_decode(const std::vector<int>& labels) {
  int max_field = 0;
  for (int y : labels)
    if (!is_outside(y)) max_field = std::max(max_field, bilou_field_of(y));
  if (!bilou_valid(labels, max_field + 1)) throw Error("bilou_decode: invalid label sequence");

  std::vector<Span> spans;
  for (const auto& seg : bilou_segments(labels)) spans.push_back({seg.start, seg.end});
  return spans;
}

std::vector<Segment> bilou_segments(const std::vector<int>& labels) {
  std::vector<Segment> out;
  int open_field = -1, open_start = 0;
  const auto close = [&](int end) {
    if (open_field >= 0) out.push_back({open_field, open_start, end});
    open_field = -1;
  };
  for (int k = 0; k < int(labels.size()); ++k) {
    const int y = labels[k];
    if (is_outside(y)) {
      close(k);
      continue;
    }
    const int field = bilou_field_of(y);
    const BilouTag tag = bilou_tag_of(y);
    if (tag == BilouTag::kB || tag == BilouTag::kU || field != open_field) {
      close(k);
      open_field = field;
      open_start = k;
    }
    if (tag == BilouTag::kL || tag == BilouTag::kU) close(k + 1);
  }
  close(int(labels.size()));
  return out;
}

}  // namespace litgraph::ner
