#pragma once

#include <string>
#include <vector>

#include "litgraph/ner/bilou.hpp"

namespace litgraph::meta {

// Metadata fields labeled by the tagger; everything else is "none" (O).
// BILOU position tags refine each field, sharing one joint label space.
enum class Field {
  kTitle = 0,
  kAuthor = 1,
  kRefTitle = 2,
  kRefAuthor = 3,
  kRefVenue = 4,
  kRefYear = 5,
};

inline constexpr int kNumFields = 6;
inline constexpr int kNumLabels = ner::bilou_label_count(kNumFields);  // 25

inline int label_id(Field field, ner::BilouTag tag) {
  return ner::bilou_label_id(int(field), tag);
}

const char* field_name(Field field);
std::string label_name(int label);
std::vector<std::string> all_label_names();

// CRF mask enforcing BILOU transition validity over the joint label space.
inline nn::CrfParams<double>::BoolMat metadata_transition_mask() {
  return ner::bilou_transition_mask(kNumFields);
}

}  // namespace litgraph::meta
