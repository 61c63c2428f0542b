#include "litgraph/meta/labels.hpp"

namespace litgraph::meta {

const char* field_name(Field field) {
  switch (field) {
    case Field::kTitle: return "title";
    case Field::kAuthor: return "author";
    case Field::kRefTitle: return "ref_title";
    case Field::kRefAuthor: return "ref_author";
    case Field::kRefVenue: return "ref_venue";
    case Field::kRefYear: return "ref_year";
  }
  return "?";
}

std::string label_name(int label) {
  if (ner::is_outside(label)) return "O";
  static const char* tags = "BILU";
  return std::string(1, tags[int(ner::bilou_tag_of(label))]) + "-" +
         field_name(Field(ner::bilou_field_of(label)));
}

std::vector<std::string> all_label_names() {
  std::vector<std::string> names;
  for (int i = 0; i < kNumLabels; ++i) names.push_back(label_name(i));
  return names;
}

}  // namespace litgraph::meta
