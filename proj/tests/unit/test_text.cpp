#include <doctest.h>

#include "litgraph/text.hpp"
#include "testutil/oracles.hpp"

using namespace litgraph;

TEST_CASE("canonicalize lowercases, strips punctuation, collapses whitespace") {
  CHECK(canonicalize("Deep  Learning") == "deep learning");
  CHECK(canonicalize("  Deep Learning: A Review!  ") == "deep learning a review");
  CHECK(canonicalize("self-attention") == "selfattention");
  CHECK(canonicalize("???") == "");
}

TEST_CASE("levenshtein matches an independent recursive oracle") {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"", ""},       {"a", ""},         {"kitten", "sitting"}, {"flaw", "lawn"},
      {"abc", "abc"}, {"abcdef", "azced"}, {"deep learning", "deep yearning"}};
  for (const auto& [a, b] : cases) {
    CAPTURE(a);
    CAPTURE(b);
    CHECK(levenshtein(a, b) == testutil::levenshtein_oracle(a, b));
  }
}

TEST_CASE("levenshtein similarity") {
  CHECK(levenshtein_similarity("", "") == 1.0);
  CHECK(levenshtein_similarity("abcdefghij", "abcdefghix") == doctest::Approx(0.9));
  CHECK(levenshtein_similarity("abc", "abc") == 1.0);
}

TEST_CASE("jaccard") {
  CHECK(jaccard({}, {}) == 0.0);
  CHECK(jaccard({"a", "b"}, {"b", "c"}) == doctest::Approx(1.0 / 3.0));
  CHECK(jaccard({"x"}, {"x"}) == 1.0);
}

TEST_CASE("index tokenization drops stopwords and splits on non-alphanumerics") {
  CHECK(tokenize_alnum("Integer-Linear Programming!") ==
        std::vector<std::string>{"integer", "linear", "programming"});
  CHECK(tokenize_for_index("the logic of induction") ==
        std::vector<std::string>{"logic", "induction"});
}
