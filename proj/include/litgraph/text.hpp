#pragma once

#include <set>
#include <string>
#include <vector>

namespace litgraph {

std::string to_lower(std::string s);

// Lowercase, strip punctuation, collapse runs of whitespace, trim.
// Used for dedup canonicalization and for heuristic token matching.
std::string canonicalize(const std::string& s);

// Whitespace-separated pieces.
std::vector<std::string> split_whitespace(const std::string& s);

// Lowercased alphanumeric runs; everything else is a separator.
std::vector<std::string> tokenize_alnum(const std::string& s);

// tokenize_alnum with a fixed stopword list removed.
std::vector<std::string> tokenize_for_index(const std::string& s);

bool is_stopword(const std::string& lower_token);

std::size_t levenshtein(const std::string& a, const std::string& b);

// 1 - distance / max(len). Two empty strings are identical (1.0).
double levenshtein_similarity(const std::string& a, const std::string& b);

// |a ∩ b| / |a ∪ b|; both empty -> 0.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

}  // namespace litgraph
