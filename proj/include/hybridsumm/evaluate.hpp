// N-gram overlap evaluation: ROUGE-N recall/precision/F1 with clipped
// counts and micro-averaged multi-reference aggregation.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "hybridsumm/porter.hpp"
#include "hybridsumm/preprocess.hpp"
#include "hybridsumm/types.hpp"

namespace hybridsumm {

// n-gram multiset over the normalized token stream: lowercased, punctuation
// stripped, stopwords kept. stem=true maps each token through the Porter
// stemmer first.
inline std::map<std::vector<std::string>, int> ngrams(const std::string& text, int n,
                                                      bool stem = false) {
  if (n < 1) throw DataError("ngrams: order must be >= 1");
  std::vector<std::string> tokens;
  for (const Token& t : tokenize_words(clean(text))) {
    if (stem && t.alphabetic())
      tokens.push_back(porter_stem(t.normalized));
    else
      tokens.push_back(t.normalized);
  }
  std::map<std::vector<std::string>, int> grams;
  if (tokens.size() < static_cast<std::size_t>(n)) return grams;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    ++grams[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  return grams;
}

// F1Score = 2 * precision * recall / (precision + recall); 0 at the
// degenerate point.
inline double f1(double precision, double recall) {
  double denom = precision + recall;
  if (denom == 0.0) return 0.0;
  return 2.0 * precision * recall / denom;
}

// ROUGE-N against one or more references. Matches are clipped per
// reference (a candidate n-gram counts at most as often as the reference
// holds it); totals are micro-averaged: sums across references before
// division. Precision divides by |references| * candidate total so that a
// candidate identical to every reference scores precision 1.
inline RougeScore rouge_n(const std::string& candidate, const std::vector<std::string>& references,
                          int n, bool stem = false) {
  if (references.empty()) throw DataError("rouge_n: at least one reference is required");
  RougeScore score;
  score.n = n;

  std::map<std::vector<std::string>, int> cand = ngrams(candidate, n, stem);
  long long cand_total = 0;
  for (const auto& [g, c] : cand) cand_total += c;

  long long matched = 0, ref_total = 0;
  for (const std::string& ref : references) {
    std::map<std::vector<std::string>, int> rg = ngrams(ref, n, stem);
    for (const auto& [g, c] : rg) ref_total += c;
    for (const auto& [g, c] : cand) {
      auto it = rg.find(g);
      if (it != rg.end()) matched += std::min(c, it->second);
    }
  }

  if (ref_total > 0)
    score.recall = static_cast<double>(matched) / static_cast<double>(ref_total);
  long long denom = static_cast<long long>(references.size()) * cand_total;
  if (denom > 0)
    score.precision = static_cast<double>(matched) / static_cast<double>(denom);
  score.f1 = f1(score.precision, score.recall);
  return score;
}

}  // namespace hybridsumm
