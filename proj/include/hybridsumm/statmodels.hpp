// Statistical rankers: Jaccard and cosine sentence-similarity matrices,
// TextRank scores, TF-IDF sentence scores.
#pragma once

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "hybridsumm/preprocess.hpp"
#include "hybridsumm/types.hpp"

namespace hybridsumm {

// |A ∩ B| / |A ∪ B|. Two empty sets are identical objects, similarity 1;
// empty against non-empty is 0.
inline double jaccard_similarity(const std::set<std::string>& a,
                                 const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  for (const std::string& w : a) inter += b.count(w);
  std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

// u·v / (‖u‖‖v‖); zero-norm input yields 0.
inline double cosine_similarity(const std::vector<double>& u, const std::vector<double>& v) {
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

inline double cosine_distance(const std::vector<double>& u, const std::vector<double>& v) {
  return 1.0 - cosine_similarity(u, v);
}

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

// Sentence-by-sentence similarity matrix over the frequency matrix rows.
// Entries are computed once per unordered pair and mirrored, so the result
// is exactly symmetric. With as_distance the cosine measure stores the
// 1 - cos distance instead (no unit diagonal in that mode).
inline SimilarityMatrix similarity_matrix(const FrequencyMatrix& fm, Model measure,
                                          bool as_distance = false) {
  if (measure != Model::jaccard && measure != Model::cosine)
    throw DataError("similarity_matrix: measure must be jaccard or cosine");
  const std::size_t n = fm.sentence_count;
  SimilarityMatrix sim;
  sim.model = measure;
  sim.size = n;
  sim.values = Matrix(n, n, 0.0);

  std::vector<std::set<std::string>> word_sets;
  std::vector<std::vector<double>> rows;
  if (measure == Model::jaccard) {
    word_sets.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < fm.retained; ++j)
        if (fm.counts[i][j] > 0) word_sets[i].insert(fm.words[j]);
  } else {
    rows.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      rows[i].assign(fm.counts[i].begin(), fm.counts[i].end());
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double v;
      if (measure == Model::jaccard) {
        v = jaccard_similarity(word_sets[i], word_sets[j]);
      } else if (i == j) {
        // cos(u, u) is exactly 1 for any non-zero u; avoid the one-ulp
        // rounding of the general formula (zero rows keep the zero-norm rule)
        bool zero = true;
        for (double x : rows[i])
          if (x != 0.0) zero = false;
        v = zero ? 0.0 : 1.0;
        if (as_distance) v = 1.0 - v;
      } else {
        v = cosine_similarity(rows[i], rows[j]);
        if (as_distance) v = 1.0 - v;
      }
      v = clamp01(v);
      sim.values.at(i, j) = v;
      sim.values.at(j, i) = v;
    }
  return sim;
}

// TextRank over a sentence-similarity matrix. The matrix is row-normalized
// internally (all-zero rows become uniform), then iterated as
//   R_i <- (1-d)/n + d * sum_j W[j][i] * R_j
// until the L1 change drops below epsilon or max_iter is reached. The result
// is a probability distribution: entries in (0,1), summing to 1.
inline RankVector textrank(const SimilarityMatrix& sim, double d = 0.85,
                           double epsilon = 1e-6, int max_iter = 200) {
  if (d <= 0.0 || d >= 1.0) throw DataError("textrank: damping must be in (0,1)");
  if (epsilon <= 0.0) throw DataError("textrank: epsilon must be positive");
  const std::size_t n = sim.size;
  RankVector rv;
  rv.model = Model::textrank;
  if (n == 0) return rv;

  Matrix w(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) row_sum += sim.values.at(i, j);
    if (row_sum > 0.0) {
      for (std::size_t j = 0; j < n; ++j) w.at(i, j) = sim.values.at(i, j) / row_sum;
    } else {
      for (std::size_t j = 0; j < n; ++j) w.at(i, j) = 1.0 / static_cast<double>(n);
    }
  }

  std::vector<double> r(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);
  const double teleport = (1.0 - d) / static_cast<double>(n);
  for (int iter = 0; iter < max_iter; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += w.at(j, i) * r[j];
      next[i] = teleport + d * acc;
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta += std::fabs(next[i] - r[i]);
    r.swap(next);
    if (delta < epsilon) break;
  }
  rv.scores = std::move(r);
  return rv;
}

// words x sentences matrix of tf * ln(N / df) weights.
struct TfIdfMatrix {
  std::vector<std::string> words;
  std::size_t sentence_count = 0;
  Matrix weights;  // words.size() x sentence_count
};

inline TfIdfMatrix tfidf_matrix(const FrequencyMatrix& fm) {
  TfIdfMatrix tm;
  tm.words = fm.words;
  tm.sentence_count = fm.sentence_count;
  const std::size_t m = fm.retained;
  const std::size_t n = fm.sentence_count;
  tm.weights = Matrix(m, n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    int df = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (fm.counts[j][i] > 0) ++df;
    if (df == 0) continue;
    double idf = std::log(static_cast<double>(n) / static_cast<double>(df));
    for (std::size_t j = 0; j < n; ++j)
      tm.weights.at(i, j) = static_cast<double>(fm.counts[j][i]) * idf;
  }
  return tm;
}

// Per-sentence TF-IDF score: noun weight share of the sentence's total
// tf-idf mass, scaled by the positional factor. position: "paper" applies
// (o+1)/T with 0-based o, "reversed" (T-o)/T, "off" no scaling.
inline RankVector tfidf_sentence_scores(const Document& doc, const TfIdfMatrix& tm,
                                        const std::string& position = "paper",
                                        const std::string& count_form = "stem") {
  RankVector rv;
  rv.model = Model::tfidf;
  const std::size_t n = doc.sentences.size();
  rv.scores.assign(n, 0.0);
  if (n != tm.sentence_count)
    throw DataError("tfidf_sentence_scores: matrix does not match document");

  std::map<std::string, std::size_t> row;
  for (std::size_t i = 0; i < tm.words.size(); ++i) row[tm.words[i]] = i;

  const double total = static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    // forms of this sentence that occur as nouns
    std::set<std::string> noun_forms;
    for (const Token& t : doc.sentences[j].tokens)
      if (t.pos == Pos::noun && !t.is_stopword && t.alphabetic())
        noun_forms.insert(detail::counted_form(t, count_form));

    double noun_mass = 0.0, mass = 0.0;
    for (const auto& [word, i] : row) {
      double wgt = tm.weights.at(i, j);
      if (wgt == 0.0) continue;
      mass += wgt;
      if (noun_forms.count(word)) noun_mass += wgt;
    }
    double score = mass > 0.0 ? noun_mass / mass : 0.0;
    if (position == "paper")
      score *= (static_cast<double>(j) + 1.0) / total;
    else if (position == "reversed")
      score *= (total - static_cast<double>(j)) / total;
    rv.scores[j] = score;
  }
  return rv;
}

}  // namespace hybridsumm
