// Sentence ranking and summary assembly: relevance scores, hierarchical
// cluster ranking, and budgeted greedy selection.
#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "hybridsumm/types.hpp"

namespace hybridsumm {

// RScore(s_i) = sum_j Sim[i][j]. The diagonal is included; it adds a
// constant 1 to every score and never changes the ordering.
inline RankVector relevance_scores(const SimilarityMatrix& sim) {
  RankVector rv;
  rv.model = sim.model;
  rv.scores.assign(sim.size, 0.0);
  for (std::size_t i = 0; i < sim.size; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < sim.size; ++j) sum += sim.values.at(i, j);
    rv.scores[i] = sum;
  }
  return rv;
}

// Indices sorted by descending score; equal scores keep ascending index
// order.
inline RankedList ranked_list(const RankVector& rv) {
  RankedList rl;
  rl.model = rv.model;
  rl.order.resize(rv.scores.size());
  std::iota(rl.order.begin(), rl.order.end(), 0);
  std::stable_sort(rl.order.begin(), rl.order.end(), [&](std::size_t a, std::size_t b) {
    return rv.scores[a] > rv.scores[b];
  });
  return rl;
}

// Agglomerative rank list. Repeatedly take the largest non-zero
// off-diagonal entry s_{i,j} (ties: smallest (i,j)), append i then j to the
// list, then merge j into i by averaging row i with row j and column i with
// column j, and zero out row j, column j, and s_{i,i}. When no non-zero
// off-diagonal entry remains, the never-selected indices follow in
// ascending order.
inline RankedList hierarchical_cluster_rank(const SimilarityMatrix& sim) {
  const std::size_t n = sim.size;
  RankedList rl;
  rl.model = sim.model;

  Matrix s = sim.values;
  std::vector<char> listed(n, 0);
  auto append = [&](std::size_t k) {
    if (!listed[k]) {
      listed[k] = 1;
      rl.order.push_back(k);
    }
  };

  while (true) {
    double best = 0.0;
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        double v = s.at(i, j);
        if (v > best) {
          best = v;
          bi = i;
          bj = j;
          found = true;
        }
      }
    if (!found) break;

    append(bi);
    append(bj);
    for (std::size_t k = 0; k < n; ++k) s.at(bi, k) = (s.at(bi, k) + s.at(bj, k)) / 2.0;
    for (std::size_t k = 0; k < n; ++k) s.at(k, bi) = (s.at(k, bi) + s.at(k, bj)) / 2.0;
    for (std::size_t k = 0; k < n; ++k) {
      s.at(bj, k) = 0.0;
      s.at(k, bj) = 0.0;
    }
    s.at(bi, bi) = 0.0;
  }

  for (std::size_t k = 0; k < n; ++k) append(k);
  return rl;
}

namespace detail {

inline std::size_t word_count(const std::string& text) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : text) {
    bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

}  // namespace detail

// Greedy prefix selection under the budget. Sentences are taken in rank
// order until the k-th sentence (count budget) or until adding the next one
// would push the emitted text (sentences in document order, single spaces
// between them) past the word or character limit; the first overflow stops
// the scan. If even the top-ranked sentence does not fit, the summary is
// empty and flagged.
inline Summary select_summary(const RankedList& ranks, const Document& doc,
                              const Budget& budget) {
  if (budget.limit == 0) throw DataError("select_summary: budget must be positive");
  Summary summary;
  summary.doc_id = doc.id;
  summary.budget = budget;

  std::size_t chars = 0, words = 0;
  for (std::size_t idx : ranks.order) {
    const std::string& raw = doc.sentences[idx].raw;
    if (budget.kind == Budget::Kind::sentences) {
      if (summary.indices.size() >= budget.limit) break;
    } else if (budget.kind == Budget::Kind::words) {
      std::size_t next = words + detail::word_count(raw);
      if (next > budget.limit) break;
      words = next;
    } else {
      std::size_t next = chars + raw.size() + (summary.indices.empty() ? 0 : 1);
      if (next > budget.limit) break;
      chars = next;
    }
    summary.indices.push_back(idx);
  }

  std::sort(summary.indices.begin(), summary.indices.end());
  for (std::size_t i = 0; i < summary.indices.size(); ++i) {
    if (i > 0) summary.text += ' ';
    summary.text += doc.sentences[summary.indices[i]].raw;
  }
  summary.budget_warning = summary.indices.empty() && !ranks.order.empty();
  return summary;
}

inline Summary select_summary(const RankVector& scores, const Document& doc,
                              const Budget& budget) {
  return select_summary(ranked_list(scores), doc, budget);
}

}  // namespace hybridsumm
