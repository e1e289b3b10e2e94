// Maximum-weight bipartite matching (Hungarian method with potentials),
// with a deterministic lexicographic tie-break over pair lists.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "hybridsumm/types.hpp"

namespace hybridsumm {

struct MatchedPair {
  std::size_t i = 0;
  std::size_t j = 0;
  double weight = 0.0;
};

struct Matching {
  std::vector<MatchedPair> pairs;  // ascending row order
  double total_weight = 0.0;
};

namespace detail {

// Min-cost assignment of every row to a distinct column, rows <= cols.
// Classic O(rows^2 * cols) potentials formulation; returns the column
// chosen for each row.
inline std::vector<std::size_t> assign_min_cost(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  if (n == 0) return {};
  const std::size_t m = cost[0].size();
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      std::size_t i0 = p[j0], j1 = 0;
      double delta = inf;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> match(n, 0);
  for (std::size_t j = 1; j <= m; ++j)
    if (p[j] != 0) match[p[j] - 1] = j - 1;
  return match;
}

// Maximum total over one-to-one matchings of size min(rows, cols) of w.
// Weights are non-negative, so the full-size optimum dominates any
// smaller matching. The total is summed in ascending row order.
inline double best_matching_total(const std::vector<std::vector<double>>& w) {
  const std::size_t n = w.size();
  const std::size_t m = n == 0 ? 0 : w[0].size();
  if (n == 0 || m == 0) return 0.0;

  std::vector<std::vector<double>> cost;
  std::vector<std::size_t> match;
  double total = 0.0;
  if (n <= m) {
    cost.assign(n, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) cost[i][j] = -w[i][j];
    match = assign_min_cost(cost);
    for (std::size_t i = 0; i < n; ++i) total += w[i][match[i]];
  } else {
    cost.assign(m, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < n; ++i) cost[j][i] = -w[i][j];
    match = assign_min_cost(cost);
    // Re-sum in row order of the original matrix for reproducible totals.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 0; j < m; ++j) pairs.emplace_back(match[j], j);
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [i, j] : pairs) total += w[i][j];
  }
  return total;
}

}  // namespace detail

// Maximum-weight matching of size min(m, n) over the entries of s
// (rows of s are one side of the bipartite graph, columns the other).
// Among all maximum matchings the lexicographically smallest (row, col)
// pair list is returned: rows are settled in ascending order, each taking
// the smallest column that still permits an optimal completion.
inline Matching hungarian_max_matching(const Matrix& s) {
  const std::size_t n = s.rows();
  const std::size_t m = s.cols();
  Matching result;
  if (n == 0 || m == 0) return result;

  std::vector<std::vector<double>> w(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double v = s.at(i, j);
      if (!std::isfinite(v) || v < 0.0)
        throw DataError("hungarian_max_matching: entries must be finite and non-negative");
      w[i][j] = v;
    }

  const std::size_t k = std::min(n, m);
  const double best = detail::best_matching_total(w);
  const double tol = 1e-9 * std::max(1.0, std::fabs(best));

  std::vector<char> col_used(m, 0);
  double fixed_weight = 0.0;

  for (std::size_t r = 0; r < n && result.pairs.size() < k; ++r) {
    const std::size_t remaining_rows = n - r - 1;
    const std::size_t need_after = k - result.pairs.size() - 1;
    for (std::size_t c = 0; c < m; ++c) {
      if (col_used[c]) continue;
      if (remaining_rows < need_after) continue;  // cannot finish if we take this row
      // Best completion over rows > r and the still-free columns minus c.
      std::vector<std::vector<double>> sub;
      sub.reserve(remaining_rows);
      for (std::size_t i = r + 1; i < n; ++i) {
        std::vector<double> row;
        row.reserve(m);
        for (std::size_t j = 0; j < m; ++j)
          if (!col_used[j] && j != c) row.push_back(w[i][j]);
        sub.push_back(std::move(row));
      }
      double completion = detail::best_matching_total(sub);
      if (fixed_weight + w[r][c] + completion >= best - tol) {
        result.pairs.push_back({r, c, w[r][c]});
        col_used[c] = 1;
        fixed_weight += w[r][c];
        break;
      }
    }
    // If no column qualified, every optimal matching skips row r.
  }

  for (const MatchedPair& p : result.pairs) result.total_weight += p.weight;
  return result;
}

}  // namespace hybridsumm
