#pragma once

// Independent brute-force reference implementations used only by tests.
// These deliberately avoid the library's optimized code paths (Gram
// identities, running sums, prefix counts) so they can serve as oracles.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <set>
#include <vector>

#include "semshift/embedding.hpp"

namespace oracles {

inline double cos_dist(const std::vector<double>& a,
                       const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  double d = 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
  return std::min(2.0, std::max(0.0, d));
}

inline std::vector<std::vector<double>> to_rows(
    const semshift::EmbeddingMatrix& m) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    rows.emplace_back(r.begin(), r.end());
  }
  return rows;
}

// O(n^2 d) mean pairwise cosine distance.
inline double brute_mpd(const semshift::EmbeddingMatrix& m) {
  auto rows = to_rows(m);
  std::size_t n = rows.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sum += cos_dist(rows[i], rows[j]);
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

struct BruteShift {
  double local;
  double disp;
  double shift;
};

// Defs applied literally: Local sums adjacent distances, Disp averages all
// pairs, Shift multiplies them; Disp(1) = Local(1) = 0.
inline BruteShift brute_shift(const std::vector<std::vector<double>>& rows) {
  std::size_t k = rows.size();
  double local = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) local += cos_dist(rows[i], rows[i + 1]);
  double disp = 0.0;
  if (k >= 2) {
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) sum += cos_dist(rows[i], rows[j]);
    disp = 2.0 * sum / (static_cast<double>(k) * static_cast<double>(k - 1));
  }
  return {local, disp, local * disp};
}

// Ranks via stable sort, ties averaged, written independently of the library.
inline std::vector<double> brute_ranks(const std::vector<double>& x) {
  std::size_t n = x.size();
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t less = 0, equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j] < x[i]) ++less;
      if (x[j] == x[i]) ++equal;
    }
    // average of positions less+1 .. less+equal
    ranks[i] = static_cast<double>(less) +
               (static_cast<double>(equal) + 1.0) / 2.0;
  }
  return ranks;
}

inline double brute_pearson(const std::vector<double>& x,
                            const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (double v : x) mx += v;
  for (double v : y) my += v;
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

inline double brute_spearman(const std::vector<double>& x,
                             const std::vector<double>& y) {
  return brute_pearson(brute_ranks(x), brute_ranks(y));
}

inline double brute_kendall_tau_b(const std::vector<double>& x,
                                  const std::vector<double>& y) {
  std::size_t n = x.size();
  double c = 0, d = 0, tx = 0, ty = 0, txy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double a = x[i] - x[j], b = y[i] - y[j];
      if (a == 0 && b == 0)
        ++txy;
      else if (a == 0)
        ++tx;
      else if (b == 0)
        ++ty;
      else if (a * b > 0)
        ++c;
      else
        ++d;
    }
  }
  double n0 = static_cast<double>(n) * (n - 1) / 2.0;
  return (c - d) / std::sqrt((n0 - tx - txy) * (n0 - ty - txy));
}

// Segment ids per sentence from a boundary set.
inline std::vector<int> segment_ids(const std::set<std::size_t>& boundaries,
                                    std::size_t n) {
  std::vector<int> seg(n, 0);
  int id = 0;
  for (std::size_t i = 0; i < n; ++i) {
    seg[i] = id;
    if (boundaries.count(i)) ++id;
  }
  return seg;
}

inline double brute_pk(const std::set<std::size_t>& gold,
                       const std::set<std::size_t>& pred, std::size_t n,
                       std::size_t w) {
  auto gs = segment_ids(gold, n);
  auto ps = segment_ids(pred, n);
  std::size_t errors = 0;
  for (std::size_t i = 0; i + w < n; ++i) {
    bool g_same = gs[i] == gs[i + w];
    bool p_same = ps[i] == ps[i + w];
    if (g_same != p_same) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(n - w);
}

inline double brute_window_diff(const std::set<std::size_t>& gold,
                                const std::set<std::size_t>& pred,
                                std::size_t n, std::size_t w) {
  std::size_t errors = 0;
  for (std::size_t i = 0; i + w < n; ++i) {
    std::size_t g = 0, p = 0;
    for (std::size_t j = i; j < i + w; ++j) {
      if (gold.count(j)) ++g;
      if (pred.count(j)) ++p;
    }
    if (g != p) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(n - w);
}

inline std::vector<std::size_t> brute_topk(
    const std::vector<double>& query, const semshift::EmbeddingMatrix& corpus,
    std::size_t k) {
  auto rows = to_rows(corpus);
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     double da = cos_dist(query, rows[a]);
                     double db = cos_dist(query, rows[b]);
                     if (da != db) return da < db;
                     return a < b;
                   });
  order.resize(k);
  return order;
}

inline double brute_percentile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  if (v.size() == 1) return v[0];
  double rank = p / 100.0 * static_cast<double>(v.size() - 1);
  std::size_t lo = static_cast<std::size_t>(rank);
  if (lo + 1 >= v.size()) return v.back();
  return v[lo] + (rank - static_cast<double>(lo)) * (v[lo + 1] - v[lo]);
}

}  // namespace oracles
