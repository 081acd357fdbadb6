#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "semshift/embedding.hpp"
#include "semshift/errors.hpp"
#include "semshift/util.hpp"

namespace semshift {

namespace detail {

template <typename T>
double dot(std::span<const T> a, std::span<const T> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return s;
}

template <typename T>
bool same_elements(std::span<const T> a, std::span<const T> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

// 1 - cos(a, b), clamped to [0, 2] to absorb float drift. Identical inputs
// short-circuit to an exact 0.
template <typename T>
double cosine_distance(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw DimensionMismatchError(a.size(), b.size());
  if (a.empty()) throw DimensionMismatchError(1, 0);
  if (detail::same_elements(a, b)) return 0.0;
  double na = std::sqrt(detail::dot(a, a));
  double nb = std::sqrt(detail::dot(b, b));
  if (na < 1e-12) throw ZeroVectorError(0);
  if (nb < 1e-12) throw ZeroVectorError(1);
  double d = 1.0 - detail::dot(a, b) / (na * nb);
  return std::clamp(d, 0.0, 2.0);
}

inline double cosine_distance(const std::vector<double>& a,
                              const std::vector<double>& b) {
  return cosine_distance(std::span<const double>(a), std::span<const double>(b));
}

// Mean pairwise cosine distance over all rows. Uses the Gram identity
// sum_{i<j} u_i.u_j = (|sum u|^2 - sum |u_i|^2) / 2 on renormalized rows,
// giving O(nd) instead of the O(n^2 d) double loop (kept as a test oracle).
inline double mpd(const EmbeddingMatrix& m) {
  std::size_t n = m.rows();
  if (n < 2) throw TooFewRowsError(n);
  std::vector<double> sum(m.dim(), 0.0);
  KahanSum sumsq;
  for (std::size_t i = 0; i < n; ++i) {
    auto u = unit_row(m, i);
    for (std::size_t j = 0; j < u.size(); ++j) sum[j] += u[j];
    sumsq.add(detail::dot(std::span<const double>(u), std::span<const double>(u)));
  }
  double s2 = detail::dot(std::span<const double>(sum), std::span<const double>(sum));
  double pair_dots = (s2 - sumsq.value()) / 2.0;
  double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return std::clamp(1.0 - pair_dots / pairs, 0.0, 2.0);
}

struct MpdCurve {
  std::vector<std::size_t> prefix_sizes;
  std::vector<double> mpd_values;
};

// MPD over prefixes of size 2, 2+step, ... (always ending at n), maintained
// with running sums so each added row costs O(d).
inline MpdCurve mpd_curve(const EmbeddingMatrix& m, std::size_t step = 1) {
  std::size_t n = m.rows();
  if (n < 2) throw TooFewRowsError(n);
  if (step < 1) throw InputError("step must be >= 1");
  MpdCurve curve;
  std::vector<double> sum(m.dim(), 0.0);
  KahanSum pair_dots;
  std::size_t next_emit = 2;
  for (std::size_t i = 0; i < n; ++i) {
    auto u = unit_row(m, i);
    pair_dots.add(detail::dot(std::span<const double>(u),
                              std::span<const double>(sum)));
    for (std::size_t j = 0; j < u.size(); ++j) sum[j] += u[j];
    std::size_t k = i + 1;
    if (k >= 2 && (k == next_emit || k == n)) {
      double pairs = static_cast<double>(k) * static_cast<double>(k - 1) / 2.0;
      curve.prefix_sizes.push_back(k);
      curve.mpd_values.push_back(
          std::clamp(1.0 - pair_dots.value() / pairs, 0.0, 2.0));
      while (next_emit <= k) next_emit += step;
    }
  }
  return curve;
}

struct DilutionStats {
  std::size_t k = 0;
  double c_pair = 0.0;
  double c_mean = 0.0;
  double mu_norm = 0.0;
};

namespace detail {

inline std::vector<std::vector<double>> unit_rows_checked(
    const EmbeddingMatrix& m) {
  std::vector<std::vector<double>> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double norm = row_norm(m.row(i));
    if (std::abs(norm - 1.0) > 1e-4) throw NotNormalizedError(norm);
    rows.push_back(unit_row(m, i));
  }
  return rows;
}

}  // namespace detail

// Group diversity (c_pair) and text-sentence discrepancy (c_mean) for one
// group of unit sentence embeddings. With a text vector we are in
// real-encoder mode; without one the pooled mean stands in for the text.
inline DilutionStats dilution_stats(
    const EmbeddingMatrix& sentence_rows,
    std::optional<std::span<const float>> text_vec = std::nullopt) {
  std::size_t k = sentence_rows.rows();
  if (k < 2) throw TooFewRowsError(k);
  auto rows = detail::unit_rows_checked(sentence_rows);
  std::size_t d = rows[0].size();

  std::vector<double> sum(d, 0.0);
  KahanSum sumsq;
  for (const auto& u : rows) {
    for (std::size_t j = 0; j < d; ++j) sum[j] += u[j];
    sumsq.add(detail::dot(std::span<const double>(u), std::span<const double>(u)));
  }
  double s2 = detail::dot(std::span<const double>(sum), std::span<const double>(sum));
  double pairs = static_cast<double>(k) * static_cast<double>(k - 1) / 2.0;

  DilutionStats st;
  st.k = k;
  st.c_pair = std::clamp(1.0 - (s2 - sumsq.value()) / 2.0 / pairs, 0.0, 2.0);
  st.mu_norm = std::sqrt(s2) / static_cast<double>(k);

  if (text_vec) {
    double tnorm = row_norm(*text_vec);
    if (tnorm < 1e-12) throw ZeroVectorError(0);
    std::vector<double> t(text_vec->size());
    for (std::size_t j = 0; j < t.size(); ++j)
      t[j] = static_cast<double>((*text_vec)[j]) / tnorm;
    if (t.size() != d) throw DimensionMismatchError(d, t.size());
    KahanSum acc;
    for (const auto& u : rows)
      acc.add(cosine_distance(std::span<const double>(u), std::span<const double>(t)));
    st.c_mean = acc.value() / static_cast<double>(k);
  } else {
    if (st.mu_norm < 1e-12) throw DegeneratePoolError();
    KahanSum acc;
    for (const auto& u : rows) {
      double cos_mu = detail::dot(std::span<const double>(u),
                                  std::span<const double>(sum)) /
                      (static_cast<double>(k) * st.mu_norm);
      acc.add(1.0 - cos_mu);
    }
    st.c_mean = acc.value() / static_cast<double>(k);
  }
  return st;
}

// Closed form relating group diversity to pooled-text discrepancy:
// c_mean = 1 - sqrt(1 - (k-1)/k * c_pair), strictly increasing in c_pair.
inline double theorem1_cmean(double c_pair, std::size_t k) {
  if (k < 2) throw InputError("group size must be >= 2");
  if (c_pair < 0.0 || c_pair > 2.0)
    throw InputError("c_pair must lie in [0, 2]");
  double radicand =
      1.0 - (static_cast<double>(k - 1) / static_cast<double>(k)) * c_pair;
  if (radicand < -1e-12) throw OutOfDomainError(radicand);
  return 1.0 - std::sqrt(std::max(0.0, radicand));
}

// Average ranks with ties sharing the mean of their rank positions.
inline std::vector<double> average_ranks(const std::vector<double>& x) {
  std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

namespace detail {

inline void check_series(const std::vector<double>& x,
                         const std::vector<double>& y) {
  if (x.size() != y.size()) throw LengthMismatchError(x.size(), y.size());
  if (x.size() < 2) throw TooFewRowsError(x.size());
  auto constant = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double e) { return e == v[0]; });
  };
  if (constant(x) || constant(y)) throw DegenerateInputError();
}

inline double pearson(const std::vector<double>& x,
                      const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx;
    double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace detail

// Spearman's rho: Pearson correlation of average ranks.
inline double spearman_rho(const std::vector<double>& x,
                           const std::vector<double>& y) {
  detail::check_series(x, y);
  return detail::pearson(average_ranks(x), average_ranks(y));
}

// Kendall's tau-b with tie correction; O(n^2) pair enumeration.
inline double kendall_tau(const std::vector<double>& x,
                          const std::vector<double>& y) {
  detail::check_series(x, y);
  std::size_t n = x.size();
  long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dx = x[i] - x[j];
      double dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) continue;
      if (dx == 0.0) {
        ++ties_x;
      } else if (dy == 0.0) {
        ++ties_y;
      } else if ((dx > 0.0) == (dy > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  double n0 = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  long long tied_pairs_x = 0, tied_pairs_y = 0;
  // Recount tied groups for the tau-b denominator (pairs tied in x include
  // those tied in both).
  {
    auto tie_pairs = [](std::vector<double> v) {
      std::sort(v.begin(), v.end());
      long long total = 0;
      std::size_t i = 0;
      while (i < v.size()) {
        std::size_t j = i;
        while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
        long long t = static_cast<long long>(j - i + 1);
        total += t * (t - 1) / 2;
        i = j + 1;
      }
      return total;
    };
    tied_pairs_x = tie_pairs(x);
    tied_pairs_y = tie_pairs(y);
  }
  double denom = std::sqrt((n0 - static_cast<double>(tied_pairs_x)) *
                           (n0 - static_cast<double>(tied_pairs_y)));
  if (denom == 0.0) throw DegenerateInputError();
  return (static_cast<double>(concordant) - static_cast<double>(discordant)) /
         denom;
}

}  // namespace semshift
