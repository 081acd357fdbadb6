#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <set>
#include <span>
#include <vector>

#include "semshift/corpus.hpp"
#include "semshift/embedding.hpp"
#include "semshift/errors.hpp"
#include "semshift/geometry.hpp"
#include "semshift/splitter.hpp"
#include "semshift/util.hpp"

namespace semshift {

// Exact k nearest rows by cosine distance, ascending; ties break toward the
// lower row index so repeated calls return identical orderings.
inline std::vector<std::size_t> topk(std::span<const float> query,
                                     const EmbeddingMatrix& corpus,
                                     std::size_t k) {
  std::size_t n = corpus.rows();
  if (k > n) throw KTooLargeError(k, n);
  std::vector<std::pair<double, std::size_t>> scored(n);
  for (std::size_t i = 0; i < n; ++i)
    scored[i] = {cosine_distance(query, corpus.row(i)), i};
  std::partial_sort(scored.begin(), scored.begin() + k, scored.end());
  std::vector<std::size_t> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = scored[i].second;
  return out;
}

struct OverlapResult {
  std::size_t k = 0;
  std::vector<double> per_query;
  double mean = 0.0;
  ConcatPattern pattern = ConcatPattern::Repeat;
  std::size_t width = 1;
};

// Fraction of each query's top-k neighbors in the base corpus that survive
// in the variant corpus; the base top-k acts as the ground-truth proxy.
// Queries are row indices into the base matrix.
inline OverlapResult self_overlap(std::span<const std::size_t> queries,
                                  const EmbeddingMatrix& base,
                                  const EmbeddingMatrix& variant, std::size_t k,
                                  unsigned threads = 0) {
  if (base.rows() != variant.rows())
    throw LengthMismatchError(base.rows(), variant.rows());
  if (k > base.rows()) throw KTooLargeError(k, base.rows());
  OverlapResult result;
  result.k = k;
  result.per_query.assign(queries.size(), 0.0);
  parallel_for(queries.size(), threads, [&](std::size_t qi) {
    auto query = base.row(queries[qi]);
    auto in_base = topk(query, base, k);
    auto in_variant = topk(query, variant, k);
    std::sort(in_base.begin(), in_base.end());
    std::sort(in_variant.begin(), in_variant.end());
    std::vector<std::size_t> common;
    std::set_intersection(in_base.begin(), in_base.end(), in_variant.begin(),
                          in_variant.end(), std::back_inserter(common));
    result.per_query[qi] =
        static_cast<double>(common.size()) / static_cast<double>(k);
  });
  KahanSum acc;
  for (double f : result.per_query) acc.add(f);
  result.mean = result.per_query.empty()
                    ? 0.0
                    : acc.value() / static_cast<double>(result.per_query.size());
  return result;
}

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

inline Prf boundary_prf(const std::set<std::size_t>& gold,
                        const std::set<std::size_t>& pred) {
  std::vector<std::size_t> common;
  std::set_intersection(gold.begin(), gold.end(), pred.begin(), pred.end(),
                        std::back_inserter(common));
  double hits = static_cast<double>(common.size());
  Prf out;
  out.precision = pred.empty() ? (gold.empty() ? 1.0 : 0.0)
                               : hits / static_cast<double>(pred.size());
  out.recall = gold.empty() ? (pred.empty() ? 1.0 : 0.0)
                            : hits / static_cast<double>(gold.size());
  out.f1 = (out.precision + out.recall) > 0.0
               ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
               : 0.0;
  return out;
}

namespace detail {

// prefix[j] = number of boundaries at positions < j.
inline std::vector<std::size_t> boundary_prefix(const std::set<std::size_t>& b,
                                                std::size_t n) {
  std::vector<std::size_t> prefix(n + 1, 0);
  for (std::size_t pos : b)
    if (pos + 1 <= n) ++prefix[pos + 1];
  for (std::size_t j = 1; j <= n; ++j) prefix[j] += prefix[j - 1];
  return prefix;
}

// Half the mean gold segment length, at least 2.
inline std::size_t auto_window(const std::set<std::size_t>& gold,
                               std::size_t n) {
  double mean_seg =
      static_cast<double>(n) / static_cast<double>(gold.size() + 1);
  auto w = static_cast<std::size_t>(std::llround(mean_seg / 2.0));
  return std::max<std::size_t>(2, w);
}

}  // namespace detail

// Same-segment probe error rate: positions i and i+w are in the same segment
// iff no boundary lies in [i, i+w-1]; an error is a gold/pred disagreement.
inline double pk_metric(const std::set<std::size_t>& gold,
                        const std::set<std::size_t>& pred, std::size_t n,
                        std::size_t window = 0) {
  std::size_t w = window == 0 ? detail::auto_window(gold, n) : window;
  if (w >= n) throw WindowTooLargeError(w, n);
  auto gp = detail::boundary_prefix(gold, n);
  auto pp = detail::boundary_prefix(pred, n);
  std::size_t errors = 0;
  std::size_t probes = n - w;
  for (std::size_t i = 0; i < probes; ++i) {
    bool gold_same = gp[i + w] - gp[i] == 0;
    bool pred_same = pp[i + w] - pp[i] == 0;
    if (gold_same != pred_same) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(probes);
}

// Boundary-count comparison over the same sliding windows: an error is a
// window where gold and pred contain different numbers of boundaries.
inline double window_diff(const std::set<std::size_t>& gold,
                          const std::set<std::size_t>& pred, std::size_t n,
                          std::size_t window = 0) {
  std::size_t w = window == 0 ? detail::auto_window(gold, n) : window;
  if (w >= n) throw WindowTooLargeError(w, n);
  auto gp = detail::boundary_prefix(gold, n);
  auto pp = detail::boundary_prefix(pred, n);
  std::size_t errors = 0;
  std::size_t probes = n - w;
  for (std::size_t i = 0; i < probes; ++i) {
    if (gp[i + w] - gp[i] != pp[i + w] - pp[i]) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(probes);
}

// Mean and population variance of per-chunk sentence counts.
inline std::pair<double, double> chunk_stats(const Chunking& chunking) {
  if (chunking.chunks.empty()) throw EmptyChunkingError();
  auto sizes = chunking.chunk_sizes();
  double count = static_cast<double>(sizes.size());
  double mean = 0.0;
  for (std::size_t s : sizes) mean += static_cast<double>(s);
  mean /= count;
  double var = 0.0;
  for (std::size_t s : sizes) {
    double d = static_cast<double>(s) - mean;
    var += d * d;
  }
  var /= count;
  return {mean, var};
}

struct SegmentationReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double pk = 0.0;
  double window_diff = 0.0;
  double avg_sents = 0.0;
  double var_sents = 0.0;
};

inline SegmentationReport evaluate_segmentation(
    const std::set<std::size_t>& gold, const Chunking& pred, std::size_t n,
    std::size_t window = 0) {
  SegmentationReport report;
  Prf prf = boundary_prf(gold, pred.boundaries);
  report.precision = prf.precision;
  report.recall = prf.recall;
  report.f1 = prf.f1;
  report.pk = pk_metric(gold, pred.boundaries, n, window);
  report.window_diff = semshift::window_diff(gold, pred.boundaries, n, window);
  auto [avg, var] = chunk_stats(pred);
  report.avg_sents = avg;
  report.var_sents = var;
  return report;
}

}  // namespace semshift
