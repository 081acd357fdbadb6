#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "semshift/corpus.hpp"
#include "semshift/embedding.hpp"
#include "semshift/errors.hpp"
#include "semshift/shift.hpp"
#include "semshift/util.hpp"

namespace semshift {

using TokenCounter = std::function<long(const std::string&)>;

inline TokenCounter whitespace_token_counter() {
  return [](const std::string& s) { return count_tokens(s); };
}

struct SplitterConfig {
  double shift_percentile = 50.0;  // p in (0, 100]
  std::size_t window_radius = 2;   // b, sentences
  long token_cap = 512;            // T
  std::size_t min_sentences = 1;   // m
  // Resolved threshold; NaN means "estimate per document".
  double tau = std::numeric_limits<double>::quiet_NaN();

  void validate() const {
    if (!(shift_percentile > 0.0 && shift_percentile <= 100.0))
      throw InputError("shift percentile must lie in (0, 100]");
    if (window_radius < 1) throw InputError("window radius must be >= 1");
    if (token_cap < 1) throw InputError("token cap must be >= 1");
    if (min_sentences < 1) throw InputError("min sentences must be >= 1");
  }
};

struct ChunkSpan {
  std::size_t start = 0;  // first sentence index
  std::size_t end = 0;    // last sentence index, inclusive
  std::size_t size() const { return end - start + 1; }
};

struct Chunking {
  std::set<std::size_t> boundaries;
  std::vector<ChunkSpan> chunks;

  static Chunking from_boundaries(std::size_t n,
                                  std::set<std::size_t> boundaries) {
    if (n == 0) throw EmptyInputError();
    for (std::size_t b : boundaries)
      if (b + 1 >= n)
        throw InternalError("boundary " + std::to_string(b) +
                            " out of range for n=" + std::to_string(n));
    Chunking c;
    c.boundaries = std::move(boundaries);
    std::size_t start = 0;
    for (std::size_t b : c.boundaries) {
      c.chunks.push_back({start, b});
      start = b + 1;
    }
    c.chunks.push_back({start, n - 1});
    return c;
  }

  std::vector<std::size_t> chunk_sizes() const {
    std::vector<std::size_t> out;
    out.reserve(chunks.size());
    for (const auto& c : chunks) out.push_back(c.size());
    return out;
  }
};

// Window-shift threshold: for every position t, Shift over the rows in
// [t-b, t+b] clipped to the range; tau is the linear-interpolation
// percentile p of those values. Smaller p gives a smaller tau and more cuts.
inline double estimate_tau(const EmbeddingMatrix& sent_embs, double p,
                           std::size_t b, std::size_t lo = 0,
                           std::size_t hi = std::numeric_limits<std::size_t>::max()) {
  hi = std::min(hi, sent_embs.rows());
  if (hi <= lo || hi - lo < 2) throw TooFewRowsError(hi > lo ? hi - lo : 0);
  if (b < 1) throw InputError("window radius must be >= 1");
  std::size_t n = hi - lo;
  std::vector<double> window_shifts(n);
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t wlo = t >= b ? t - b : 0;
    std::size_t whi = std::min(n - 1, t + b);
    ShiftState state;
    for (std::size_t j = wlo; j <= whi; ++j) state.push(sent_embs.row(lo + j));
    window_shifts[t] = state.shift();
  }
  return percentile_linear(std::move(window_shifts), p);
}

// Online splitter for one document. Sentences arrive one at a time; cut
// decisions follow the rule order: token cap first, then the shift test
// (which only fires once the chunk holds at least min_sentences).
class ShiftSplitterStream {
 public:
  ShiftSplitterStream(double tau, long token_cap, std::size_t min_sentences)
      : tau_(tau), token_cap_(token_cap), min_sentences_(min_sentences) {}

  // Returns true when a boundary was emitted immediately before this
  // sentence (i.e. the previous chunk was closed).
  bool push(long sentence_tokens, std::span<const float> row) {
    bool cut = false;
    if (chunk_len_ >= 1 && chunk_tokens_ + sentence_tokens > token_cap_) {
      cut = true;
      reset_chunk();
    }
    if (chunk_len_ >= min_sentences_ && state_.peek(row).shift > tau_) {
      cut = true;
      reset_chunk();
    }
    state_.push(row);
    chunk_tokens_ += sentence_tokens;
    ++chunk_len_;
    return cut;
  }

  std::size_t chunk_len() const { return chunk_len_; }

 private:
  void reset_chunk() {
    state_.reset();
    chunk_tokens_ = 0;
    chunk_len_ = 0;
  }

  ShiftState state_;
  double tau_;
  long token_cap_;
  std::size_t min_sentences_;
  long chunk_tokens_ = 0;
  std::size_t chunk_len_ = 0;
};

namespace detail {

// Contiguous [lo, hi) ranges of equal doc_index.
inline std::vector<std::pair<std::size_t, std::size_t>> document_ranges(
    const SentenceSequence& seq) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t lo = 0;
  for (std::size_t i = 1; i <= seq.size(); ++i) {
    if (i == seq.size() || seq.doc_index[i] != seq.doc_index[lo]) {
      out.emplace_back(lo, i);
      lo = i;
    }
  }
  return out;
}

}  // namespace detail

// Shift-aware online chunking. The threshold is taken from cfg.tau when set,
// otherwise estimated per document from window shifts. Documents never share
// a chunk.
inline Chunking split_shift(const SentenceSequence& seq,
                            const EmbeddingMatrix& sent_embs,
                            const SplitterConfig& cfg,
                            const TokenCounter& tokens = whitespace_token_counter()) {
  cfg.validate();
  if (seq.size() != sent_embs.rows())
    throw LengthMismatchError(seq.size(), sent_embs.rows());
  std::set<std::size_t> boundaries;
  auto ranges = detail::document_ranges(seq);
  for (auto [lo, hi] : ranges) {
    double tau = cfg.tau;
    if (std::isnan(tau)) {
      tau = hi - lo >= 2 ? estimate_tau(sent_embs, cfg.shift_percentile,
                                        cfg.window_radius, lo, hi)
                         : 0.0;
    }
    ShiftSplitterStream stream(tau, cfg.token_cap, cfg.min_sentences);
    for (std::size_t i = lo; i < hi; ++i) {
      if (stream.push(tokens(seq.sentences[i]), sent_embs.row(i)) && i > lo)
        boundaries.insert(i - 1);
    }
    if (hi < seq.size()) boundaries.insert(hi - 1);
  }
  return Chunking::from_boundaries(seq.size(), std::move(boundaries));
}

// Fixed-length baseline: chunks of exactly k sentences, final chunk shorter.
inline Chunking split_fixed(const SentenceSequence& seq, std::size_t k) {
  if (k < 1) throw InputError("chunk size must be >= 1");
  std::size_t n = seq.size();
  if (n == 0) throw EmptyInputError();
  std::set<std::size_t> boundaries;
  for (std::size_t b = k; b < n; b += k) boundaries.insert(b - 1);
  return Chunking::from_boundaries(n, std::move(boundaries));
}

// Adjacent-dissimilarity baseline: boundary wherever the distance between
// consecutive sentence embeddings exceeds the percentile threshold.
inline Chunking split_semantic(const SentenceSequence& seq,
                               const EmbeddingMatrix& sent_embs,
                               double percentile) {
  std::size_t n = seq.size();
  if (n != sent_embs.rows()) throw LengthMismatchError(n, sent_embs.rows());
  if (n < 2) throw TooFewRowsError(n);
  if (!(percentile >= 0.0 && percentile <= 100.0))
    throw InputError("percentile must lie in [0, 100]");
  std::vector<double> dists(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    dists[i] = cosine_distance(sent_embs.row(i), sent_embs.row(i + 1));
  double threshold = percentile_linear(dists, percentile);
  std::set<std::size_t> boundaries;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (dists[i] > threshold) boundaries.insert(i);
  return Chunking::from_boundaries(n, std::move(boundaries));
}

enum class SplitMethod { Fixed, Semantic, Shift };

inline const char* to_string(SplitMethod m) {
  switch (m) {
    case SplitMethod::Fixed: return "fixed";
    case SplitMethod::Semantic: return "semantic";
    case SplitMethod::Shift: return "shift";
  }
  return "?";
}

inline SplitMethod parse_method(std::string_view s) {
  if (s == "fixed") return SplitMethod::Fixed;
  if (s == "semantic") return SplitMethod::Semantic;
  if (s == "shift") return SplitMethod::Shift;
  throw InputError("unknown split method: " + std::string(s));
}

struct MatchResult {
  double parameter = 0.0;
  Chunking chunking;
  double avg_sents = 0.0;
  double var_sents = 0.0;
};

// Runs the method across the sweep and keeps the run whose mean chunk size
// is closest to the target; ties break toward smaller variance, then the
// smaller parameter. For Fixed the parameter is sentences-per-chunk, for
// Semantic/Shift it is the percentile.
inline MatchResult match_granularity(const SentenceSequence& seq,
                                     const EmbeddingMatrix& sent_embs,
                                     SplitMethod method, double target_avg,
                                     const std::vector<double>& sweep,
                                     SplitterConfig cfg = {},
                                     const TokenCounter& tokens =
                                         whitespace_token_counter()) {
  if (sweep.empty()) throw EmptyInputError();
  bool have_best = false;
  MatchResult best;
  for (double param : sweep) {
    Chunking c;
    switch (method) {
      case SplitMethod::Fixed: {
        auto k = static_cast<std::size_t>(std::llround(param));
        if (k < 1) throw InputError("fixed sweep value must be >= 1");
        c = split_fixed(seq, k);
        break;
      }
      case SplitMethod::Semantic:
        c = split_semantic(seq, sent_embs, param);
        break;
      case SplitMethod::Shift: {
        SplitterConfig run_cfg = cfg;
        run_cfg.shift_percentile = param;
        run_cfg.tau = std::numeric_limits<double>::quiet_NaN();
        c = split_shift(seq, sent_embs, run_cfg, tokens);
        break;
      }
    }
    double count = static_cast<double>(c.chunks.size());
    double avg = static_cast<double>(seq.size()) / count;
    double var = 0.0;
    for (std::size_t s : c.chunk_sizes()) {
      double d = static_cast<double>(s) - avg;
      var += d * d;
    }
    var /= count;
    bool better = !have_best;
    if (have_best) {
      double gap = std::abs(avg - target_avg);
      double best_gap = std::abs(best.avg_sents - target_avg);
      if (gap < best_gap) {
        better = true;
      } else if (gap == best_gap) {
        if (var < best.var_sents) {
          better = true;
        } else if (var == best.var_sents && param < best.parameter) {
          better = true;
        }
      }
    }
    if (better) {
      best = {param, std::move(c), avg, var};
      have_best = true;
    }
  }
  return best;
}

}  // namespace semshift
