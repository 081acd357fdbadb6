#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "semshift/corpus.hpp"
#include "semshift/embedding.hpp"
#include "semshift/errors.hpp"
#include "semshift/geometry.hpp"
#include "semshift/util.hpp"

namespace semshift {

struct ShiftMeasures {
  double local = 0.0;  // sum of adjacent cosine distances
  double disp = 0.0;   // mean pairwise cosine distance (Disp(1) = 0)
  double shift = 0.0;  // local * disp
};

// Incremental accumulator for Local/Disp/Shift of a growing segment.
// Each push costs O(d): the new pairwise distances against all existing
// members collapse to k - e.sum via the running vector sum of unit rows.
class ShiftState {
 public:
  std::size_t size() const { return count_; }
  std::size_t dim() const { return sum_.size(); }

  template <typename T>
  void push(std::span<const T> e) {
    auto u = to_unit(e);
    double local_inc = 0.0, pair_inc = 0.0;
    increments(u, local_inc, pair_inc);
    local_.add(local_inc);
    pairs_.add(pair_inc);
    if (sum_.empty()) sum_.assign(u.size(), 0.0);
    for (std::size_t j = 0; j < u.size(); ++j) sum_[j] += u[j];
    last_ = std::move(u);
    ++count_;
  }

  void push(const std::vector<double>& e) { push(std::span<const double>(e)); }
  void push(const std::vector<float>& e) { push(std::span<const float>(e)); }

  // Values of the hypothetical state after pushing e, without mutating.
  // Shares the exact accumulation path with push, so peek-then-push and
  // clone-then-push agree bit for bit.
  template <typename T>
  ShiftMeasures peek(std::span<const T> e) const {
    auto u = to_unit(e);
    double local_inc = 0.0, pair_inc = 0.0;
    increments(u, local_inc, pair_inc);
    KahanSum local = local_;
    KahanSum pairs = pairs_;
    local.add(local_inc);
    pairs.add(pair_inc);
    return measures_from(count_ + 1, local.value(), pairs.value());
  }

  ShiftMeasures peek(const std::vector<double>& e) const {
    return peek(std::span<const double>(e));
  }
  ShiftMeasures peek(const std::vector<float>& e) const {
    return peek(std::span<const float>(e));
  }

  double local() const { return local_.value(); }
  double disp() const {
    return measures_from(count_, local_.value(), pairs_.value()).disp;
  }
  double shift() const {
    return measures_from(count_, local_.value(), pairs_.value()).shift;
  }
  ShiftMeasures measures() const {
    return measures_from(count_, local_.value(), pairs_.value());
  }

  void reset() { *this = ShiftState(); }

 private:
  template <typename T>
  std::vector<double> to_unit(std::span<const T> e) const {
    if (count_ > 0 && e.size() != sum_.size())
      throw DimensionMismatchError(sum_.size(), e.size());
    double norm = 0.0;
    for (auto x : e) norm += static_cast<double>(x) * static_cast<double>(x);
    norm = std::sqrt(norm);
    if (std::abs(norm - 1.0) > 1e-4) throw NotNormalizedError(norm);
    std::vector<double> u(e.size());
    for (std::size_t j = 0; j < e.size(); ++j)
      u[j] = static_cast<double>(e[j]) / norm;
    return u;
  }

  void increments(const std::vector<double>& u, double& local_inc,
                  double& pair_inc) const {
    if (count_ == 0) {
      local_inc = 0.0;
      pair_inc = 0.0;
      return;
    }
    local_inc = cosine_distance(std::span<const double>(last_),
                                std::span<const double>(u));
    double s = detail::dot(std::span<const double>(u),
                           std::span<const double>(sum_));
    pair_inc = std::clamp(static_cast<double>(count_) - s, 0.0,
                          2.0 * static_cast<double>(count_));
  }

  static ShiftMeasures measures_from(std::size_t k, double local,
                                     double pairs) {
    ShiftMeasures m;
    m.local = local;
    m.disp = k >= 2 ? 2.0 * pairs /
                          (static_cast<double>(k) * static_cast<double>(k - 1))
                    : 0.0;
    m.shift = m.local * m.disp;
    return m;
  }

  std::size_t count_ = 0;
  std::vector<double> last_;
  std::vector<double> sum_;
  KahanSum local_;
  KahanSum pairs_;
};

// Batch evaluation of an ordered sequence of unit rows.
inline ShiftMeasures shift_eval(const EmbeddingMatrix& rows) {
  if (rows.rows() == 0) throw EmptyInputError();
  ShiftState state;
  for (std::size_t i = 0; i < rows.rows(); ++i) state.push(rows.row(i));
  return state.measures();
}

inline ShiftMeasures shift_eval(const EmbeddingMatrix& rows,
                                std::span<const std::size_t> indices) {
  if (indices.empty()) throw EmptyInputError();
  ShiftState state;
  for (std::size_t idx : indices) state.push(rows.row(idx));
  return state.measures();
}

struct HopProfile {
  std::vector<std::size_t> hops;
  std::vector<double> mean_shift;
  ConcatPattern pattern = ConcatPattern::Repeat;
  std::size_t width = 1;
};

// Reading of "shift at hop distance h" for a unit's member sentences.
// Prefix: Shift over the first h+1 members. Pairwise: Shift over the
// two-element sequence (member 0, member h).
enum class HopMode { Prefix, Pairwise };

// Mean shift per hop 1..H over all units of a variant. Units with fewer than
// h+1 members (shrunken sequential tails) do not contribute at hop h.
inline HopProfile hop_profile(const ConcatVariant& variant,
                              const EmbeddingMatrix& sent_embs, std::size_t H,
                              HopMode mode = HopMode::Prefix) {
  if (H < 1 || H + 1 > variant.width) throw HopTooLargeError(H, variant.width);
  for (const auto& members : variant.unit_members)
    for (std::size_t idx : members)
      if (idx >= sent_embs.rows())
        throw InputError("variant member index out of range");

  std::vector<KahanSum> sums(H);
  std::vector<std::size_t> counts(H, 0);
  for (const auto& members : variant.unit_members) {
    if (mode == HopMode::Prefix) {
      ShiftState state;
      std::size_t limit = std::min(members.size(), H + 1);
      for (std::size_t j = 0; j < limit; ++j) {
        state.push(sent_embs.row(members[j]));
        if (j >= 1) {
          sums[j - 1].add(state.shift());
          ++counts[j - 1];
        }
      }
    } else {
      for (std::size_t h = 1; h <= H && h < members.size(); ++h) {
        ShiftState state;
        state.push(sent_embs.row(members[0]));
        state.push(sent_embs.row(members[h]));
        sums[h - 1].add(state.shift());
        ++counts[h - 1];
      }
    }
  }

  HopProfile profile;
  profile.pattern = variant.pattern;
  profile.width = variant.width;
  for (std::size_t h = 1; h <= H; ++h) {
    profile.hops.push_back(h);
    double mean = counts[h - 1] > 0
                      ? sums[h - 1].value() / static_cast<double>(counts[h - 1])
                      : 0.0;
    profile.mean_shift.push_back(mean);
  }
  return profile;
}

}  // namespace semshift
