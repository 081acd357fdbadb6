#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <openssl/evp.h>

#include "semshift/errors.hpp"

namespace semshift {

// splitmix64: the usual finalizer-style generator. Used everywhere we need a
// deterministic stream that is independent of platform library internals.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL + (stream << 1));
  splitmix64_next(s);
  return splitmix64_next(s);
}

// Small deterministic PRNG with per-(seed, stream) construction so parallel
// callers cannot perturb each other's draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix_seed(seed, stream)) {}

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  // Uniform in [0, n) via the multiply-shift reduction.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  double next_double() {  // [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller.
  double next_gaussian() {
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::uint64_t state_;
};

// Kahan-compensated accumulator for the long pairwise sums.
class KahanSum {
 public:
  void add(double x) {
    double y = x - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Percentile with linear interpolation between closest ranks; p in (0, 100].
inline double percentile_linear(std::vector<double> values, double p) {
  if (values.empty()) throw EmptyInputError();
  std::sort(values.begin(), values.end());
  if (values.size() == 1) return values[0];
  double rank = (p / 100.0) * static_cast<double>(values.size() - 1);
  rank = std::clamp(rank, 0.0, static_cast<double>(values.size() - 1));
  auto lo = static_cast<std::size_t>(rank);
  if (lo + 1 >= values.size()) return values.back();
  double frac = rank - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

// Whitespace-delimited token count.
inline long count_tokens(std::string_view text) {
  long count = 0;
  bool in_token = false;
  for (char c : text) {
    bool ws = (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
               c == '\v');
    if (!ws && !in_token) ++count;
    in_token = !ws;
  }
  return count;
}

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw InternalError("SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

// Chunked index-parallel map. Each worker writes only to its own indices, so
// results do not depend on the thread count.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t begin = static_cast<std::size_t>(t) * chunk;
    std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace semshift
