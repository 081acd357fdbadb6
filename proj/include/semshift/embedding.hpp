#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "semshift/errors.hpp"

namespace semshift {

// Row-per-unit float32 vectors. Storage stays float32 (matching common
// embedding dumps); all metric arithmetic downstream runs in float64.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t dim, std::string model_tag = {})
      : dim_(dim), model_tag_(std::move(model_tag)) {}

  std::size_t rows() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  bool normalized() const { return normalized_; }
  const std::string& model_tag() const { return model_tag_; }
  void set_model_tag(std::string tag) { model_tag_ = std::move(tag); }

  std::span<const float> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }

  void append_row(std::span<const float> v) {
    if (dim_ == 0) dim_ = v.size();
    if (v.size() != dim_) throw DimensionMismatchError(dim_, v.size());
    for (float x : v) {
      if (!std::isfinite(x))
        throw InputError("non-finite embedding entry at row " +
                         std::to_string(rows()));
    }
    data_.insert(data_.end(), v.begin(), v.end());
    normalized_ = false;
  }

  void append_row(const std::vector<float>& v) {
    append_row(std::span<const float>(v.data(), v.size()));
  }

  void append_row(const std::vector<double>& v) {
    std::vector<float> f(v.begin(), v.end());
    append_row(std::span<const float>(f.data(), f.size()));
  }

  const std::vector<float>& data() const { return data_; }

  friend EmbeddingMatrix normalize(const EmbeddingMatrix& m);

 private:
  std::size_t dim_ = 0;
  std::vector<float> data_;
  bool normalized_ = false;
  std::string model_tag_;
};

inline double row_norm(std::span<const float> v) {
  double s = 0.0;
  for (float x : v) s += static_cast<double>(x) * static_cast<double>(x);
  return std::sqrt(s);
}

// Divides each row by its Euclidean norm. Rows of (near-)exact zero are
// rejected rather than silently propagated.
inline EmbeddingMatrix normalize(const EmbeddingMatrix& m) {
  EmbeddingMatrix out(m.dim(), m.model_tag());
  std::vector<float> scratch(m.dim());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    double norm = row_norm(r);
    if (norm < 1e-12) throw ZeroVectorError(i);
    for (std::size_t j = 0; j < m.dim(); ++j)
      scratch[j] = static_cast<float>(static_cast<double>(r[j]) / norm);
    out.append_row(std::span<const float>(scratch.data(), scratch.size()));
  }
  out.normalized_ = true;
  return out;
}

// Reads a row into float64, renormalizing so downstream identities hold at
// float64 precision even though storage is float32.
inline std::vector<double> unit_row(const EmbeddingMatrix& m, std::size_t i) {
  auto r = m.row(i);
  double norm = row_norm(r);
  if (norm < 1e-12) throw ZeroVectorError(i);
  std::vector<double> out(r.size());
  for (std::size_t j = 0; j < r.size(); ++j)
    out[j] = static_cast<double>(r[j]) / norm;
  return out;
}

}  // namespace semshift
