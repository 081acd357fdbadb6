#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "semshift/corpus.hpp"
#include "semshift/embedding.hpp"
#include "semshift/errors.hpp"
#include "semshift/util.hpp"

namespace semshift {

struct SyntheticCorpus {
  SentenceSequence seq;
  EmbeddingMatrix embeddings;  // unit-normalized, one row per sentence
};

namespace detail {

inline std::vector<double> random_unit(Rng& rng, std::size_t d) {
  std::vector<double> v(d);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& x : v) {
      x = rng.next_gaussian();
      norm += x * x;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

inline void renormalize(std::vector<double>& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
}

}  // namespace detail

struct DriftCorpusConfig {
  std::size_t plateau_len = 10;  // sentences per topic plateau
  double step_angle = 0.8;      // topic-walk rotation per plateau, radians
  double global_weight = 0.55;  // shared anisotropy direction
  double topic_weight = 0.70;   // current topic direction
  double noise_weight = 0.45;   // per-sentence directional noise
};

// Seeded drift corpus: a global anisotropy direction plus a topic direction
// that random-walks on the sphere in plateau-sized steps, plus per-sentence
// directional noise. Sentences are distinct; embeddings are unit float32.
inline SyntheticCorpus make_drift_corpus(std::size_t n, std::size_t d,
                                         std::uint64_t seed,
                                         DriftCorpusConfig cfg = {}) {
  if (n == 0 || d < 2) throw InputError("drift corpus needs n >= 1, d >= 2");
  SyntheticCorpus corpus;
  corpus.embeddings = EmbeddingMatrix(d, "synthetic-drift");

  Rng topic_rng(seed, 1);
  Rng noise_rng(seed, 2);
  std::vector<double> global_dir = detail::random_unit(topic_rng, d);
  std::vector<double> topic_dir = detail::random_unit(topic_rng, d);

  std::vector<float> row(d);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && i % cfg.plateau_len == 0) {
      // Rotate the topic direction by step_angle toward a fresh direction.
      auto fresh = detail::random_unit(topic_rng, d);
      double proj = 0.0;
      for (std::size_t j = 0; j < d; ++j) proj += fresh[j] * topic_dir[j];
      std::vector<double> ortho(d);
      double norm = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        ortho[j] = fresh[j] - proj * topic_dir[j];
        norm += ortho[j] * ortho[j];
      }
      norm = std::sqrt(norm);
      if (norm > 1e-9) {
        double c = std::cos(cfg.step_angle), s = std::sin(cfg.step_angle);
        for (std::size_t j = 0; j < d; ++j)
          topic_dir[j] = c * topic_dir[j] + s * ortho[j] / norm;
        detail::renormalize(topic_dir);
      }
    }
    auto noise = detail::random_unit(noise_rng, d);
    std::vector<double> v(d);
    for (std::size_t j = 0; j < d; ++j)
      v[j] = cfg.global_weight * global_dir[j] + cfg.topic_weight * topic_dir[j] +
             cfg.noise_weight * noise[j];
    detail::renormalize(v);
    for (std::size_t j = 0; j < d; ++j) row[j] = static_cast<float>(v[j]);
    corpus.embeddings.append_row(std::span<const float>(row.data(), d));
    corpus.seq.sentences.push_back("synthetic sentence " + std::to_string(i));
    corpus.seq.doc_index.push_back(0);
  }
  return corpus;
}

// Orthogonal-topic seam corpus: paragraphs of identical one-hot sentence
// vectors, with the first paragraph longer so fixed-size chunking cannot
// align with the seams. Gold boundaries sit exactly at the topic changes.
inline SyntheticCorpus make_seam_corpus(std::size_t paragraphs,
                                        std::size_t paragraph_len = 3,
                                        std::size_t first_len = 4) {
  if (paragraphs < 2 || paragraph_len < 1 || first_len < 1)
    throw InputError("seam corpus needs >= 2 paragraphs of >= 1 sentence");
  std::size_t d = paragraphs;
  SyntheticCorpus corpus;
  corpus.embeddings = EmbeddingMatrix(d, "synthetic-seam");
  std::vector<float> row(d, 0.0f);
  std::size_t index = 0;
  for (std::size_t p = 0; p < paragraphs; ++p) {
    std::size_t len = p == 0 ? first_len : paragraph_len;
    row.assign(d, 0.0f);
    row[p] = 1.0f;
    for (std::size_t j = 0; j < len; ++j) {
      corpus.embeddings.append_row(std::span<const float>(row.data(), d));
      corpus.seq.sentences.push_back("topic " + std::to_string(p) +
                                     " sentence " + std::to_string(j));
      corpus.seq.doc_index.push_back(0);
      ++index;
    }
    if (p + 1 < paragraphs) corpus.seq.gold_boundaries.insert(index - 1);
  }
  return corpus;
}

// Pooled unit embedding: the normalized mean of a unit's member sentence
// embeddings, mirroring the convex-combination reading of encoder pooling.
inline EmbeddingMatrix pooled_unit_embeddings(const ConcatVariant& variant,
                                              const EmbeddingMatrix& sent_embs) {
  EmbeddingMatrix out(sent_embs.dim(), sent_embs.model_tag() + "+pooled");
  std::vector<float> row(sent_embs.dim());
  for (const auto& members : variant.unit_members) {
    if (members.empty()) throw EmptyInputError();
    std::vector<double> mean(sent_embs.dim(), 0.0);
    for (std::size_t idx : members) {
      if (idx >= sent_embs.rows())
        throw InputError("variant member index out of range");
      auto u = unit_row(sent_embs, idx);
      for (std::size_t j = 0; j < u.size(); ++j) mean[j] += u[j];
    }
    for (auto& x : mean) x /= static_cast<double>(members.size());
    double norm = 0.0;
    for (double x : mean) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-12) throw DegeneratePoolError();
    for (std::size_t j = 0; j < mean.size(); ++j)
      row[j] = static_cast<float>(mean[j] / norm);
    out.append_row(std::span<const float>(row.data(), row.size()));
  }
  return out;
}

}  // namespace semshift
