#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "semshift/corpus.hpp"
#include "semshift/embedding.hpp"
#include "semshift/errors.hpp"
#include "semshift/evaluation.hpp"
#include "semshift/geometry.hpp"
#include "semshift/io.hpp"
#include "semshift/provider.hpp"
#include "semshift/shift.hpp"
#include "semshift/splitter.hpp"
#include "semshift/synthetic.hpp"
#include "semshift/util.hpp"

namespace semshift {

// ---- embedding sources -----------------------------------------------------

// How experiments obtain vectors: either the pooled synthetic route (unit
// embedding = normalized member mean) or a real provider encoding each text.
class EmbeddingSource {
 public:
  virtual ~EmbeddingSource() = default;
  virtual EmbeddingMatrix embed_sentences(const SentenceSequence& seq) = 0;
  virtual EmbeddingMatrix embed_units(const ConcatVariant& variant,
                                      const EmbeddingMatrix& sent_embs) = 0;
  virtual std::vector<float> embed_group(const std::vector<std::size_t>& members,
                                         const std::string& joined,
                                         const EmbeddingMatrix& sent_embs) = 0;
};

class PooledSource : public EmbeddingSource {
 public:
  explicit PooledSource(EmbeddingMatrix sentence_embeddings)
      : sent_embs_(std::move(sentence_embeddings)) {}

  EmbeddingMatrix embed_sentences(const SentenceSequence& seq) override {
    if (seq.size() != sent_embs_.rows())
      throw LengthMismatchError(seq.size(), sent_embs_.rows());
    return sent_embs_;
  }

  EmbeddingMatrix embed_units(const ConcatVariant& variant,
                              const EmbeddingMatrix& sent_embs) override {
    return pooled_unit_embeddings(variant, sent_embs);
  }

  std::vector<float> embed_group(const std::vector<std::size_t>& members,
                                 const std::string&,
                                 const EmbeddingMatrix& sent_embs) override {
    std::vector<double> mean(sent_embs.dim(), 0.0);
    for (std::size_t idx : members) {
      auto u = unit_row(sent_embs, idx);
      for (std::size_t j = 0; j < u.size(); ++j) mean[j] += u[j];
    }
    double norm = 0.0;
    for (double x : mean) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-12) throw DegeneratePoolError();
    std::vector<float> out(mean.size());
    for (std::size_t j = 0; j < mean.size(); ++j)
      out[j] = static_cast<float>(mean[j] / norm);
    return out;
  }

 private:
  EmbeddingMatrix sent_embs_;
};

class ProviderSource : public EmbeddingSource {
 public:
  ProviderSource(EmbeddingProvider& provider, EmbeddingCache* cache,
                 std::string model_tag, std::size_t batch_size = 64,
                 std::string text_template = {})
      : provider_(provider),
        cache_(cache),
        model_tag_(std::move(model_tag)),
        batch_size_(batch_size),
        template_(std::move(text_template)) {}

  EmbeddingMatrix embed_sentences(const SentenceSequence& seq) override {
    return embed_all(seq.sentences);
  }

  EmbeddingMatrix embed_units(const ConcatVariant& variant,
                              const EmbeddingMatrix&) override {
    return embed_all(variant.units);
  }

  std::vector<float> embed_group(const std::vector<std::size_t>&,
                                 const std::string& joined,
                                 const EmbeddingMatrix&) override {
    auto m = embed_all({joined});
    auto r = m.row(0);
    return {r.begin(), r.end()};
  }

 private:
  EmbeddingMatrix embed_all(const std::vector<std::string>& texts) {
    EmbedRequest req{texts, model_tag_, batch_size_, template_};
    return normalize(embed_texts(req, provider_, cache_));
  }

  EmbeddingProvider& provider_;
  EmbeddingCache* cache_;
  std::string model_tag_;
  std::size_t batch_size_;
  std::string template_;
};

// ---- group sampling for the dilution validation ----------------------------

enum class Regime { Local, Medium, High };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::Local: return "local";
    case Regime::Medium: return "medium";
    case Regime::High: return "high";
  }
  return "?";
}

struct GroupSample {
  Regime regime = Regime::Local;
  std::vector<std::size_t> members;
};

namespace detail {

inline std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t m,
                                                std::size_t k) {
  std::set<std::size_t> chosen;
  // Floyd's algorithm.
  for (std::size_t j = m - k; j < m; ++j) {
    std::size_t t = rng.next_below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

}  // namespace detail

// Draws `count` groups of size k under one diversity regime:
// local = consecutive within a document, medium = non-adjacent (gap >= 2)
// within a document, high = uniform without replacement over the corpus.
inline std::vector<GroupSample> sample_groups(const SentenceSequence& seq,
                                              std::size_t k, Regime regime,
                                              std::size_t count,
                                              std::uint64_t seed) {
  if (k < 2) throw InputError("group size must be >= 2");
  auto ranges = detail::document_ranges(seq);
  std::vector<GroupSample> out;
  out.reserve(count);

  if (regime == Regime::High) {
    if (seq.size() < k) throw InputError("corpus smaller than group size");
    for (std::size_t s = 0; s < count; ++s) {
      Rng rng(seed, 0x8000000 + s);
      out.push_back({regime, detail::sample_distinct(rng, seq.size(), k)});
    }
    return out;
  }

  if (regime == Regime::Local) {
    std::vector<std::pair<std::size_t, std::size_t>> starts;  // (lo, n_starts)
    std::size_t total = 0;
    for (auto [lo, hi] : ranges) {
      if (hi - lo >= k) {
        starts.emplace_back(lo, hi - lo - k + 1);
        total += hi - lo - k + 1;
      }
    }
    if (total == 0) throw InputError("no document long enough for local groups");
    for (std::size_t s = 0; s < count; ++s) {
      Rng rng(seed, 0x4000000 + s);
      std::size_t pick = rng.next_below(total);
      std::size_t start = 0;
      for (auto [lo, n_starts] : starts) {
        if (pick < n_starts) {
          start = lo + pick;
          break;
        }
        pick -= n_starts;
      }
      GroupSample g{regime, {}};
      for (std::size_t j = 0; j < k; ++j) g.members.push_back(start + j);
      out.push_back(std::move(g));
    }
    return out;
  }

  // Medium: uniform over all gap>=2 configurations across documents. With
  // picks c_1<...<c_k from [0, L-k], members are c_i + i.
  std::vector<std::pair<std::size_t, double>> weighted;  // (lo, config count)
  double total_weight = 0.0;
  for (auto [lo, hi] : ranges) {
    std::size_t len = hi - lo;
    if (len < 2 * k - 1) continue;
    double configs = 1.0;  // C(len-k+1, k)
    for (std::size_t j = 0; j < k; ++j)
      configs *= static_cast<double>(len - k + 1 - j) / static_cast<double>(j + 1);
    weighted.emplace_back(lo, configs);
    total_weight += configs;
  }
  if (weighted.empty())
    throw InputError("no document long enough for medium groups");
  for (std::size_t s = 0; s < count; ++s) {
    Rng rng(seed, 0x6000000 + s);
    double u = rng.next_double() * total_weight;
    std::size_t lo = weighted.back().first;
    for (auto [range_lo, w] : weighted) {
      if (u < w) {
        lo = range_lo;
        break;
      }
      u -= w;
    }
    std::size_t len = 0;
    for (auto [rl, rh] : ranges)
      if (rl == lo) len = rh - rl;
    auto picks = detail::sample_distinct(rng, len - k + 1, k);
    GroupSample g{regime, {}};
    for (std::size_t j = 0; j < k; ++j) g.members.push_back(lo + picks[j] + j);
    out.push_back(std::move(g));
  }
  return out;
}

// Structural regime check, assertable from indices alone.
inline bool regime_valid(const GroupSample& g, const SentenceSequence& seq) {
  if (g.members.empty()) return false;
  switch (g.regime) {
    case Regime::Local:
      for (std::size_t j = 1; j < g.members.size(); ++j) {
        if (g.members[j] != g.members[j - 1] + 1) return false;
        if (seq.doc_index[g.members[j]] != seq.doc_index[g.members[0]])
          return false;
      }
      return true;
    case Regime::Medium:
      for (std::size_t j = 1; j < g.members.size(); ++j) {
        if (g.members[j] < g.members[j - 1] + 2) return false;
        if (seq.doc_index[g.members[j]] != seq.doc_index[g.members[0]])
          return false;
      }
      return true;
    case Regime::High: {
      std::set<std::size_t> s(g.members.begin(), g.members.end());
      return s.size() == g.members.size() &&
             *s.rbegin() < seq.size();
    }
  }
  return false;
}

// ---- experiment spec -------------------------------------------------------

struct ExperimentSpec {
  std::string kind;  // theorem1 | mpd | hops | overlap | splitter-bench
  std::string corpus_path;
  bool synthetic = false;
  std::string model_tag = "synthetic-pooled";
  std::uint64_t seed = 42;
  std::string out_dir;
  unsigned threads = 0;

  std::size_t group_size = 10;
  std::size_t samples_per_regime = 200;
  std::vector<std::size_t> widths = {1, 2, 5, 10};
  std::size_t hop_width = 10;
  std::size_t hop_max = 9;
  std::vector<std::size_t> k_cutoffs = {1, 3, 5};
  std::size_t query_count = 1000;
  std::vector<double> targets = {3, 5, 7};
  std::vector<double> percentile_sweep = {1, 2, 5, 10, 20, 30, 40,
                                          50, 60, 70, 80, 90};
  std::size_t curve_step = 0;   // 0 -> n/100
  std::size_t eval_window = 0;  // 0 -> auto
  bool exclude_doc_end_boundaries = false;

  std::size_t synth_n = 2000;
  std::size_t synth_dim = 64;
  std::size_t seam_paragraphs = 34;

  SplitterConfig splitter;

  nlohmann::json to_json() const {
    return nlohmann::json{
        {"kind", kind},
        {"corpus", corpus_path},
        {"synthetic", synthetic},
        {"model_tag", model_tag},
        {"seed", seed},
        {"threads", threads},
        {"group_size", group_size},
        {"samples_per_regime", samples_per_regime},
        {"widths", widths},
        {"hop_width", hop_width},
        {"hop_max", hop_max},
        {"k_cutoffs", k_cutoffs},
        {"query_count", query_count},
        {"targets", targets},
        {"percentile_sweep", percentile_sweep},
        {"curve_step", curve_step},
        {"eval_window", eval_window},
        {"exclude_doc_end_boundaries", exclude_doc_end_boundaries},
        {"synth_n", synth_n},
        {"synth_dim", synth_dim},
        {"seam_paragraphs", seam_paragraphs},
        {"splitter",
         {{"percentile", splitter.shift_percentile},
          {"radius", splitter.window_radius},
          {"token_cap", splitter.token_cap},
          {"min_sentences", splitter.min_sentences}}}};
  }

  static ExperimentSpec from_json(const nlohmann::json& j) {
    ExperimentSpec s;
    s.kind = j.value("kind", std::string());
    s.corpus_path = j.value("corpus", std::string());
    s.synthetic = j.value("synthetic", false);
    s.model_tag = j.value("model_tag", std::string("synthetic-pooled"));
    s.seed = j.value("seed", std::uint64_t{42});
    s.threads = j.value("threads", 0u);
    s.group_size = j.value("group_size", std::size_t{10});
    s.samples_per_regime = j.value("samples_per_regime", std::size_t{200});
    s.widths = j.value("widths", s.widths);
    s.hop_width = j.value("hop_width", std::size_t{10});
    s.hop_max = j.value("hop_max", std::size_t{9});
    s.k_cutoffs = j.value("k_cutoffs", s.k_cutoffs);
    s.query_count = j.value("query_count", std::size_t{1000});
    s.targets = j.value("targets", s.targets);
    s.percentile_sweep = j.value("percentile_sweep", s.percentile_sweep);
    s.curve_step = j.value("curve_step", std::size_t{0});
    s.eval_window = j.value("eval_window", std::size_t{0});
    s.exclude_doc_end_boundaries = j.value("exclude_doc_end_boundaries", false);
    s.synth_n = j.value("synth_n", std::size_t{2000});
    s.synth_dim = j.value("synth_dim", std::size_t{64});
    s.seam_paragraphs = j.value("seam_paragraphs", std::size_t{34});
    if (j.contains("splitter")) {
      const auto& sp = j["splitter"];
      s.splitter.shift_percentile = sp.value("percentile", 50.0);
      s.splitter.window_radius = sp.value("radius", std::size_t{2});
      s.splitter.token_cap = sp.value("token_cap", 512L);
      s.splitter.min_sentences = sp.value("min_sentences", std::size_t{1});
    }
    return s;
  }
};

// ---- results ---------------------------------------------------------------

struct Theorem1Row {
  Regime regime;
  double c_pair;
  double c_mean;
};

struct Theorem1Result {
  std::vector<Theorem1Row> rows;
  double rho = 0.0;
  double tau = 0.0;
  bool degenerate = false;
};

struct MpdStudyCell {
  ConcatPattern pattern;
  std::size_t width;
  double mpd_value;
  MpdCurve curve;
};

struct MpdStudyResult {
  std::vector<MpdStudyCell> cells;

  double value(ConcatPattern p, std::size_t w) const {
    for (const auto& c : cells)
      if (c.pattern == p && c.width == w) return c.mpd_value;
    throw InternalError("missing mpd study cell");
  }
};

struct HopStudyResult {
  std::vector<HopProfile> profiles;

  const HopProfile& profile(ConcatPattern p) const {
    for (const auto& pr : profiles)
      if (pr.pattern == p) return pr;
    throw InternalError("missing hop profile");
  }
};

struct OverlapCell {
  ConcatPattern pattern;
  std::size_t width;
  std::size_t k;
  double mean_overlap;
};

struct OverlapStudyResult {
  std::vector<OverlapCell> cells;

  double value(ConcatPattern p, std::size_t w, std::size_t k) const {
    for (const auto& c : cells)
      if (c.pattern == p && c.width == w && c.k == k) return c.mean_overlap;
    throw InternalError("missing overlap cell");
  }
};

struct SplitterBenchRow {
  double target;
  SplitMethod method;
  double parameter;
  SegmentationReport report;
};

struct SplitterBenchResult {
  std::vector<SplitterBenchRow> rows;

  const SplitterBenchRow& row(double target, SplitMethod m) const {
    for (const auto& r : rows)
      if (r.target == target && r.method == m) return r;
    throw InternalError("missing splitter bench row");
  }
};

// ---- runners ---------------------------------------------------------------

namespace detail {

inline void maybe_manifest(const ExperimentSpec& spec) {
  if (spec.out_dir.empty()) return;
  write_manifest(spec.out_dir, spec.to_json(), spec.seed, spec.model_tag);
}

inline std::filesystem::path out_file(const ExperimentSpec& spec,
                                      const std::string& name) {
  return std::filesystem::path(spec.out_dir) / name;
}

inline void write_json(const ExperimentSpec& spec, const std::string& name,
                       const nlohmann::json& doc) {
  std::ofstream out(out_file(spec, name));
  out << doc.dump(2) << "\n";
}

}  // namespace detail

// Dilution validation: per regime, encode members separately and the joined
// group once; report (c_pair, c_mean) scatter rows plus rank correlations.
inline Theorem1Result run_theorem1(const ExperimentSpec& spec,
                                   const SentenceSequence& seq,
                                   EmbeddingSource& source) {
  auto sent_embs = source.embed_sentences(seq);
  Theorem1Result result;
  for (Regime regime : {Regime::Local, Regime::Medium, Regime::High}) {
    auto groups = sample_groups(seq, spec.group_size, regime,
                                spec.samples_per_regime, spec.seed);
    for (const auto& g : groups) {
      EmbeddingMatrix members(sent_embs.dim());
      std::string joined;
      for (std::size_t idx : g.members) {
        members.append_row(sent_embs.row(idx));
        if (!joined.empty()) joined.push_back(' ');
        joined += seq.sentences[idx];
      }
      auto text_vec = source.embed_group(g.members, joined, sent_embs);
      auto stats = dilution_stats(
          members, std::span<const float>(text_vec.data(), text_vec.size()));
      result.rows.push_back({regime, stats.c_pair, stats.c_mean});
    }
  }
  std::vector<double> xs, ys;
  xs.reserve(result.rows.size());
  for (const auto& r : result.rows) {
    xs.push_back(r.c_pair);
    ys.push_back(r.c_mean);
  }
  try {
    result.rho = spearman_rho(xs, ys);
    result.tau = kendall_tau(xs, ys);
  } catch (const DegenerateInputError&) {
    result.degenerate = true;
  }

  if (!spec.out_dir.empty()) {
    detail::maybe_manifest(spec);
    CsvWriter rows(detail::out_file(spec, "theorem1.csv"),
                   {"regime", "c_pair", "c_mean"});
    for (const auto& r : result.rows)
      rows.write_row({to_string(r.regime), format_g6(r.c_pair),
                      format_g6(r.c_mean)});
    CsvWriter summary(detail::out_file(spec, "theorem1_summary.csv"),
                      {"spearman_rho", "kendall_tau", "samples", "degenerate"});
    summary.write_row({format_g6(result.rho), format_g6(result.tau),
                       std::to_string(result.rows.size()),
                       result.degenerate ? "1" : "0"});
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& r : result.rows)
      rows_json.push_back({{"regime", to_string(r.regime)},
                           {"c_pair", r.c_pair},
                           {"c_mean", r.c_mean}});
    detail::write_json(spec, "theorem1.json",
                       {{"rows", rows_json},
                        {"spearman_rho", result.rho},
                        {"kendall_tau", result.tau},
                        {"degenerate", result.degenerate}});
  }
  return result;
}

// MPD for every (pattern, width) variant plus incremental curves.
inline MpdStudyResult run_mpd_study(const ExperimentSpec& spec,
                                    const SentenceSequence& seq,
                                    EmbeddingSource& source) {
  auto sent_embs = source.embed_sentences(seq);
  std::size_t step = spec.curve_step > 0
                         ? spec.curve_step
                         : std::max<std::size_t>(1, seq.size() / 100);
  MpdStudyResult result;
  for (ConcatPattern pattern : {ConcatPattern::Repeat, ConcatPattern::Sequential,
                                ConcatPattern::Random}) {
    for (std::size_t width : spec.widths) {
      auto variant = make_variant(seq, pattern, width, spec.seed);
      auto units = source.embed_units(variant, sent_embs);
      MpdStudyCell cell{pattern, width, mpd(units), mpd_curve(units, step)};
      result.cells.push_back(std::move(cell));
    }
  }
  if (!spec.out_dir.empty()) {
    detail::maybe_manifest(spec);
    CsvWriter table(detail::out_file(spec, "mpd.csv"),
                    {"pattern", "width", "mpd"});
    for (const auto& c : result.cells)
      table.write_row({to_string(c.pattern), std::to_string(c.width),
                       format_g6(c.mpd_value)});
    CsvWriter curves(detail::out_file(spec, "mpd_curves.csv"),
                     {"pattern", "width", "prefix_size", "mpd"});
    for (const auto& c : result.cells)
      for (std::size_t i = 0; i < c.curve.prefix_sizes.size(); ++i)
        curves.write_row({to_string(c.pattern), std::to_string(c.width),
                          std::to_string(c.curve.prefix_sizes[i]),
                          format_g6(c.curve.mpd_values[i])});
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : result.cells)
      cells.push_back({{"pattern", to_string(c.pattern)},
                       {"width", c.width},
                       {"mpd", c.mpd_value}});
    detail::write_json(spec, "mpd.json", {{"cells", cells}});
  }
  return result;
}

// Hop-distance shift profiles over the wide variant of each pattern.
inline HopStudyResult run_hop_study(const ExperimentSpec& spec,
                                    const SentenceSequence& seq,
                                    EmbeddingSource& source,
                                    HopMode mode = HopMode::Prefix) {
  auto sent_embs = source.embed_sentences(seq);
  std::size_t hops = std::min(spec.hop_max, spec.hop_width - 1);
  HopStudyResult result;
  for (ConcatPattern pattern : {ConcatPattern::Repeat, ConcatPattern::Sequential,
                                ConcatPattern::Random}) {
    auto variant = make_variant(seq, pattern, spec.hop_width, spec.seed);
    result.profiles.push_back(hop_profile(variant, sent_embs, hops, mode));
  }
  if (!spec.out_dir.empty()) {
    detail::maybe_manifest(spec);
    CsvWriter table(detail::out_file(spec, "hops.csv"),
                    {"pattern", "hop", "mean_shift"});
    for (const auto& p : result.profiles)
      for (std::size_t i = 0; i < p.hops.size(); ++i)
        table.write_row({to_string(p.pattern), std::to_string(p.hops[i]),
                         format_g6(p.mean_shift[i])});
  }
  return result;
}

// Self-overlap@k of every variant against the original corpus, with one
// seeded query sample shared across all variants.
inline OverlapStudyResult run_overlap_study(const ExperimentSpec& spec,
                                            const SentenceSequence& seq,
                                            EmbeddingSource& source) {
  auto sent_embs = source.embed_sentences(seq);
  auto base_variant = make_variant(seq, ConcatPattern::Repeat, 1, spec.seed);
  auto base = source.embed_units(base_variant, sent_embs);

  std::size_t q = std::min(spec.query_count, seq.size());
  Rng rng(spec.seed, 0xA000000);
  auto queries = detail::sample_distinct(rng, seq.size(), q);

  OverlapStudyResult result;
  for (ConcatPattern pattern : {ConcatPattern::Repeat, ConcatPattern::Sequential,
                                ConcatPattern::Random}) {
    for (std::size_t width : spec.widths) {
      auto variant = make_variant(seq, pattern, width, spec.seed);
      auto units = source.embed_units(variant, sent_embs);
      for (std::size_t k : spec.k_cutoffs) {
        auto overlap = self_overlap(
            std::span<const std::size_t>(queries.data(), queries.size()), base,
            units, k, spec.threads);
        result.cells.push_back({pattern, width, k, overlap.mean});
      }
    }
  }
  if (!spec.out_dir.empty()) {
    detail::maybe_manifest(spec);
    CsvWriter table(detail::out_file(spec, "overlap.csv"),
                    {"pattern", "width", "k", "mean_overlap"});
    for (const auto& c : result.cells)
      table.write_row({to_string(c.pattern), std::to_string(c.width),
                       std::to_string(c.k), format_g6(c.mean_overlap)});
  }
  return result;
}

// Fixed / Semantic / Shift comparison at matched granularity.
inline SplitterBenchResult run_splitter_bench(const ExperimentSpec& spec,
                                              const SentenceSequence& seq,
                                              EmbeddingSource& source) {
  auto sent_embs = source.embed_sentences(seq);
  std::set<std::size_t> gold = seq.gold_boundaries;
  if (spec.exclude_doc_end_boundaries) {
    for (std::size_t b : seq.document_end_boundaries()) gold.erase(b);
  }

  SplitterBenchResult result;
  for (double target : spec.targets) {
    {
      auto k = static_cast<std::size_t>(std::llround(target));
      auto chunking = split_fixed(seq, std::max<std::size_t>(1, k));
      result.rows.push_back(
          {target, SplitMethod::Fixed, static_cast<double>(k),
           evaluate_segmentation(gold, chunking, seq.size(), spec.eval_window)});
    }
    for (SplitMethod method : {SplitMethod::Semantic, SplitMethod::Shift}) {
      auto match = match_granularity(seq, sent_embs, method, target,
                                     spec.percentile_sweep, spec.splitter);
      result.rows.push_back(
          {target, method, match.parameter,
           evaluate_segmentation(gold, match.chunking, seq.size(),
                                 spec.eval_window)});
    }
  }
  if (!spec.out_dir.empty()) {
    detail::maybe_manifest(spec);
    CsvWriter table(detail::out_file(spec, "splitter_bench.csv"),
                    {"target", "method", "parameter", "precision", "recall",
                     "f1", "pk", "wd", "avg_sents", "var_sents"});
    for (const auto& r : result.rows)
      table.write_row({format_g6(r.target), to_string(r.method),
                       format_g6(r.parameter), format_g6(r.report.precision),
                       format_g6(r.report.recall), format_g6(r.report.f1),
                       format_g6(r.report.pk), format_g6(r.report.window_diff),
                       format_g6(r.report.avg_sents),
                       format_g6(r.report.var_sents)});
  }
  return result;
}

}  // namespace semshift
