// semshift: corpus ingestion, embedding, metrics, chunking, and the
// experiment harnesses behind one binary with machine-readable output.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "semshift/semshift.hpp"

namespace fs = std::filesystem;
using namespace semshift;

namespace {

struct CommonOpts {
  unsigned threads = 0;
  bool json_output = false;
};

std::vector<double> parse_sweep(const std::string& csv) {
  std::vector<double> out;
  std::string token;
  for (char c : csv + ",") {
    if (c == ',') {
      if (!token.empty()) {
        try {
          std::size_t used = 0;
          double v = std::stod(token, &used);
          if (used != token.size()) throw std::invalid_argument(token);
          out.push_back(v);
        } catch (const std::exception&) {
          throw InputError("bad sweep value: " + token);
        }
      }
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  return out;
}

std::unique_ptr<EmbeddingProvider> make_provider(const std::string& store,
                                                 bool offline) {
  if (!store.empty()) return std::make_unique<FileStoreProvider>(store);
  if (offline) throw InputError("--offline requires --store");
  const char* url = std::getenv("EMBED_API_URL");
  if (!url || !*url)
    throw InputError("EMBED_API_URL is not set and no --store was given");
  HttpProviderConfig config;
  config.url = url;
  if (const char* key = std::getenv("EMBED_API_KEY")) config.api_key = key;
  return std::make_unique<HttpProvider>(config);
}

// ---- ingest ----------------------------------------------------------------

struct IngestOpts {
  std::string corpus;
  std::string text;
  std::string out;
  bool paragraphs = false;
  std::size_t max_docs = 0;
};

int run_ingest(const IngestOpts& opt) {
  std::vector<Document> docs;
  if (!opt.corpus.empty()) {
    docs = read_corpus_jsonl(opt.corpus, opt.max_docs == 0
                                             ? std::numeric_limits<std::size_t>::max()
                                             : opt.max_docs);
  } else if (!opt.text.empty()) {
    docs.push_back(read_text_document(opt.text));
  } else {
    throw InputError("ingest needs --corpus or --text");
  }
  auto seq = build_sequence(docs, opt.paragraphs);
  fs::create_directories(opt.out);
  write_sentences_jsonl((fs::path(opt.out) / "sentences.jsonl").string(), seq,
                        docs);
  write_boundaries_json((fs::path(opt.out) / "boundaries.json").string(), seq);
  nlohmann::json spec{{"command", "ingest"},
                      {"corpus", opt.corpus.empty() ? opt.text : opt.corpus},
                      {"paragraphs", opt.paragraphs},
                      {"max_docs", opt.max_docs}};
  write_manifest(opt.out, spec, 0, "");
  std::cout << "ingested " << docs.size() << " documents, " << seq.size()
            << " sentences, " << seq.gold_boundaries.size()
            << " gold boundaries\n";
  return 0;
}

// ---- embed -----------------------------------------------------------------

struct EmbedOpts {
  std::string sentences;
  std::string out;
  std::string model = "default";
  std::string cache_path;
  std::string store;
  std::string text_template;
  std::size_t batch_size = 64;
  bool offline = false;
};

int run_embed(const EmbedOpts& opt) {
  auto seq = read_sentences_jsonl(opt.sentences);
  EmbedRequest req;
  req.texts = seq.sentences;
  req.model_tag = opt.model;
  req.batch_size = opt.batch_size;
  req.text_template = opt.text_template;

  std::unique_ptr<EmbeddingCache> cache;
  if (!opt.cache_path.empty())
    cache = std::make_unique<EmbeddingCache>(opt.cache_path);
  auto provider = make_provider(opt.store, opt.offline);
  auto matrix = embed_texts(req, *provider, cache.get());

  fs::create_directories(opt.out);
  write_embeddings_jsonl((fs::path(opt.out) / "embeddings.jsonl").string(),
                         matrix);
  nlohmann::json spec{{"command", "embed"},
                      {"sentences", opt.sentences},
                      {"model", opt.model},
                      {"batch_size", opt.batch_size},
                      {"offline", opt.offline}};
  write_manifest(opt.out, spec, 0, opt.model);
  std::cout << "embedded " << matrix.rows() << " texts, dim " << matrix.dim()
            << "\n";
  return 0;
}

// ---- metrics ---------------------------------------------------------------

struct MetricsOpts {
  std::string which;
  std::string embeddings;
  std::size_t step = 1;
  bool pooling = false;
  long text_row = -1;
  bool json = false;
};

int run_metrics(const MetricsOpts& opt) {
  auto matrix = read_embeddings_jsonl(opt.embeddings);
  nlohmann::json out;
  if (opt.which == "mpd") {
    out["mpd"] = mpd(matrix);
  } else if (opt.which == "curve") {
    auto curve = mpd_curve(matrix, opt.step);
    out["prefix_sizes"] = curve.prefix_sizes;
    out["mpd_values"] = curve.mpd_values;
  } else if (opt.which == "dilution") {
    auto unit = normalize(matrix);
    DilutionStats stats;
    if (opt.pooling) {
      stats = dilution_stats(unit);
    } else {
      std::size_t text_row = opt.text_row >= 0
                                 ? static_cast<std::size_t>(opt.text_row)
                                 : unit.rows() - 1;
      if (text_row >= unit.rows())
        throw InputError("--text-row out of range");
      EmbeddingMatrix sentences(unit.dim());
      for (std::size_t i = 0; i < unit.rows(); ++i)
        if (i != text_row) sentences.append_row(unit.row(i));
      auto tv = unit.row(text_row);
      stats = dilution_stats(sentences, tv);
    }
    out = {{"k", stats.k},
           {"c_pair", stats.c_pair},
           {"c_mean", stats.c_mean},
           {"mu_norm", stats.mu_norm}};
  } else if (opt.which == "shift") {
    auto measures = shift_eval(normalize(matrix));
    out = {{"local", measures.local},
           {"disp", measures.disp},
           {"shift", measures.shift}};
  } else {
    throw InputError("unknown metric: " + opt.which);
  }

  if (opt.json) {
    std::cout << out.dump(2) << "\n";
  } else {
    for (auto& [key, value] : out.items()) {
      std::cout << key << " ";
      if (value.is_number()) {
        std::cout << format_g6(value.get<double>());
      } else if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i) {
          if (i) std::cout << " ";
          std::cout << format_g6(value[i].get<double>());
        }
      } else {
        std::cout << value.dump();
      }
      std::cout << "\n";
    }
  }
  return 0;
}

// ---- split -----------------------------------------------------------------

struct SplitOpts {
  std::string method = "shift";
  std::string sentences;
  std::string embeddings;
  std::string out;
  double percentile = 50.0;
  std::size_t radius = 2;
  long token_cap = 512;
  std::size_t min_sentences = 1;
  std::size_t fixed_k = 3;
  double tau = std::numeric_limits<double>::quiet_NaN();
  double target_avg = 0.0;
  std::string sweep;
  bool json = false;
};

int run_split(const SplitOpts& opt) {
  auto seq = read_sentences_jsonl(opt.sentences);
  EmbeddingMatrix embs;
  SplitMethod method = parse_method(opt.method);
  if (method != SplitMethod::Fixed) {
    if (opt.embeddings.empty())
      throw InputError("--embeddings required for method " + opt.method);
    embs = normalize(read_embeddings_jsonl(opt.embeddings));
  }

  SplitterConfig cfg;
  cfg.shift_percentile = opt.percentile;
  cfg.window_radius = opt.radius;
  cfg.token_cap = opt.token_cap;
  cfg.min_sentences = opt.min_sentences;
  cfg.tau = opt.tau;

  Chunking chunking;
  double parameter = 0.0;
  if (opt.target_avg > 0.0 && !opt.sweep.empty()) {
    auto result = match_granularity(seq, embs, method, opt.target_avg,
                                    parse_sweep(opt.sweep), cfg);
    chunking = result.chunking;
    parameter = result.parameter;
  } else {
    switch (method) {
      case SplitMethod::Fixed:
        chunking = split_fixed(seq, opt.fixed_k);
        parameter = static_cast<double>(opt.fixed_k);
        break;
      case SplitMethod::Semantic:
        chunking = split_semantic(seq, embs, opt.percentile);
        parameter = opt.percentile;
        break;
      case SplitMethod::Shift:
        chunking = split_shift(seq, embs, cfg);
        parameter = opt.percentile;
        break;
    }
  }

  auto doc = chunking_to_json(chunking, seq);
  doc["method"] = opt.method;
  doc["parameter"] = parameter;
  if (!opt.out.empty()) {
    std::ofstream f(opt.out);
    if (!f) throw InputError("cannot write " + opt.out);
    f << doc.dump(2) << "\n";
    nlohmann::json spec{{"command", "split"},
                        {"method", opt.method},
                        {"sentences", opt.sentences},
                        {"parameter", parameter}};
    auto dir = fs::path(opt.out).parent_path();
    write_manifest(dir.empty() ? "." : dir.string(), spec, 0, "");
    std::cout << "wrote " << chunking.chunks.size() << " chunks to " << opt.out
              << "\n";
  } else {
    std::cout << doc.dump(opt.json ? 2 : -1) << "\n";
  }
  return 0;
}

// ---- experiment ------------------------------------------------------------

struct ExperimentOpts {
  std::string kind;
  std::string spec_path;
  std::string corpus;
  std::string store;
  std::string cache_path;
  std::string model;
  std::string out;
  std::string hop_mode = "prefix";
  std::uint64_t seed = 42;
  bool synthetic = false;
  bool paragraphs = true;
  bool offline = false;
  bool exclude_doc_ends = false;
  unsigned threads = 0;
  std::size_t synth_n = 0;
  std::size_t synth_dim = 0;
};

int run_experiment(const ExperimentOpts& opt) {
  ExperimentSpec spec;
  if (!opt.spec_path.empty()) {
    std::ifstream in(opt.spec_path);
    if (!in) throw InputError("cannot open spec: " + opt.spec_path);
    auto doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw ParseError(opt.spec_path, 1, "invalid JSON");
    spec = ExperimentSpec::from_json(doc);
  }
  spec.kind = opt.kind;
  if (!opt.corpus.empty()) spec.corpus_path = opt.corpus;
  if (opt.synthetic) spec.synthetic = true;
  if (!opt.model.empty()) spec.model_tag = opt.model;
  spec.seed = opt.seed;
  spec.out_dir = opt.out;
  spec.threads = opt.threads;
  if (opt.exclude_doc_ends) spec.exclude_doc_end_boundaries = true;
  if (opt.synth_n > 0) spec.synth_n = opt.synth_n;
  if (opt.synth_dim > 0) spec.synth_dim = opt.synth_dim;

  SentenceSequence seq;
  std::unique_ptr<EmbeddingSource> source;
  std::unique_ptr<EmbeddingProvider> provider;
  std::unique_ptr<EmbeddingCache> cache;

  if (spec.synthetic) {
    SyntheticCorpus corpus;
    if (spec.kind == "splitter-bench") {
      corpus = make_seam_corpus(spec.seam_paragraphs);
    } else {
      corpus = make_drift_corpus(spec.synth_n, spec.synth_dim, spec.seed);
    }
    seq = corpus.seq;
    source = std::make_unique<PooledSource>(std::move(corpus.embeddings));
  } else {
    if (spec.corpus_path.empty())
      throw InputError("experiment needs --corpus or --synthetic");
    std::vector<Document> docs;
    if (spec.corpus_path.ends_with(".jsonl")) {
      docs = read_corpus_jsonl(spec.corpus_path);
    } else {
      docs.push_back(read_text_document(spec.corpus_path));
    }
    seq = build_sequence(docs, opt.paragraphs);
    if (!opt.cache_path.empty())
      cache = std::make_unique<EmbeddingCache>(opt.cache_path);
    provider = make_provider(opt.store, opt.offline);
    source = std::make_unique<ProviderSource>(*provider, cache.get(),
                                              spec.model_tag);
  }

  if (spec.kind == "theorem1") {
    auto result = run_theorem1(spec, seq, *source);
    std::cout << "theorem1: samples=" << result.rows.size()
              << " rho=" << format_g6(result.rho)
              << " tau=" << format_g6(result.tau)
              << (result.degenerate ? " (degenerate)" : "") << "\n";
  } else if (spec.kind == "mpd") {
    auto result = run_mpd_study(spec, seq, *source);
    for (const auto& c : result.cells)
      std::cout << "mpd " << to_string(c.pattern) << " width=" << c.width
                << " -> " << format_g6(c.mpd_value) << "\n";
  } else if (spec.kind == "hops") {
    HopMode mode = opt.hop_mode == "pairwise" ? HopMode::Pairwise
                                              : HopMode::Prefix;
    if (opt.hop_mode != "prefix" && opt.hop_mode != "pairwise")
      throw InputError("--hop-mode must be prefix or pairwise");
    auto result = run_hop_study(spec, seq, *source, mode);
    for (const auto& p : result.profiles) {
      std::cout << "hops " << to_string(p.pattern) << ":";
      for (double v : p.mean_shift) std::cout << " " << format_g6(v);
      std::cout << "\n";
    }
  } else if (spec.kind == "overlap") {
    auto result = run_overlap_study(spec, seq, *source);
    for (const auto& c : result.cells)
      std::cout << "overlap " << to_string(c.pattern) << " width=" << c.width
                << " k=" << c.k << " -> " << format_g6(c.mean_overlap) << "\n";
  } else if (spec.kind == "splitter-bench") {
    auto result = run_splitter_bench(spec, seq, *source);
    for (const auto& r : result.rows)
      std::cout << "bench target=" << format_g6(r.target) << " "
                << to_string(r.method) << " f1=" << format_g6(r.report.f1)
                << " pk=" << format_g6(r.report.pk)
                << " wd=" << format_g6(r.report.window_diff)
                << " avg=" << format_g6(r.report.avg_sents)
                << " var=" << format_g6(r.report.var_sents) << "\n";
  } else {
    throw InputError("unknown experiment kind: " + spec.kind);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semantic-shift diagnostics and chunking toolkit"};
  app.require_subcommand(1);

  IngestOpts ingest;
  auto* cmd_ingest = app.add_subcommand("ingest", "clean and sentence-split a corpus");
  cmd_ingest->add_option("--corpus", ingest.corpus, "JSON-lines corpus file");
  cmd_ingest->add_option("--text", ingest.text, "plain-text file as one document");
  cmd_ingest->add_option("--out", ingest.out, "output directory")->required();
  cmd_ingest->add_flag("--paragraphs", ingest.paragraphs,
                       "record paragraph breaks as gold boundaries");
  cmd_ingest->add_option("--max-docs", ingest.max_docs,
                         "ingest at most this many documents (0 = all)");

  EmbedOpts embed;
  auto* cmd_embed = app.add_subcommand("embed", "embed sentences via store or API");
  cmd_embed->add_option("--sentences", embed.sentences, "sentences.jsonl")->required();
  cmd_embed->add_option("--out", embed.out, "output directory")->required();
  cmd_embed->add_option("--model", embed.model, "model tag");
  cmd_embed->add_option("--batch-size", embed.batch_size, "texts per request");
  cmd_embed->add_option("--cache-path", embed.cache_path, "embedding cache file");
  cmd_embed->add_option("--store", embed.store, "embedding store file (offline)");
  cmd_embed->add_option("--template", embed.text_template,
                        "prefix template, {} replaced by the text");
  cmd_embed->add_flag("--offline", embed.offline, "file store only; misses are fatal");

  MetricsOpts metrics;
  auto* cmd_metrics = app.add_subcommand("metrics", "geometry metrics over stored embeddings");
  cmd_metrics->add_option("--which", metrics.which, "mpd|curve|dilution|shift")->required();
  cmd_metrics->add_option("--embeddings", metrics.embeddings, "embeddings.jsonl")->required();
  cmd_metrics->add_option("--step", metrics.step, "curve prefix step");
  cmd_metrics->add_flag("--pooling", metrics.pooling,
                        "dilution: pooled mean stands in for the text vector");
  cmd_metrics->add_option("--text-row", metrics.text_row,
                          "dilution: row index of the text embedding (default last)");
  cmd_metrics->add_flag("--json", metrics.json, "full-precision JSON output");

  SplitOpts split;
  auto* cmd_split = app.add_subcommand("split", "chunk a sentence sequence");
  cmd_split->add_option("--method", split.method, "shift|fixed|semantic");
  cmd_split->add_option("--sentences", split.sentences, "sentences.jsonl")->required();
  cmd_split->add_option("--embeddings", split.embeddings, "embeddings.jsonl");
  cmd_split->add_option("--out", split.out, "output chunking JSON file");
  cmd_split->add_option("--percentile", split.percentile, "shift/semantic percentile");
  cmd_split->add_option("--radius", split.radius, "tau window radius (sentences)");
  cmd_split->add_option("--token-cap", split.token_cap, "max tokens per chunk");
  cmd_split->add_option("--min-sentences", split.min_sentences,
                        "min sentences before a shift cut");
  cmd_split->add_option("-k,--fixed-k", split.fixed_k, "fixed chunk size");
  cmd_split->add_option("--tau", split.tau, "explicit threshold (skips estimation)");
  cmd_split->add_option("--target-avg", split.target_avg,
                        "match this avg sentences/chunk over --sweep");
  cmd_split->add_option("--sweep", split.sweep, "comma-separated parameter sweep");
  cmd_split->add_flag("--json", split.json, "pretty JSON to stdout");

  ExperimentOpts experiment;
  auto* cmd_exp = app.add_subcommand("experiment", "run a full study");
  cmd_exp->add_option("kind", experiment.kind,
                      "theorem1|mpd|hops|overlap|splitter-bench")->required();
  cmd_exp->add_option("--spec", experiment.spec_path, "experiment spec JSON");
  cmd_exp->add_option("--corpus", experiment.corpus, "corpus file (jsonl or txt)");
  cmd_exp->add_option("--store", experiment.store, "embedding store (offline)");
  cmd_exp->add_option("--cache-path", experiment.cache_path, "embedding cache");
  cmd_exp->add_option("--model", experiment.model, "model tag");
  cmd_exp->add_option("--out", experiment.out, "output directory")->required();
  cmd_exp->add_option("--seed", experiment.seed, "experiment seed");
  cmd_exp->add_flag("--synthetic", experiment.synthetic,
                    "use the built-in synthetic corpus and pooled embeddings");
  cmd_exp->add_flag("--offline", experiment.offline, "store only; misses fatal");
  cmd_exp->add_flag("!--no-paragraphs", experiment.paragraphs,
                    "do not use paragraph breaks as gold boundaries");
  cmd_exp->add_flag("--exclude-doc-ends", experiment.exclude_doc_ends,
                    "drop document-end boundaries from the gold set");
  cmd_exp->add_option("--hop-mode", experiment.hop_mode,
                      "hop shift reading: prefix (default) or pairwise");
  cmd_exp->add_option("--threads", experiment.threads, "worker threads (0 = cores)");
  cmd_exp->add_option("--synth-n", experiment.synth_n, "synthetic corpus size");
  cmd_exp->add_option("--synth-dim", experiment.synth_dim, "synthetic dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_ingest) return run_ingest(ingest);
    if (*cmd_embed) return run_embed(embed);
    if (*cmd_metrics) return run_metrics(metrics);
    if (*cmd_split) return run_split(split);
    if (*cmd_exp) return run_experiment(experiment);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Input: return 2;
      case ErrorKind::Provider: return 3;
      case ErrorKind::Internal: return 4;
    }
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
