#pragma once

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

#include "semshift/corpus.hpp"
#include "semshift/embedding.hpp"
#include "semshift/errors.hpp"
#include "semshift/splitter.hpp"
#include "semshift/util.hpp"

namespace semshift {

// Six significant digits, the CLI's default numeric precision.
inline std::string format_g6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// ---- corpus input ----------------------------------------------------------

// JSON-lines corpus: one {"doc_id": ..., "text": ...} object per line.
inline std::vector<Document> read_corpus_jsonl(
    const std::string& path,
    std::size_t max_docs = std::numeric_limits<std::size_t>::max()) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus: " + path);
  std::vector<Document> docs;
  std::string line;
  std::size_t lineno = 0;
  while (docs.size() < max_docs && std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.contains("doc_id") || !row.contains("text") ||
        !row["doc_id"].is_string() || !row["text"].is_string())
      throw ParseError(path, lineno, "expected {\"doc_id\": str, \"text\": str}");
    docs.push_back({row["doc_id"].get<std::string>(),
                    row["text"].get<std::string>()});
  }
  return docs;
}

// A plain-text file is one document named after its path stem.
inline Document read_text_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open text file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return {std::filesystem::path(path).stem().string(), std::move(text)};
}

// ---- sentence sequence -----------------------------------------------------

inline void write_sentences_jsonl(const std::string& path,
                                  const SentenceSequence& seq,
                                  const std::vector<Document>& docs) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    nlohmann::json row{{"idx", i},
                       {"doc_id", docs[seq.doc_index[i]].doc_id},
                       {"sentence", seq.sentences[i]}};
    out << row.dump() << "\n";
  }
}

inline void write_boundaries_json(const std::string& path,
                                  const SentenceSequence& seq) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  nlohmann::json doc{
      {"gold_boundaries",
       std::vector<std::size_t>(seq.gold_boundaries.begin(),
                                seq.gold_boundaries.end())},
      {"document_end_boundaries",
       [&] {
         auto b = seq.document_end_boundaries();
         return std::vector<std::size_t>(b.begin(), b.end());
       }()}};
  out << doc.dump(2) << "\n";
}

inline SentenceSequence read_sentences_jsonl(const std::string& path,
                                             const std::string& boundaries_path = {}) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open sentences: " + path);
  SentenceSequence seq;
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> doc_ids;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.contains("sentence"))
      throw ParseError(path, lineno, "expected {\"idx\", \"doc_id\", \"sentence\"}");
    std::string doc_id = row.value("doc_id", std::string("doc"));
    if (doc_ids.empty() || doc_ids.back() != doc_id) doc_ids.push_back(doc_id);
    seq.sentences.push_back(row["sentence"].get<std::string>());
    seq.doc_index.push_back(doc_ids.size() - 1);
  }
  if (!boundaries_path.empty()) {
    std::ifstream bin(boundaries_path);
    if (!bin) throw InputError("cannot open boundaries: " + boundaries_path);
    nlohmann::json doc = nlohmann::json::parse(bin, nullptr, false);
    if (doc.is_discarded() || !doc.contains("gold_boundaries"))
      throw ParseError(boundaries_path, 1, "expected {\"gold_boundaries\": [...]}");
    for (auto b : doc["gold_boundaries"])
      seq.gold_boundaries.insert(b.get<std::size_t>());
  }
  return seq;
}

// ---- embeddings ------------------------------------------------------------

// JSON-lines, one {"idx": i, "vec": [...]} per line in row order.
inline void write_embeddings_jsonl(const std::string& path,
                                   const EmbeddingMatrix& m) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    nlohmann::json row{{"idx", i},
                       {"vec", std::vector<float>(r.begin(), r.end())}};
    out << row.dump() << "\n";
  }
}

inline EmbeddingMatrix read_embeddings_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open embeddings: " + path);
  EmbeddingMatrix m;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.contains("vec") || !row["vec"].is_array())
      throw ParseError(path, lineno, "expected {\"vec\": [floats]}");
    try {
      m.append_row(row["vec"].get<std::vector<float>>());
    } catch (const DimensionMismatchError&) {
      throw ParseError(path, lineno, "inconsistent embedding dimension");
    }
  }
  return m;
}

// ---- chunkings -------------------------------------------------------------

inline nlohmann::json chunking_to_json(const Chunking& c,
                                       const SentenceSequence& seq,
                                       const TokenCounter& tokens =
                                           whitespace_token_counter()) {
  nlohmann::json chunks = nlohmann::json::array();
  for (const auto& span : c.chunks) {
    long total = 0;
    for (std::size_t i = span.start; i <= span.end; ++i)
      total += tokens(seq.sentences[i]);
    chunks.push_back({{"start", span.start}, {"end", span.end}, {"tokens", total}});
  }
  return nlohmann::json{
      {"boundaries",
       std::vector<std::size_t>(c.boundaries.begin(), c.boundaries.end())},
      {"chunks", chunks}};
}

// ---- CSV + manifest --------------------------------------------------------

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns)
      : out_(path) {
    if (!out_) throw InputError("cannot write " + path);
    out_ << "#schema=1\n";
    write_row(columns);
  }

  void write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ",";
      out_ << cells[i];
    }
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

inline void write_manifest(const std::string& dir, const nlohmann::json& spec_json,
                           std::uint64_t seed, const std::string& model_tag) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest{
      {"spec_hash", sha256_hex(spec_json.dump())},
      {"spec", spec_json},
      {"seed", seed},
      {"model_tag", model_tag},
      {"created_unix", static_cast<long long>(std::time(nullptr))}};
  std::ofstream out(std::filesystem::path(dir) / "manifest.json");
  out << manifest.dump(2) << "\n";
}

}  // namespace semshift
