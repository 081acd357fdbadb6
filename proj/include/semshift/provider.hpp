#pragma once

#include <chrono>
#include <cstddef>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "semshift/embedding.hpp"
#include "semshift/errors.hpp"
#include "semshift/util.hpp"

namespace semshift {

struct EmbedRequest {
  std::vector<std::string> texts;
  std::string model_tag;
  std::size_t batch_size = 64;
  // Optional per-model prefix template; "{}" is replaced by the text.
  std::string text_template;
};

inline std::string apply_template(const std::string& tmpl,
                                  const std::string& text) {
  if (tmpl.empty()) return text;
  auto pos = tmpl.find("{}");
  if (pos == std::string::npos) return tmpl + text;
  return tmpl.substr(0, pos) + text + tmpl.substr(pos + 2);
}

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<std::vector<float>> fetch(
      const std::string& model, const std::vector<std::string>& texts) = 0;
  std::size_t fetch_calls() const { return calls_; }

 protected:
  std::size_t calls_ = 0;
};

// Append-only JSON-lines cache keyed by (model, SHA-256 of the text sent).
// Safe for concurrent read/write; every put is flushed to disk.
class EmbeddingCache {
 public:
  EmbeddingCache() = default;

  explicit EmbeddingCache(const std::string& path) : path_(path) {
    std::ifstream in(path);
    if (!in) return;  // fresh cache
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
      if (row.is_discarded() || !row.contains("key") || !row.contains("vec"))
        throw ParseError(path, lineno, "bad cache row");
      std::vector<float> vec = row["vec"].get<std::vector<float>>();
      if (row.contains("dim") && row["dim"].get<std::size_t>() != vec.size())
        throw ParseError(path, lineno, "dim field disagrees with vector size");
      map_[{row.value("model", std::string()), row["key"].get<std::string>()}] =
          std::move(vec);
    }
  }

  std::optional<std::vector<float>> get(const std::string& model,
                                        const std::string& key) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find({model, key});
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void put(const std::string& model, const std::string& key,
           const std::vector<float>& vec) {
    std::lock_guard<std::mutex> lock(mu_);
    if (!map_.emplace(std::make_pair(model, key), vec).second) return;
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    nlohmann::json row{{"key", key}, {"model", model}, {"dim", vec.size()},
                       {"vec", vec}};
    out << row.dump() << "\n";
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return map_.size();
  }

 private:
  std::string path_;
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::string>, std::vector<float>> map_;
};

// Offline provider backed by a store file in the cache format. Any text not
// present is fatal.
class FileStoreProvider : public EmbeddingProvider {
 public:
  explicit FileStoreProvider(const std::string& path) : store_(path) {
    std::ifstream probe(path);
    if (!probe) throw InputError("cannot open embedding store: " + path);
  }

  std::vector<std::vector<float>> fetch(
      const std::string& model, const std::vector<std::string>& texts) override {
    ++calls_;
    std::vector<std::vector<float>> out;
    out.reserve(texts.size());
    std::string missing;
    for (const auto& text : texts) {
      auto hit = store_.get(model, sha256_hex(text));
      if (!hit) {
        if (!missing.empty()) missing += ", ";
        if (missing.size() < 256) missing += "\"" + text + "\"";
        continue;
      }
      out.push_back(std::move(*hit));
    }
    if (!missing.empty()) throw MissKeyError(missing);
    return out;
  }

 private:
  EmbeddingCache store_;
};

struct HttpProviderConfig {
  std::string url;      // e.g. http://host:port/v1/embeddings
  std::string api_key;  // sent as a bearer token when non-empty
  int max_attempts = 3;
  int initial_backoff_ms = 500;
  int timeout_seconds = 120;
};

// JSON-over-HTTP embedding client speaking the de-facto API shape:
// request {"model": ..., "input": [...]}, response
// {"data": [{"index": i, "embedding": [...]}]}, re-ordered by index.
class HttpProvider : public EmbeddingProvider {
 public:
  explicit HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
    auto scheme_end = config_.url.find("://");
    if (scheme_end == std::string::npos)
      throw InputError("embedding URL must include a scheme: " + config_.url);
    auto path_start = config_.url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
      base_ = config_.url;
      path_ = "/";
    } else {
      base_ = config_.url.substr(0, path_start);
      path_ = config_.url.substr(path_start);
    }
  }

  std::vector<std::vector<float>> fetch(
      const std::string& model, const std::vector<std::string>& texts) override {
    ++calls_;
    nlohmann::json body{{"model", model}, {"input", texts}};
    std::string payload = body.dump();

    int backoff_ms = config_.initial_backoff_ms;
    int last_status = 0;
    std::string last_message;
    for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
      httplib::Client client(base_);
      client.set_read_timeout(config_.timeout_seconds, 0);
      client.set_connection_timeout(config_.timeout_seconds, 0);
      httplib::Headers headers;
      if (!config_.api_key.empty())
        headers.emplace("Authorization", "Bearer " + config_.api_key);
      auto res = client.Post(path_, headers, payload, "application/json");
      if (res && res->status == 200) return parse_response(res->body, texts.size());
      bool retryable;
      if (!res) {
        last_status = 0;
        last_message = httplib::to_string(res.error());
        retryable = true;  // transport error
      } else {
        last_status = res->status;
        last_message = res->body.substr(0, 200);
        retryable = res->status == 429 || res->status >= 500;
      }
      if (!retryable || attempt == config_.max_attempts) break;
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
      backoff_ms *= 2;
    }
    throw ProviderError(last_status, last_message);
  }

 private:
  std::vector<std::vector<float>> parse_response(const std::string& body,
                                                 std::size_t expected) {
    nlohmann::json doc = nlohmann::json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.contains("data") || !doc["data"].is_array())
      throw ProviderError(200, "malformed embedding response");
    if (doc["data"].size() != expected)
      throw ProviderError(200, "response row count " +
                                   std::to_string(doc["data"].size()) +
                                   " != request size " + std::to_string(expected));
    std::vector<std::vector<float>> out(expected);
    std::vector<bool> seen(expected, false);
    for (const auto& item : doc["data"]) {
      if (!item.contains("index") || !item.contains("embedding"))
        throw ProviderError(200, "embedding row missing index or embedding");
      auto idx = item["index"].get<std::size_t>();
      if (idx >= expected || seen[idx])
        throw ProviderError(200, "bad embedding index " + std::to_string(idx));
      out[idx] = item["embedding"].get<std::vector<float>>();
      seen[idx] = true;
    }
    return out;
  }

  HttpProviderConfig config_;
  std::string base_;
  std::string path_;
};

// Resolves every text to a row, consulting the cache first and batching the
// misses through the provider. Output row i always corresponds to texts[i].
inline EmbeddingMatrix embed_texts(const EmbedRequest& req,
                                   EmbeddingProvider& provider,
                                   EmbeddingCache* cache = nullptr) {
  if (req.texts.empty()) throw EmptyInputError();
  if (req.batch_size < 1) throw InputError("batch size must be >= 1");

  std::vector<std::string> sent_texts(req.texts.size());
  std::vector<std::string> keys(req.texts.size());
  for (std::size_t i = 0; i < req.texts.size(); ++i) {
    sent_texts[i] = apply_template(req.text_template, req.texts[i]);
    keys[i] = sha256_hex(sent_texts[i]);
  }

  std::map<std::string, std::vector<float>> resolved;
  std::vector<std::string> miss_keys;
  std::vector<std::string> miss_texts;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (resolved.count(keys[i])) continue;
    if (cache) {
      if (auto hit = cache->get(req.model_tag, keys[i])) {
        resolved[keys[i]] = std::move(*hit);
        continue;
      }
    }
    // Dedupe within the request as well, so repeated texts fetch once.
    if (std::find(miss_keys.begin(), miss_keys.end(), keys[i]) ==
        miss_keys.end()) {
      miss_keys.push_back(keys[i]);
      miss_texts.push_back(sent_texts[i]);
    }
  }

  for (std::size_t start = 0; start < miss_texts.size();
       start += req.batch_size) {
    std::size_t end = std::min(miss_texts.size(), start + req.batch_size);
    std::vector<std::string> batch(miss_texts.begin() + start,
                                   miss_texts.begin() + end);
    auto rows = provider.fetch(req.model_tag, batch);
    if (rows.size() != batch.size())
      throw ProviderError(0, "provider returned " + std::to_string(rows.size()) +
                                 " rows for a batch of " +
                                 std::to_string(batch.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (cache) cache->put(req.model_tag, miss_keys[start + j], rows[j]);
      resolved[miss_keys[start + j]] = std::move(rows[j]);
    }
  }

  EmbeddingMatrix out;
  out.set_model_tag(req.model_tag);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto& vec = resolved.at(keys[i]);
    if (out.dim() != 0 && vec.size() != out.dim())
      throw DimensionMismatchError(out.dim(), vec.size());
    out.append_row(vec);
  }
  return out;
}

}  // namespace semshift
