#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "semshift/errors.hpp"
#include "semshift/util.hpp"

namespace semshift {

struct Document {
  std::string doc_id;
  std::string text;
};

// Ordered, cleaned sentences for a whole corpus. Boundary position i marks a
// break between sentence i and i+1 (0-based, i in [0, n-2]).
struct SentenceSequence {
  std::vector<std::string> sentences;
  std::vector<std::size_t> doc_index;
  std::set<std::size_t> gold_boundaries;

  std::size_t size() const { return sentences.size(); }

  // Positions where the document changes; a subset of every gold set built
  // with multi-document input. The evaluator can exclude these on request.
  std::set<std::size_t> document_end_boundaries() const {
    std::set<std::size_t> out;
    for (std::size_t i = 0; i + 1 < doc_index.size(); ++i)
      if (doc_index[i] != doc_index[i + 1]) out.insert(i);
    return out;
  }
};

enum class ConcatPattern { Repeat, Sequential, Random };

inline const char* to_string(ConcatPattern p) {
  switch (p) {
    case ConcatPattern::Repeat: return "repeat";
    case ConcatPattern::Sequential: return "sequential";
    case ConcatPattern::Random: return "random";
  }
  return "?";
}

inline ConcatPattern parse_pattern(std::string_view s) {
  if (s == "repeat") return ConcatPattern::Repeat;
  if (s == "sequential") return ConcatPattern::Sequential;
  if (s == "random") return ConcatPattern::Random;
  throw InputError("unknown concatenation pattern: " + std::string(s));
}

// One unit per source sentence; unit_members holds the source indices that
// were joined (anchor first).
struct ConcatVariant {
  ConcatPattern pattern = ConcatPattern::Repeat;
  std::size_t width = 1;
  std::vector<std::string> units;
  std::vector<std::vector<std::size_t>> unit_members;
};

namespace detail {

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Characters stripped from the ends of a text. Sentence-final punctuation
// (. ! ? " ' ) ] and multi-byte marks such as the ellipsis) never appears
// here, so it survives cleaning.
inline bool is_noise(char c) {
  return c == '*' || c == '#' || c == '|' || c == '~' || c == '^';
}

}  // namespace detail

// Collapses whitespace runs to single spaces and strips stray noise
// characters from both ends.
inline std::string clean_text(std::string_view raw) {
  std::string collapsed;
  collapsed.reserve(raw.size());
  bool in_space = false;
  for (char c : raw) {
    if (detail::is_ascii_space(c)) {
      in_space = true;
    } else {
      if (in_space && !collapsed.empty()) collapsed.push_back(' ');
      in_space = false;
      collapsed.push_back(c);
    }
  }
  std::size_t b = 0, e = collapsed.size();
  while (b < e && (collapsed[b] == ' ' || detail::is_noise(collapsed[b]))) ++b;
  while (e > b && (collapsed[e - 1] == ' ' || detail::is_noise(collapsed[e - 1])))
    --e;
  return collapsed.substr(b, e - b);
}

namespace detail {

inline const std::array<std::string_view, 12>& abbreviations() {
  static const std::array<std::string_view, 12> list = {
      "Mr.", "Mrs.", "Dr.",  "Prof.", "Fig.", "Eq.",
      "e.g.", "i.e.", "et al.", "vs.",  "No.",  "pp."};
  return list;
}

inline bool is_closer(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']';
}

inline bool is_sentence_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '"' ||
         c == '\'' || c == '(' || c == '[';
}

// True when the period at position dot ends a shipped abbreviation or a
// single capital initial, both of which must not split.
inline bool suppressed_period(std::string_view text, std::size_t dot) {
  for (std::string_view abbr : abbreviations()) {
    if (dot + 1 < abbr.size()) continue;
    std::size_t start = dot + 1 - abbr.size();
    if (text.substr(start, abbr.size()) != abbr) continue;
    if (start == 0 || text[start - 1] == ' ') return true;
  }
  if (dot >= 1 && text[dot - 1] >= 'A' && text[dot - 1] <= 'Z' &&
      (dot == 1 || text[dot - 2] == ' '))
    return true;
  return false;
}

}  // namespace detail

// Deterministic rule-based sentence splitter: split after [.!?] plus any
// closing quotes/brackets when followed by a space and an uppercase letter,
// digit, or opening quote. Assumes cleaned input (single spaces).
inline std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  auto flush = [&](std::size_t from, std::size_t to) {
    while (from < to && text[from] == ' ') ++from;
    while (to > from && text[to - 1] == ' ') --to;
    if (to > from) out.emplace_back(text.substr(from, to - from));
  };
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      std::size_t j = i + 1;
      while (j < text.size() && detail::is_closer(text[j])) ++j;
      bool boundary = j + 1 < text.size() && text[j] == ' ' &&
                      detail::is_sentence_start(text[j + 1]);
      if (boundary && c == '.' && detail::suppressed_period(text, i))
        boundary = false;
      if (boundary) {
        flush(start, j);
        start = j + 1;
        i = j + 1;
        continue;
      }
      i = j;
      continue;
    }
    ++i;
  }
  flush(start, text.size());
  return out;
}

namespace detail {

// Paragraph break = two or more consecutive newline characters in raw text.
inline std::vector<std::string_view> split_paragraphs(std::string_view raw) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] == '\n' && i + 1 < raw.size() && raw[i + 1] == '\n') {
      out.push_back(raw.substr(start, i - start));
      while (i < raw.size() && raw[i] == '\n') ++i;
      start = i;
    } else {
      ++i;
    }
  }
  out.push_back(raw.substr(start));
  return out;
}

}  // namespace detail

// Cleans and splits every document, concatenating the per-document sentence
// lists into one global ordered sequence. Document ends always contribute
// gold boundaries; paragraph breaks contribute only in paragraph mode.
inline SentenceSequence build_sequence(const std::vector<Document>& docs,
                                       bool paragraph_mode = false) {
  SentenceSequence seq;
  std::set<std::string> seen;
  std::vector<std::size_t> breaks;
  for (std::size_t di = 0; di < docs.size(); ++di) {
    const Document& doc = docs[di];
    if (doc.doc_id.empty()) throw InputError("empty doc_id");
    if (!seen.insert(doc.doc_id).second) throw DuplicateDocIdError(doc.doc_id);
    std::vector<std::string_view> paragraphs;
    if (paragraph_mode) {
      paragraphs = detail::split_paragraphs(doc.text);
    } else {
      paragraphs.push_back(doc.text);
    }
    for (std::string_view para : paragraphs) {
      for (std::string& s : split_sentences(clean_text(para))) {
        seq.sentences.push_back(std::move(s));
        seq.doc_index.push_back(di);
      }
      if (paragraph_mode && !seq.sentences.empty())
        breaks.push_back(seq.sentences.size() - 1);
    }
    if (!seq.sentences.empty()) breaks.push_back(seq.sentences.size() - 1);
  }
  if (seq.sentences.empty()) throw EmptyCorpusError();
  for (std::size_t b : breaks)
    if (b + 1 < seq.sentences.size()) seq.gold_boundaries.insert(b);
  return seq;
}

// Builds the repeat / sequential / random concatenation of width m. Random
// draws come from a per-unit seeded stream, so construction order (or
// parallelism) cannot change the result.
inline ConcatVariant make_variant(const SentenceSequence& seq,
                                  ConcatPattern pattern, std::size_t width,
                                  std::uint64_t seed = 0) {
  if (width < 1) throw InvalidWidthError(static_cast<long>(width));
  std::size_t n = seq.size();
  if (n == 0) throw EmptyInputError();
  ConcatVariant v;
  v.pattern = pattern;
  v.width = width;
  v.units.reserve(n);
  v.unit_members.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> members;
    switch (pattern) {
      case ConcatPattern::Repeat:
        members.assign(width, i);
        break;
      case ConcatPattern::Sequential:
        for (std::size_t j = i; j < std::min(i + width, n); ++j)
          members.push_back(j);
        break;
      case ConcatPattern::Random: {
        members.push_back(i);
        Rng rng(seed, i);
        for (std::size_t j = 1; j < width; ++j)
          members.push_back(static_cast<std::size_t>(rng.next_below(n)));
        break;
      }
    }
    std::string unit;
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (j > 0) unit.push_back(' ');
      unit += seq.sentences[members[j]];
    }
    v.units.push_back(std::move(unit));
    v.unit_members.push_back(std::move(members));
  }
  return v;
}

}  // namespace semshift
