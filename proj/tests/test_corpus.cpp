#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "semshift/corpus.hpp"
#include "semshift/util.hpp"

using namespace semshift;

TEST_CASE("clean_text") {
  CHECK(clean_text("  hello   world. ") == "hello world.");
  CHECK(clean_text("") == "");
  CHECK(clean_text("A\t\nB?") == "A B?");
  CHECK(clean_text("** Heading. **") == "Heading.");
  CHECK(clean_text("ends with quote.\"") == "ends with quote.\"");
  CHECK(clean_text("(bracketed.)") == "(bracketed.)");
  CHECK(clean_text("   \t \n ") == "");
}

TEST_CASE("split_sentences") {
  CHECK(split_sentences("A cat. A dog.") ==
        std::vector<std::string>{"A cat.", "A dog."});
  CHECK(split_sentences("One sentence only") ==
        std::vector<std::string>{"One sentence only"});
  CHECK(split_sentences("Dr. Smith left. He ran.") ==
        std::vector<std::string>{"Dr. Smith left.", "He ran."});
  CHECK(split_sentences("See Fig. 3 for details. It helps.") ==
        std::vector<std::string>{"See Fig. 3 for details.", "It helps."});
  CHECK(split_sentences("Was it A. Turing? Yes.") ==
        std::vector<std::string>{"Was it A. Turing?", "Yes."});
  CHECK(split_sentences("He said \"stop.\" Then left.") ==
        std::vector<std::string>{"He said \"stop.\"", "Then left."});
  CHECK(split_sentences("Really?! \"Quoted start.\"") ==
        std::vector<std::string>{"Really?!", "\"Quoted start.\""});
  CHECK(split_sentences("lowercase follows. not split here") ==
        std::vector<std::string>{"lowercase follows. not split here"});
  CHECK(split_sentences("") == std::vector<std::string>{});

  SECTION("single-space joins reconstruct the cleaned input") {
    std::string text = clean_text("E.g. this. No. 7 wins! \"Q.\" Done? Sure.");
    auto sentences = split_sentences(text);
    std::string joined;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (i) joined.push_back(' ');
      joined += sentences[i];
    }
    CHECK(joined == text);
    for (const auto& s : sentences) CHECK(!s.empty());
  }
}

TEST_CASE("build_sequence") {
  SECTION("paragraph break produces a gold boundary") {
    // three one-word sentences, break between the second and third
    auto seq = build_sequence({{"d0", "Aa. Bb.\n\nCc."}}, true);
    REQUIRE(seq.size() == 3);
    CHECK(seq.sentences == std::vector<std::string>{"Aa.", "Bb.", "Cc."});
    CHECK(seq.gold_boundaries == std::set<std::size_t>{1});
    CHECK(seq.document_end_boundaries().empty());
  }
  SECTION("document ends produce gold boundaries") {
    auto seq = build_sequence({{"d0", "First."}, {"d1", "Second."}}, false);
    REQUIRE(seq.size() == 2);
    CHECK(seq.gold_boundaries == std::set<std::size_t>{0});
    CHECK(seq.document_end_boundaries() == std::set<std::size_t>{0});
    CHECK(seq.doc_index == std::vector<std::size_t>{0, 1});
  }
  SECTION("empty corpus") {
    CHECK_THROWS_AS(build_sequence({}, false), EmptyCorpusError);
    CHECK_THROWS_AS(build_sequence({{"d0", "   "}}, true), EmptyCorpusError);
  }
  SECTION("duplicate doc ids rejected") {
    CHECK_THROWS_AS(build_sequence({{"d", "A."}, {"d", "B."}}, false),
                    DuplicateDocIdError);
  }
  SECTION("empty documents are allowed when others have sentences") {
    auto seq = build_sequence({{"d0", ""}, {"d1", "Aa. Bb."}}, true);
    CHECK(seq.size() == 2);
    CHECK(seq.gold_boundaries.empty());
  }
  SECTION("multiple blank lines count as one break") {
    auto seq = build_sequence({{"d0", "Aa.\n\n\n\n\nBb."}}, true);
    CHECK(seq.size() == 2);
    CHECK(seq.gold_boundaries == std::set<std::size_t>{0});
  }
  SECTION("no paragraph boundaries without the flag") {
    auto seq = build_sequence({{"d0", "Aa. Bb.\n\nCc."}}, false);
    CHECK(seq.size() == 3);
    CHECK(seq.gold_boundaries.empty());
  }
}

namespace {
SentenceSequence abc() {
  SentenceSequence seq;
  seq.sentences = {"a", "b", "c"};
  seq.doc_index = {0, 0, 0};
  return seq;
}
}  // namespace

TEST_CASE("make_variant patterns") {
  auto seq = abc();
  SECTION("repeat") {
    auto v = make_variant(seq, ConcatPattern::Repeat, 2, 1);
    CHECK(v.units == std::vector<std::string>{"a a", "b b", "c c"});
    CHECK(v.unit_members[0] == std::vector<std::size_t>{0, 0});
  }
  SECTION("sequential shrinks at the tail") {
    auto v = make_variant(seq, ConcatPattern::Sequential, 2, 1);
    CHECK(v.units == std::vector<std::string>{"a b", "b c", "c"});
  }
  SECTION("width 1 gives the original sentences") {
    for (auto p : {ConcatPattern::Repeat, ConcatPattern::Sequential,
                   ConcatPattern::Random}) {
      auto v = make_variant(seq, p, 1, 9);
      CHECK(v.units == seq.sentences);
    }
  }
  SECTION("invalid width") {
    CHECK_THROWS_AS(make_variant(seq, ConcatPattern::Repeat, 0, 1),
                    InvalidWidthError);
  }
  SECTION("empty sequence") {
    CHECK_THROWS_AS(make_variant(SentenceSequence{}, ConcatPattern::Repeat, 2, 1),
                    EmptyInputError);
  }
}

namespace {
SentenceSequence numbered(std::size_t n) {
  SentenceSequence seq;
  for (std::size_t i = 0; i < n; ++i) {
    seq.sentences.push_back("tok" + std::to_string(i) + " x y");
    seq.doc_index.push_back(0);
  }
  return seq;
}
}  // namespace

TEST_CASE("variant properties") {
  auto seq = numbered(37);

  SECTION("determinism: same seed gives identical variants") {
    auto a = make_variant(seq, ConcatPattern::Random, 5, 123);
    auto b = make_variant(seq, ConcatPattern::Random, 5, 123);
    CHECK(a.units == b.units);
    CHECK(a.unit_members == b.unit_members);
    auto c = make_variant(seq, ConcatPattern::Random, 5, 124);
    CHECK(a.units != c.units);
  }

  SECTION("repeat width m multiplies the token count by m") {
    for (std::size_t m : {2ul, 5ul, 10ul}) {
      auto v = make_variant(seq, ConcatPattern::Repeat, m, 0);
      for (std::size_t i = 0; i < v.units.size(); ++i)
        CHECK(count_tokens(v.units[i]) ==
              static_cast<long>(m) * count_tokens(seq.sentences[i]));
    }
  }

  SECTION("sequential neighbors share the expected member count") {
    std::size_t n = seq.size();
    for (std::size_t m : {2ul, 5ul, 10ul}) {
      auto v = make_variant(seq, ConcatPattern::Sequential, m, 0);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        std::set<std::size_t> a(v.unit_members[i].begin(),
                                v.unit_members[i].end());
        std::set<std::size_t> b(v.unit_members[i + 1].begin(),
                                v.unit_members[i + 1].end());
        std::vector<std::size_t> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(common));
        std::size_t expected =
            std::min(i + m, n) >= i + 1 ? std::min(i + m, n) - (i + 1) : 0;
        CHECK(common.size() == expected);
      }
    }
  }

  SECTION("random units anchor their own sentence first") {
    auto v = make_variant(seq, ConcatPattern::Random, 7, 55);
    for (std::size_t i = 0; i < v.unit_members.size(); ++i) {
      CHECK(v.unit_members[i].size() == 7);
      CHECK(v.unit_members[i][0] == i);
      for (std::size_t idx : v.unit_members[i]) CHECK(idx < seq.size());
    }
  }
}
