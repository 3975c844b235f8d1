// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "carspeak/rng.hpp"
#include "carspeak/textproc.hpp"

namespace carspeak {
namespace {

using Words = std::vector<std::string>;

TEST(Tokenize, StripsPunctuation) { EXPECT_EQ(tokenize("Fast, reliable car!"), (Words{"fast", "reliable", "car"})); }

TEST(Tokenize, EmptyText) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Tokenize, DigitsSplitAndShortRunsDrop) {
    // "a" is too short; "V8" splits into "v" (too short)
    EXPECT_EQ(tokenize("A V8 engine"), (Words{"engine"}));
    EXPECT_EQ(tokenize("under $20k"), (Words{"under"}));
    EXPECT_EQ(tokenize("caf\xc3\xa9s ok"), (Words{"caf", "ok"}));
}

TEST(Tokenize, CaseInvariant) {
    Rng rng(3);
    const std::string alphabet = "abcXYZ qQ,.9-";
    for (int trial = 0; trial < 200; ++trial) {
        std::string s;
        for (std::size_t i = rng.below(40); i > 0; --i) s.push_back(alphabet[rng.below(alphabet.size())]);
        std::string upper = s, lower = s;
        for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        EXPECT_EQ(tokenize(upper), tokenize(lower)) << s;
        for (const auto& t : tokenize(s)) {
            EXPECT_GE(t.size(), 2u);
            for (char c : t) EXPECT_TRUE(c >= 'a' && c <= 'z');
        }
    }
}

TEST(PosTag, DirectLookup) {
    PosLexicon lex;
    lex.add_entry("fast", Tag::Adj);
    EXPECT_EQ(pos_tag({"fast"}, lex), (std::vector<Token>{{"fast", Tag::Adj}}));
}

TEST(PosTag, SuffixRuleWhenNoEntry) {
    PosLexicon lex;
    lex.add_suffix_rule("ous", Tag::Adj);
    EXPECT_EQ(pos_tag({"luxurious"}, lex), (std::vector<Token>{{"luxurious", Tag::Adj}}));
}

TEST(PosTag, UnknownWordsAreNouns) {
    EXPECT_EQ(pos_tag({"flibbertigibbet"}, PosLexicon{}), (std::vector<Token>{{"flibbertigibbet", Tag::Noun}}));
    EXPECT_EQ(PosLexicon::builtin().lookup("saftey"), Tag::Noun);
    EXPECT_EQ(PosLexicon::builtin().lookup("drivetrain"), Tag::Noun);
}

TEST(PosTag, FirstMatchingSuffixWins) {
    PosLexicon lex;
    lex.add_suffix_rule("ly", Tag::Other);
    lex.add_suffix_rule("ally", Tag::Adj);
    EXPECT_EQ(lex.lookup("totally"), Tag::Other);
    lex.add_entry("family", Tag::Noun);
    EXPECT_EQ(lex.lookup("family"), Tag::Noun);
}

TEST(FilterContentWords, KeepsNounsAndAdjectivesInOrder) {
    const std::vector<Token> tagged{{"the", Tag::Other}, {"car", Tag::Noun}, {"fast", Tag::Adj}, {"car", Tag::Noun}};
    EXPECT_EQ(filter_content_words(tagged), (Words{"car", "fast", "car"}));
    EXPECT_TRUE(filter_content_words({{"is", Tag::Other}, {"very", Tag::Other}}).empty());
}

TEST(FilterContentWords, ReviewExcerpts) {
    const auto& lex = PosLexicon::builtin();
    EXPECT_EQ(content_words("luxurious cabin comfortable seats", lex),
              (Words{"luxurious", "cabin", "comfortable", "seats"}));
    EXPECT_EQ(content_words("the car is very fast", lex), (Words{"car", "fast"}));
    EXPECT_EQ(content_words("strong mix of comfort and safety features", lex),
              (Words{"strong", "mix", "comfort", "safety", "features"}));
    EXPECT_EQ(content_words("best cars for families", lex), (Words{"best", "cars", "families"}));
    EXPECT_EQ(content_words("I need a fast, family friendly, reliable car under $20k", lex),
              (Words{"fast", "family", "friendly", "reliable", "car"}));
}

TEST(FilterContentWords, Deterministic) {
    const std::string text = "Top-notch reliability and a good value proposition.";
    EXPECT_EQ(content_words(text, PosLexicon::builtin()), content_words(text, PosLexicon::builtin()));
}

TEST(Lexicon, ParsesEntriesAndSuffixSection) {
    auto lex = PosLexicon::parse("fast\tADJ\n# comment\n\ncar\tNOUN\nthe\tOTHER\n#SUFFIX\n-ous\tADJ\n-ly\tOTHER\n");
    EXPECT_EQ(lex.entry_count(), 3u);
    EXPECT_EQ(lex.lookup("fast"), Tag::Adj);
    EXPECT_EQ(lex.lookup("the"), Tag::Other);
    EXPECT_EQ(lex.lookup("famous"), Tag::Adj);
    EXPECT_EQ(lex.lookup("quickly"), Tag::Other);
    ASSERT_EQ(lex.suffix_rules().size(), 2u);
    EXPECT_EQ(lex.suffix_rules()[0].first, "ous");
}

TEST(Lexicon, RejectsMalformedLines) {
    EXPECT_THROW(PosLexicon::parse("fast ADJ\n"), std::invalid_argument);
    EXPECT_THROW(PosLexicon::parse("fast\tVERB\n"), std::invalid_argument);
    EXPECT_THROW(PosLexicon::parse("#SUFFIX\nous\tADJ\n"), std::invalid_argument);
}

TEST(Lexicon, ShippedFileMatchesBuiltin) {
    std::ifstream in(CARSPEAK_SOURCE_DIR "/data/lexicon.tsv");
    ASSERT_TRUE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), std::string(kDefaultLexicon));
    EXPECT_EQ(PosLexicon::parse(ss.str()).fingerprint(), PosLexicon::builtin().fingerprint());
}

Corpus corpus_of(const std::vector<std::string>& texts) {
    Corpus c;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        ReviewDoc d;
        d.id = std::to_string(i);
        d.make = "m";
        d.model = "x";
        d.text = texts[i];
        c.add(d);
    }
    return c;
}

TEST(TopK, CountsAcrossDocuments) {
    const auto c = corpus_of({"car car fast", "car fast the", "car car fast very"});
    const auto top = top_k_frequencies(c, PosLexicon::builtin(), 2);
    EXPECT_EQ(top, (std::vector<WordFrequency>{{"car", 5}, {"fast", 3}}));
}

TEST(TopK, ExhaustsSmallVocabulary) {
    const auto c = corpus_of({"seats cabin cabin"});
    EXPECT_EQ(top_k_frequencies(c, PosLexicon::builtin(), 20),
              (std::vector<WordFrequency>{{"cabin", 2}, {"seats", 1}}));
}

TEST(TopK, TiesGoToSmallerWord) {
    const auto c = corpus_of({"truck sedan"});
    EXPECT_EQ(top_k_frequencies(c, PosLexicon::builtin(), 1), (std::vector<WordFrequency>{{"sedan", 1}}));
    EXPECT_THROW(top_k_frequencies(c, PosLexicon::builtin(), 0), std::invalid_argument);
}

TEST(TopK, ReportsOnlyContentWordsAndMergesPerDocument) {
    Rng rng(5);
    const Words pool{"the", "car", "is", "very", "fast", "safety", "quickly", "luxury", "and", "seats"};
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::string> texts;
        std::string all;
        for (std::size_t d = 1 + rng.below(6); d > 0; --d) {
            std::string t;
            for (std::size_t w = rng.below(12); w > 0; --w) t += pool[rng.below(pool.size())] + " ";
            texts.push_back(t);
            all += t + " ";
        }
        const auto& lex = PosLexicon::builtin();
        const auto top = top_k_frequencies(corpus_of(texts), lex, 100);
        for (const auto& wf : top) {
            EXPECT_TRUE(is_content(lex.lookup(wf.word))) << wf.word;
            EXPECT_GT(wf.count, 0u);
        }
        WordCounts merged;
        for (const auto& t : texts) accumulate_counts(merged, content_words(t, lex));
        WordCounts whole;
        accumulate_counts(whole, content_words(all, lex));
        EXPECT_EQ(merged, whole);
        EXPECT_EQ(top_k_from_counts(merged, 100), top);
    }
}

}  // namespace
}  // namespace carspeak
