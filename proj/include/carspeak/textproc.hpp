// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "carspeak/corpus.hpp"
#include "carspeak/default_lexicon.hpp"

namespace carspeak {

enum class Tag { Noun, Adj, Other };

inline std::string_view tag_name(Tag t) {
    switch (t) {
        case Tag::Noun: return "NOUN";
        case Tag::Adj: return "ADJ";
        case Tag::Other: return "OTHER";
    }
    return "OTHER";
}

inline Tag parse_tag(std::string_view s) {
    if (s == "NOUN") return Tag::Noun;
    if (s == "ADJ") return Tag::Adj;
    if (s == "OTHER") return Tag::Other;
    throw std::invalid_argument("unknown part-of-speech tag '" + std::string(s) + "'");
}

struct Token {
    std::string surface;
    Tag tag = Tag::Noun;

    bool operator==(const Token&) const = default;
};

struct WordFrequency {
    std::string word;
    std::size_t count = 0;

    bool operator==(const WordFrequency&) const = default;
};

/// Word -> tag table with ordered suffix fallbacks. Unknown words are nouns.
class PosLexicon {
public:
    PosLexicon() = default;

    void add_entry(std::string word, Tag tag) { entries_[std::move(word)] = tag; }
    void add_suffix_rule(std::string suffix, Tag tag) { suffix_rules_.emplace_back(std::move(suffix), tag); }

    Tag lookup(std::string_view word) const {
        if (auto it = entries_.find(std::string(word)); it != entries_.end()) return it->second;
        for (const auto& [suffix, tag] : suffix_rules_)
            if (word.size() >= suffix.size() && word.ends_with(suffix)) return tag;
        return Tag::Noun;
    }

    std::size_t entry_count() const { return entries_.size(); }

    /// Hash of the sorted entries and the ordered suffix rules.
    std::string fingerprint() const {
        std::map<std::string, Tag> sorted(entries_.begin(), entries_.end());
        std::string canon;
        for (const auto& [w, t] : sorted) canon.append(w).append("\t").append(tag_name(t)).append("\n");
        canon.append("#SUFFIX\n");
        for (const auto& [s, t] : suffix_rules_) canon.append("-").append(s).append("\t").append(tag_name(t)).append("\n");
        return fnv1a_hex(canon);
    }
    const std::vector<std::pair<std::string, Tag>>& suffix_rules() const { return suffix_rules_; }

    /// Reads "word<TAB>TAG" lines; a "#SUFFIX" line switches to "-suffix<TAB>TAG"
    /// rules listed in priority order. Other '#' lines and blank lines are ignored.
    static PosLexicon parse(std::istream& in) {
        PosLexicon lex;
        bool in_suffixes = false;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            if (line == "#SUFFIX") {
                in_suffixes = true;
                continue;
            }
            if (line.front() == '#') continue;
            const auto tab = line.find('\t');
            if (tab == std::string::npos || tab == 0)
                throw std::invalid_argument("lexicon line " + std::to_string(line_no) + ": expected word<TAB>TAG");
            std::string word = line.substr(0, tab);
            Tag tag;
            try {
                tag = parse_tag(std::string_view(line).substr(tab + 1));
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument("lexicon line " + std::to_string(line_no) + ": " + e.what());
            }
            if (in_suffixes) {
                if (word.size() < 2 || word.front() != '-')
                    throw std::invalid_argument("lexicon line " + std::to_string(line_no) +
                                                ": suffix rules must start with '-'");
                lex.add_suffix_rule(word.substr(1), tag);
            } else {
                lex.add_entry(std::move(word), tag);
            }
        }
        return lex;
    }

    static PosLexicon parse(std::string_view text) {
        std::istringstream in{std::string(text)};
        return parse(in);
    }

    static const PosLexicon& builtin() {
        static const PosLexicon lex = parse(kDefaultLexicon);
        return lex;
    }

private:
    std::unordered_map<std::string, Tag> entries_;
    std::vector<std::pair<std::string, Tag>> suffix_rules_;
};

inline constexpr std::size_t kMinTokenLength = 2;

/// Lowercased maximal runs of ASCII letters; runs shorter than two are dropped.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (cur.size() >= kMinTokenLength) out.push_back(cur);
        cur.clear();
    };
    for (char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))
            cur.push_back(static_cast<char>(c | 0x20));
        else
            flush();
    }
    flush();
    return out;
}

inline std::vector<Token> pos_tag(const std::vector<std::string>& tokens, const PosLexicon& lex) {
    std::vector<Token> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back({t, lex.lookup(t)});
    return out;
}

inline bool is_content(Tag t) { return t == Tag::Noun || t == Tag::Adj; }

inline std::vector<std::string> filter_content_words(const std::vector<Token>& tagged) {
    std::vector<std::string> out;
    for (const auto& t : tagged)
        if (is_content(t.tag)) out.push_back(t.surface);
    return out;
}

/// tokenize -> tag -> keep nouns and adjectives.
inline std::vector<std::string> content_words(std::string_view text, const PosLexicon& lex) {
    return filter_content_words(pos_tag(tokenize(text), lex));
}

using WordCounts = std::map<std::string, std::size_t>;

inline void accumulate_counts(WordCounts& counts, const std::vector<std::string>& words) {
    for (const auto& w : words) ++counts[w];
}

/// Highest counts first; equal counts in ascending word order.
inline std::vector<WordFrequency> top_k_from_counts(const WordCounts& counts, std::size_t k) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    std::vector<WordFrequency> all;
    all.reserve(counts.size());
    for (const auto& [w, n] : counts)
        if (n > 0) all.push_back({w, n});
    const auto cmp = [](const WordFrequency& a, const WordFrequency& b) {
        return a.count != b.count ? a.count > b.count : a.word < b.word;
    };
    const auto keep = std::min(k, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), cmp);
    all.resize(keep);
    return all;
}

inline std::vector<WordFrequency> top_k_frequencies(const Corpus& c, const PosLexicon& lex, std::size_t k) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    WordCounts counts;
    for (const auto& d : c) accumulate_counts(counts, content_words(d.text, lex));
    return top_k_from_counts(counts, k);
}

}  // namespace carspeak
