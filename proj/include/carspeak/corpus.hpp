// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

namespace carspeak {

class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One car review. make and model are stored normalized.
struct ReviewDoc {
    std::string id;
    std::string make;
    std::string model;
    std::optional<int> year;
    std::optional<std::string> title;
    std::string text;
    std::optional<std::string> source;

    bool operator==(const ReviewDoc&) const = default;
};

/// Lowercase (ASCII), trim, and collapse internal whitespace runs to one space.
inline std::string normalize_name(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
    }
    return out;
}

/// Year-collapsed class key, "make|model".
inline std::string class_key(const ReviewDoc& d) { return d.make + "|" + d.model; }

/// Ordered, id-unique collection of reviews.
class Corpus {
public:
    Corpus() = default;

    void add(ReviewDoc doc) {
        if (!ids_.insert(doc.id).second) throw CorpusError("duplicate id '" + doc.id + "'");
        docs_.push_back(std::move(doc));
    }

    const std::vector<ReviewDoc>& docs() const { return docs_; }
    std::size_t size() const { return docs_.size(); }
    bool empty() const { return docs_.empty(); }
    const ReviewDoc& operator[](std::size_t i) const { return docs_[i]; }
    auto begin() const { return docs_.begin(); }
    auto end() const { return docs_.end(); }

    bool operator==(const Corpus& o) const { return docs_ == o.docs_; }

private:
    std::vector<ReviewDoc> docs_;
    std::unordered_set<std::string> ids_;
};

struct CorpusStats {
    std::size_t n_reviews = 0;
    std::size_t n_models = 0;
    std::size_t n_makes = 0;

    bool operator==(const CorpusStats&) const = default;
};

namespace detail {

inline bool is_blank(std::string_view s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

inline std::string line_prefix(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

inline std::string required_string(const nlohmann::json& rec, const char* field, std::size_t line_no) {
    auto it = rec.find(field);
    if (it == rec.end()) throw CorpusError(line_prefix(line_no) + "missing field " + field);
    if (!it->is_string()) throw CorpusError(line_prefix(line_no) + "field " + field + " must be a string");
    return it->get<std::string>();
}

inline std::optional<std::string> optional_string(const nlohmann::json& rec, const char* field,
                                                  std::size_t line_no) {
    auto it = rec.find(field);
    if (it == rec.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw CorpusError(line_prefix(line_no) + "field " + field + " must be a string");
    return it->get<std::string>();
}

}  // namespace detail

/// Parse a line-delimited corpus. Blank lines are skipped; everything else must
/// be a flat object with the known keys only.
inline Corpus ingest_corpus(std::istream& in) {
    static const std::set<std::string> known{"id", "make", "model", "year", "title", "text", "source"};
    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_blank(line)) continue;
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error&) {
            throw CorpusError(detail::line_prefix(line_no) + "malformed record (invalid JSON)");
        }
        if (!rec.is_object()) throw CorpusError(detail::line_prefix(line_no) + "record is not an object");
        for (const auto& [key, _] : rec.items())
            if (!known.contains(key)) throw CorpusError(detail::line_prefix(line_no) + "unknown field " + key);

        ReviewDoc doc;
        doc.id = detail::required_string(rec, "id", line_no);
        doc.make = normalize_name(detail::required_string(rec, "make", line_no));
        doc.model = normalize_name(detail::required_string(rec, "model", line_no));
        doc.text = detail::required_string(rec, "text", line_no);
        if (doc.id.empty()) throw CorpusError(detail::line_prefix(line_no) + "field id is empty");
        if (doc.make.empty()) throw CorpusError(detail::line_prefix(line_no) + "field make is empty");
        if (doc.model.empty()) throw CorpusError(detail::line_prefix(line_no) + "field model is empty");
        if (detail::is_blank(doc.text)) throw CorpusError(detail::line_prefix(line_no) + "field text is empty");

        if (auto it = rec.find("year"); it != rec.end() && !it->is_null()) {
            if (!it->is_number_integer())
                throw CorpusError(detail::line_prefix(line_no) + "field year must be an integer");
            doc.year = it->get<int>();
        }
        doc.title = detail::optional_string(rec, "title", line_no);
        doc.source = detail::optional_string(rec, "source", line_no);

        try {
            corpus.add(std::move(doc));
        } catch (const CorpusError& e) {
            throw CorpusError(detail::line_prefix(line_no) + e.what());
        }
    }
    return corpus;
}

inline void serialize_corpus(const Corpus& c, std::ostream& out) {
    for (const auto& d : c) {
        nlohmann::ordered_json rec;
        rec["id"] = d.id;
        rec["make"] = d.make;
        rec["model"] = d.model;
        if (d.year) rec["year"] = *d.year;
        if (d.title) rec["title"] = *d.title;
        rec["text"] = d.text;
        if (d.source) rec["source"] = *d.source;
        out << rec.dump() << '\n';
    }
}

/// Keep docs whose year lies in [min_year, max_year]. Docs without a year are
/// kept unless keep_missing is false.
inline Corpus filter_year_range(const Corpus& c, int min_year, int max_year, bool keep_missing = true) {
    if (min_year > max_year)
        throw std::invalid_argument("min_year " + std::to_string(min_year) + " exceeds max_year " +
                                    std::to_string(max_year));
    Corpus out;
    for (const auto& d : c) {
        const bool keep = d.year ? (*d.year >= min_year && *d.year <= max_year) : keep_missing;
        if (keep) out.add(d);
    }
    return out;
}

inline CorpusStats corpus_stats(const Corpus& c) {
    std::set<std::string> models;
    std::set<std::string> makes;
    for (const auto& d : c) {
        models.insert(class_key(d));
        makes.insert(d.make);
    }
    return {c.size(), models.size(), makes.size()};
}

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Fingerprint of the canonical serialization.
inline std::string corpus_fingerprint(const Corpus& c) {
    std::ostringstream os;
    serialize_corpus(c, os);
    return fnv1a_hex(os.str());
}

}  // namespace carspeak
