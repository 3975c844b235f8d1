// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "carspeak/corpus.hpp"
#include "carspeak/textproc.hpp"

namespace carspeak {

using WordList = std::vector<std::string>;
using ClassId = std::uint32_t;
using FeatureIndex = std::uint32_t;

/// Sorted term list with its inverse index.
class Vocabulary {
public:
    Vocabulary() = default;

    /// terms must be strictly ascending.
    explicit Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i > 0 && !(terms_[i - 1] < terms_[i]))
                throw std::invalid_argument("vocabulary terms must be strictly ascending");
            index_.emplace(terms_[i], static_cast<FeatureIndex>(i));
        }
    }

    std::optional<FeatureIndex> find(const std::string& w) const {
        if (auto it = index_.find(w); it != index_.end()) return it->second;
        return std::nullopt;
    }
    bool contains(const std::string& w) const { return index_.contains(w); }

    const std::vector<std::string>& terms() const { return terms_; }
    const std::string& term(FeatureIndex i) const { return terms_[i]; }
    std::size_t size() const { return terms_.size(); }

    bool operator==(const Vocabulary& o) const { return terms_ == o.terms_; }

private:
    std::vector<std::string> terms_;
    std::unordered_map<std::string, FeatureIndex> index_;
};

/// idf weights aligned with vocabulary positions.
struct IdfTable {
    std::vector<double> idf;
    std::size_t n_docs = 0;

    bool operator==(const IdfTable&) const = default;
};

/// Sparse row: ascending unique indices, finite non-zero weights.
struct SparseVector {
    std::vector<std::pair<FeatureIndex, double>> entries;

    bool empty() const { return entries.empty(); }
    std::size_t nnz() const { return entries.size(); }

    /// Implicit-zero read.
    double at(FeatureIndex i) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), i,
                                   [](const auto& e, FeatureIndex k) { return e.first < k; });
        return (it != entries.end() && it->first == i) ? it->second : 0.0;
    }

    double norm() const {
        double s = 0.0;
        for (const auto& [_, w] : entries) s += w * w;
        return std::sqrt(s);
    }

    bool operator==(const SparseVector&) const = default;
};

inline double dot(const SparseVector& a, const SparseVector& b) {
    double s = 0.0;
    auto ia = a.entries.begin();
    auto ib = b.entries.begin();
    while (ia != a.entries.end() && ib != b.entries.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            s += ia->second * ib->second;
            ++ia;
            ++ib;
        }
    }
    return s;
}

inline double dot(std::span<const double> dense, const SparseVector& x) {
    double s = 0.0;
    for (const auto& [i, w] : x.entries) s += dense[i] * w;
    return s;
}

/// Sorted class keys ("make|model") with contiguous ids.
class LabelMap {
public:
    LabelMap() = default;

    /// labels must be strictly ascending.
    explicit LabelMap(std::vector<std::string> labels) : labels_(std::move(labels)) {
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (i > 0 && !(labels_[i - 1] < labels_[i]))
                throw std::invalid_argument("label keys must be strictly ascending");
            index_.emplace(labels_[i], static_cast<ClassId>(i));
        }
    }

    std::optional<ClassId> find(const std::string& key) const {
        if (auto it = index_.find(key); it != index_.end()) return it->second;
        return std::nullopt;
    }
    ClassId id_of(const ReviewDoc& d) const {
        auto id = find(class_key(d));
        if (!id) throw std::out_of_range("no class for '" + class_key(d) + "'");
        return *id;
    }

    const std::string& key(ClassId c) const { return labels_[c]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }

    /// Splits "make|model".
    std::pair<std::string, std::string> make_model(ClassId c) const {
        const auto& k = labels_[c];
        const auto bar = k.find('|');
        return {k.substr(0, bar), bar == std::string::npos ? std::string{} : k.substr(bar + 1)};
    }

    bool operator==(const LabelMap& o) const { return labels_ == o.labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, ClassId> index_;
};

struct LabeledRow {
    SparseVector x;
    ClassId label = 0;

    bool operator==(const LabeledRow&) const = default;
};

struct DatasetMatrix {
    std::vector<LabeledRow> rows;
    std::size_t dim = 0;
    std::size_t n_classes = 0;

    std::size_t size() const { return rows.size(); }
    bool empty() const { return rows.empty(); }

    bool operator==(const DatasetMatrix&) const = default;
};

inline Vocabulary build_vocabulary(std::span<const WordList> docs) {
    std::set<std::string> all;
    for (const auto& d : docs) all.insert(d.begin(), d.end());
    return Vocabulary(std::vector<std::string>(all.begin(), all.end()));
}

/// Smoothed idf: ln((1 + N) / (1 + df)) + 1.
inline double smoothed_idf(std::size_t n_docs, std::size_t df) {
    return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(df))) + 1.0;
}

inline IdfTable fit_idf(std::span<const WordList> docs, const Vocabulary& vocab) {
    std::vector<std::size_t> df(vocab.size(), 0);
    std::vector<std::size_t> last_seen(vocab.size(), SIZE_MAX);
    for (std::size_t d = 0; d < docs.size(); ++d) {
        for (const auto& w : docs[d]) {
            auto i = vocab.find(w);
            if (!i) throw std::invalid_argument("word '" + w + "' is not in the vocabulary");
            if (last_seen[*i] != d) {
                last_seen[*i] = d;
                ++df[*i];
            }
        }
    }
    IdfTable t;
    t.n_docs = docs.size();
    t.idf.reserve(vocab.size());
    for (auto f : df) t.idf.push_back(smoothed_idf(docs.size(), f));
    return t;
}

/// Raw counts times idf, then L2-normalized. Out-of-vocabulary words are skipped.
inline SparseVector vectorize_doc(const WordList& words, const Vocabulary& vocab, const IdfTable& idf) {
    std::map<FeatureIndex, std::size_t> counts;
    for (const auto& w : words)
        if (auto i = vocab.find(w)) ++counts[*i];
    SparseVector v;
    v.entries.reserve(counts.size());
    for (const auto& [i, n] : counts) v.entries.emplace_back(i, static_cast<double>(n) * idf.idf[i]);
    const double norm = v.norm();
    if (norm > 0.0)
        for (auto& e : v.entries) e.second /= norm;
    return v;
}

inline LabelMap build_label_map(const Corpus& c) {
    std::set<std::string> keys;
    for (const auto& d : c) keys.insert(class_key(d));
    return LabelMap(std::vector<std::string>(keys.begin(), keys.end()));
}

/// Content words of every doc, in corpus order.
inline std::vector<WordList> analyze_corpus(const Corpus& c, const PosLexicon& lex) {
    std::vector<WordList> out;
    out.reserve(c.size());
    for (const auto& d : c) out.push_back(content_words(d.text, lex));
    return out;
}

/// Vocabulary plus idf fitted on one set of documents.
struct Featurizer {
    Vocabulary vocab;
    IdfTable idf;

    static Featurizer fit(std::span<const WordList> docs) {
        Featurizer f;
        f.vocab = build_vocabulary(docs);
        f.idf = fit_idf(docs, f.vocab);
        return f;
    }

    SparseVector transform(const WordList& words) const { return vectorize_doc(words, vocab, idf); }
};

/// Rows for the documents selected by `rows`, featurized with `f`.
inline DatasetMatrix make_matrix(std::span<const WordList> docs, std::span<const ClassId> labels,
                                 std::span<const std::size_t> rows, const Featurizer& f, std::size_t n_classes) {
    DatasetMatrix m;
    m.dim = f.vocab.size();
    m.n_classes = n_classes;
    m.rows.reserve(rows.size());
    for (auto r : rows) m.rows.push_back({f.transform(docs[r]), labels[r]});
    return m;
}

struct Dataset {
    DatasetMatrix matrix;
    Vocabulary vocab;
    IdfTable idf;
    LabelMap labels;
};

/// One row per review: tokenize, tag, filter, fit vocabulary and idf, vectorize.
inline Dataset build_dataset(const Corpus& c, const PosLexicon& lex) {
    if (c.empty()) throw std::invalid_argument("cannot build a dataset from an empty corpus");
    const auto docs = analyze_corpus(c, lex);
    auto labels = build_label_map(c);
    std::vector<ClassId> ids;
    ids.reserve(c.size());
    for (const auto& d : c) ids.push_back(labels.id_of(d));
    std::vector<std::size_t> all(c.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

    auto f = Featurizer::fit(docs);
    auto m = make_matrix(docs, ids, all, f, labels.size());
    return {std::move(m), std::move(f.vocab), std::move(f.idf), std::move(labels)};
}

}  // namespace carspeak
