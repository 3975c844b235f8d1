// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "carspeak/classifier.hpp"
#include "carspeak/corpus.hpp"
#include "carspeak/model_store.hpp"
#include "carspeak/textproc.hpp"
#include "carspeak/vectorize.hpp"

namespace carspeak {

/// Fits features on the whole corpus and trains one classifier.
inline ModelBundle train_bundle(const Corpus& c, const PosLexicon& lex, const ClassifierSpec& spec) {
    auto ds = build_dataset(c, lex);
    ModelBundle b;
    b.metadata.corpus_hash = corpus_fingerprint(c);
    b.metadata.lexicon_hash = lex.fingerprint();
    b.metadata.seed = spec.seed;
    b.metadata.hyperparameters = spec.hyperparameters();
    b.classifier = train(spec, ds.matrix);
    b.vocab = std::move(ds.vocab);
    b.idf = std::move(ds.idf);
    b.labels = std::move(ds.labels);
    return b;
}

struct QueryMatch {
    std::string make;
    std::string model;
    double score = 0.0;
    std::vector<std::string> matched_terms;

    bool operator==(const QueryMatch&) const = default;
};

struct QueryResult {
    std::vector<QueryMatch> results;
    std::vector<std::string> unknown_terms;
    ClassifierKind classifier = ClassifierKind::Knn;

    bool operator==(const QueryResult&) const = default;
};

/// Runs free text through the bundle's pipeline and ranks car models.
/// Content words found in the vocabulary are reported as matched terms, the
/// rest as unknown terms; both lists are de-duplicated in first-seen order.
/// Numbers and punctuation never survive tokenization, so they land in neither.
inline QueryResult answer_query(const ModelBundle& b, const PosLexicon& lex, std::string_view text,
                                std::size_t top_n) {
    const auto words = content_words(text, lex);
    std::vector<std::string> matched;
    QueryResult out;
    out.classifier = b.kind();
    std::set<std::string> seen;
    for (const auto& w : words) {
        if (!seen.insert(w).second) continue;
        (b.vocab.contains(w) ? matched : out.unknown_terms).push_back(w);
    }
    const auto x = vectorize_doc(words, b.vocab, b.idf);
    for (const auto& [cls, score] : predict_topn(b.classifier, x, top_n)) {
        auto [make, model] = b.labels.make_model(cls);
        out.results.push_back({std::move(make), std::move(model), score, matched});
    }
    return out;
}

inline nlohmann::ordered_json to_json(const QueryResult& r) {
    nlohmann::ordered_json j;
    j["classifier"] = kind_name(r.classifier);
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& m : r.results) {
        nlohmann::ordered_json e;
        e["make"] = m.make;
        e["model"] = m.model;
        e["score"] = m.score;
        e["matched_terms"] = m.matched_terms;
        j["results"].push_back(std::move(e));
    }
    j["unknown_terms"] = r.unknown_terms;
    return j;
}

inline nlohmann::ordered_json model_info_json(const ModelBundle& b) {
    nlohmann::ordered_json j;
    j["classifier"] = kind_name(b.kind());
    j["n_classes"] = b.labels.size();
    j["vocabulary_size"] = b.vocab.size();
    j["corpus_hash"] = b.metadata.corpus_hash;
    j["lexicon_hash"] = b.metadata.lexicon_hash;
    j["seed"] = b.metadata.seed;
    j["format_version"] = b.format_version;
    nlohmann::ordered_json hp = nlohmann::ordered_json::object();
    for (const auto& [k, v] : b.metadata.hyperparameters) hp[k] = v;
    j["hyperparameters"] = std::move(hp);
    return j;
}

}  // namespace carspeak
