// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "carspeak/classifier.hpp"
#include "carspeak/corpus.hpp"
#include "carspeak/rng.hpp"
#include "carspeak/textproc.hpp"
#include "carspeak/vectorize.hpp"

namespace carspeak {

struct FoldPlan {
    std::vector<std::vector<std::size_t>> folds;
    std::uint64_t seed = 0;
    std::size_t k = 0;

    bool operator==(const FoldPlan&) const = default;
};

namespace detail {

inline void check_fold_args(std::size_t n, std::size_t k) {
    if (k < 2) throw std::invalid_argument("fold count must be at least 2");
    if (n < k)
        throw std::invalid_argument("cannot split " + std::to_string(n) + " rows into " + std::to_string(k) +
                                    " folds");
}

inline std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(std::span(perm));
    return perm;
}

}  // namespace detail

/// Seeded permutation of 0..n-1 cut into k contiguous chunks; the first n mod k
/// chunks hold one extra row.
inline FoldPlan kfold_split(std::size_t n, std::size_t k, std::uint64_t seed) {
    detail::check_fold_args(n, k);
    const auto perm = detail::permutation(n, seed);
    FoldPlan plan{{}, seed, k};
    std::size_t pos = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const auto size = n / k + (f < n % k ? 1 : 0);
        plan.folds.emplace_back(perm.begin() + static_cast<std::ptrdiff_t>(pos),
                                perm.begin() + static_cast<std::ptrdiff_t>(pos + size));
        pos += size;
    }
    return plan;
}

/// Stratified variant: the shuffled rows are grouped by label and dealt to the
/// folds round-robin, so each fold sees every class in proportion.
inline FoldPlan kfold_split_stratified(std::span<const ClassId> labels, std::size_t k, std::uint64_t seed) {
    detail::check_fold_args(labels.size(), k);
    auto perm = detail::permutation(labels.size(), seed);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
    FoldPlan plan{std::vector<std::vector<std::size_t>>(k), seed, k};
    for (std::size_t i = 0; i < perm.size(); ++i) plan.folds[i % k].push_back(perm[i]);
    return plan;
}

struct ClassCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    bool operator==(const ClassCounts&) const = default;
};

/// Per-class counts for every class seen in gold or prediction.
struct ConfusionCounts {
    std::map<ClassId, ClassCounts> per_class;
    std::size_t total = 0;

    void merge(const ConfusionCounts& o) {
        for (const auto& [c, n] : o.per_class) {
            auto& mine = per_class[c];
            mine.tp += n.tp;
            mine.fp += n.fp;
            mine.fn += n.fn;
        }
        total += o.total;
    }

    bool operator==(const ConfusionCounts&) const = default;
};

inline ConfusionCounts confusion_counts(std::span<const ClassId> golds, std::span<const ClassId> preds) {
    if (golds.size() != preds.size())
        throw std::invalid_argument("confusion counts: " + std::to_string(golds.size()) + " golds vs " +
                                    std::to_string(preds.size()) + " predictions");
    if (golds.empty()) throw std::invalid_argument("confusion counts: no predictions");
    ConfusionCounts cc;
    cc.total = golds.size();
    for (std::size_t i = 0; i < golds.size(); ++i) {
        if (golds[i] == preds[i]) {
            ++cc.per_class[golds[i]].tp;
        } else {
            ++cc.per_class[preds[i]].fp;
            ++cc.per_class[golds[i]].fn;
        }
    }
    return cc;
}

struct Metrics {
    double precision_macro = 0.0;
    double recall_macro = 0.0;
    double f1_macro = 0.0;
    double f1_micro = 0.0;

    bool operator==(const Metrics&) const = default;
};

struct ClassScores {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Zero wherever a denominator is zero.
inline ClassScores class_scores(const ClassCounts& n) {
    ClassScores s;
    if (n.tp + n.fp > 0) s.precision = static_cast<double>(n.tp) / static_cast<double>(n.tp + n.fp);
    if (n.tp + n.fn > 0) s.recall = static_cast<double>(n.tp) / static_cast<double>(n.tp + n.fn);
    if (s.precision + s.recall > 0.0) s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

/// Macro averages over `class_set`; f1_macro is the mean of per-class F1.
/// Classes in the set without counts contribute zeros.
inline Metrics compute_metrics(const ConfusionCounts& cc, std::span<const ClassId> class_set) {
    if (cc.total == 0) throw std::invalid_argument("metrics: empty confusion counts");
    if (class_set.empty()) throw std::invalid_argument("metrics: empty class set");
    Metrics m;
    std::size_t tp = 0;
    for (const auto& [_, n] : cc.per_class) tp += n.tp;
    for (auto c : class_set) {
        auto it = cc.per_class.find(c);
        const auto s = it == cc.per_class.end() ? ClassScores{} : class_scores(it->second);
        m.precision_macro += s.precision;
        m.recall_macro += s.recall;
        m.f1_macro += s.f1;
    }
    const auto k = static_cast<double>(class_set.size());
    m.precision_macro /= k;
    m.recall_macro /= k;
    m.f1_macro /= k;
    m.f1_micro = static_cast<double>(tp) / static_cast<double>(cc.total);
    return m;
}

/// Class set = gold ∪ pred, which is exactly the classes present in the counts.
inline Metrics compute_metrics(const ConfusionCounts& cc) {
    std::vector<ClassId> classes;
    for (const auto& [c, _] : cc.per_class) classes.push_back(c);
    return compute_metrics(cc, classes);
}

enum class FitScope { TrainOnly, All };

inline std::string_view fit_scope_name(FitScope s) { return s == FitScope::All ? "all" : "train"; }

struct EvalReport {
    ClassifierKind classifier = ClassifierKind::Knn;
    Metrics pooled;
    std::vector<Metrics> per_fold;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    FitScope fit_scope = FitScope::TrainOnly;

    Metrics fold_mean() const {
        Metrics m;
        for (const auto& f : per_fold) {
            m.precision_macro += f.precision_macro;
            m.recall_macro += f.recall_macro;
            m.f1_macro += f.f1_macro;
            m.f1_micro += f.f1_micro;
        }
        const auto n = static_cast<double>(std::max<std::size_t>(per_fold.size(), 1));
        m.precision_macro /= n;
        m.recall_macro /= n;
        m.f1_macro /= n;
        m.f1_micro /= n;
        return m;
    }

    bool operator==(const EvalReport&) const = default;
};

struct CrossValidationOptions {
    std::size_t k = 4;
    std::uint64_t seed = 7;
    FitScope fit_scope = FitScope::TrainOnly;
    bool stratified = false;
};

/// Runs every classifier in `specs` over one shared fold plan. Metrics are
/// computed once on the pooled held-out predictions and also per fold.
inline std::vector<EvalReport> cross_validate(const Corpus& c, const PosLexicon& lex,
                                              std::span<const ClassifierSpec> specs,
                                              const CrossValidationOptions& opt) {
    const auto docs = analyze_corpus(c, lex);
    const auto labels = build_label_map(c);
    std::vector<ClassId> ids;
    ids.reserve(c.size());
    for (const auto& d : c) ids.push_back(labels.id_of(d));

    const auto plan =
        opt.stratified ? kfold_split_stratified(ids, opt.k, opt.seed) : kfold_split(c.size(), opt.k, opt.seed);

    std::optional<Featurizer> global;
    if (opt.fit_scope == FitScope::All) global = Featurizer::fit(docs);

    std::vector<EvalReport> reports;
    std::vector<ConfusionCounts> pooled(specs.size());
    for (const auto& s : specs) reports.push_back({s.kind, {}, {}, opt.k, opt.seed, opt.fit_scope});

    for (std::size_t f = 0; f < plan.folds.size(); ++f) {
        std::vector<std::size_t> train_rows;
        for (std::size_t g = 0; g < plan.folds.size(); ++g)
            if (g != f) train_rows.insert(train_rows.end(), plan.folds[g].begin(), plan.folds[g].end());
        std::sort(train_rows.begin(), train_rows.end());
        const auto& test_rows = plan.folds[f];

        std::set<ClassId> train_classes;
        for (auto r : train_rows) train_classes.insert(ids[r]);
        if (train_classes.size() < 2)
            throw std::invalid_argument("fold " + std::to_string(f) +
                                        ": training partition has fewer than two classes");

        Featurizer local;
        if (!global) {
            std::vector<WordList> train_docs;
            train_docs.reserve(train_rows.size());
            for (auto r : train_rows) train_docs.push_back(docs[r]);
            local = Featurizer::fit(train_docs);
        }
        const Featurizer& feats = global ? *global : local;
        const auto train_set = make_matrix(docs, ids, train_rows, feats, labels.size());
        const auto test = make_matrix(docs, ids, test_rows, feats, labels.size());

        std::vector<ClassId> golds;
        for (const auto& row : test.rows) golds.push_back(row.label);
        for (std::size_t s = 0; s < specs.size(); ++s) {
            const auto model = train(specs[s], train_set);
            std::vector<ClassId> preds;
            preds.reserve(test.size());
            for (const auto& row : test.rows) preds.push_back(predict(model, row.x));
            const auto cc = confusion_counts(golds, preds);
            reports[s].per_fold.push_back(compute_metrics(cc));
            pooled[s].merge(cc);
        }
    }
    for (std::size_t s = 0; s < specs.size(); ++s) reports[s].pooled = compute_metrics(pooled[s]);
    return reports;
}

inline EvalReport cross_validate(const Corpus& c, const PosLexicon& lex, const ClassifierSpec& spec,
                                 const CrossValidationOptions& opt) {
    return cross_validate(c, lex, std::span(&spec, 1), opt).front();
}

/// One flat line per report: classifier, the four pooled metrics, k, seed, fit_scope.
inline void write_report(std::span<const EvalReport> reports, std::ostream& out) {
    for (const auto& r : reports) {
        nlohmann::ordered_json rec;
        rec["classifier"] = kind_name(r.classifier);
        rec["precision_macro"] = r.pooled.precision_macro;
        rec["recall_macro"] = r.pooled.recall_macro;
        rec["f1_macro"] = r.pooled.f1_macro;
        rec["f1_micro"] = r.pooled.f1_micro;
        rec["k"] = r.k;
        rec["seed"] = r.seed;
        rec["fit_scope"] = fit_scope_name(r.fit_scope);
        out << rec.dump() << '\n';
    }
}

/// Per-fold breakdown, followed by a "mean" line of fold-averaged metrics.
inline void write_fold_report(std::span<const EvalReport> reports, std::ostream& out) {
    auto line = [&](const EvalReport& r, const nlohmann::ordered_json& fold, const Metrics& m) {
        nlohmann::ordered_json rec;
        rec["classifier"] = kind_name(r.classifier);
        rec["fold"] = fold;
        rec["precision_macro"] = m.precision_macro;
        rec["recall_macro"] = m.recall_macro;
        rec["f1_macro"] = m.f1_macro;
        rec["f1_micro"] = m.f1_micro;
        rec["seed"] = r.seed;
        rec["fit_scope"] = fit_scope_name(r.fit_scope);
        out << rec.dump() << '\n';
    };
    for (const auto& r : reports) {
        for (std::size_t f = 0; f < r.per_fold.size(); ++f) line(r, f, r.per_fold[f]);
        line(r, "mean", r.fold_mean());
    }
}

}  // namespace carspeak
