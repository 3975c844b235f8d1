// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "carspeak/classifiers/forest.hpp"
#include "carspeak/classifiers/knn.hpp"
#include "carspeak/classifiers/mlp.hpp"
#include "carspeak/classifiers/svm.hpp"

namespace carspeak {

enum class ClassifierKind : std::uint32_t { Knn = 1, Forest = 2, Svm = 3, Mlp = 4 };

inline constexpr ClassifierKind kAllKinds[] = {ClassifierKind::Knn, ClassifierKind::Forest, ClassifierKind::Svm,
                                               ClassifierKind::Mlp};

inline std::string_view kind_name(ClassifierKind k) {
    switch (k) {
        case ClassifierKind::Knn: return "knn";
        case ClassifierKind::Forest: return "rf";
        case ClassifierKind::Svm: return "svm";
        case ClassifierKind::Mlp: return "mlp";
    }
    return "unknown";
}

inline std::optional<ClassifierKind> parse_kind(std::string_view s) {
    for (auto k : kAllKinds)
        if (kind_name(k) == s) return k;
    return std::nullopt;
}

using Classifier = std::variant<KnnModel, ForestModel, SvmModel, MlpModel>;

/// Which classifier to train, with the hyperparameters of every kind.
struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::Knn;
    KnnParams knn;
    ForestParams rf;
    SvmParams svm;
    MlpParams mlp;
    std::uint64_t seed = 7;

    /// Same seed for every kind that takes one.
    void set_seed(std::uint64_t s) {
        seed = s;
        rf.seed = s;
        svm.seed = s;
        mlp.seed = s;
    }

    /// Hyperparameters of the selected kind, as recorded in model metadata.
    std::vector<std::pair<std::string, double>> hyperparameters() const {
        switch (kind) {
            case ClassifierKind::Knn: return {{"k", static_cast<double>(knn.k)}};
            case ClassifierKind::Forest:
                return {{"n_trees", static_cast<double>(rf.n_trees)},
                        {"max_depth", static_cast<double>(rf.max_depth)},
                        {"min_split", static_cast<double>(rf.min_split)}};
            case ClassifierKind::Svm: return {{"lambda", svm.lambda}, {"epochs", static_cast<double>(svm.epochs)}};
            case ClassifierKind::Mlp:
                return {{"hidden", static_cast<double>(mlp.hidden)},
                        {"epochs", static_cast<double>(mlp.epochs)},
                        {"batch", static_cast<double>(mlp.batch)},
                        {"lr", mlp.lr}};
        }
        return {};
    }
};

inline Classifier train(const ClassifierSpec& spec, const DatasetMatrix& data) {
    switch (spec.kind) {
        case ClassifierKind::Knn: return knn_train(data, spec.knn);
        case ClassifierKind::Forest: return rf_train(data, spec.rf);
        case ClassifierKind::Svm: return svm_train(data, spec.svm);
        case ClassifierKind::Mlp: return mlp_train(data, spec.mlp);
    }
    throw std::invalid_argument("unknown classifier kind");
}

inline ClassifierKind kind_of(const Classifier& c) {
    return std::visit(
        []<typename M>(const M&) {
            if constexpr (std::is_same_v<M, KnnModel>) return ClassifierKind::Knn;
            else if constexpr (std::is_same_v<M, ForestModel>) return ClassifierKind::Forest;
            else if constexpr (std::is_same_v<M, SvmModel>) return ClassifierKind::Svm;
            else return ClassifierKind::Mlp;
        },
        c);
}

inline std::size_t n_classes(const Classifier& c) {
    return std::visit([](const auto& m) { return m.n_classes; }, c);
}

inline ClassId predict(const Classifier& c, const SparseVector& x) {
    return std::visit(
        [&]<typename M>(const M& m) {
            if constexpr (std::is_same_v<M, KnnModel>) return knn_predict(m, x);
            else if constexpr (std::is_same_v<M, ForestModel>) return rf_predict(m, x);
            else if constexpr (std::is_same_v<M, SvmModel>) return svm_predict(m, x);
            else return mlp_predict(m, x);
        },
        c);
}

/// Top n classes by the model's native score: KNN vote share, forest leaf
/// mass, SVM decision value, MLP softmax probability.
inline Ranking predict_topn(const Classifier& c, const SparseVector& x, std::size_t n) {
    return std::visit(
        [&]<typename M>(const M& m) {
            if constexpr (std::is_same_v<M, KnnModel>) return knn_topn(m, x, n);
            else if constexpr (std::is_same_v<M, ForestModel>) return rank_scores(rf_scores(m, x), n);
            else if constexpr (std::is_same_v<M, SvmModel>) return rank_scores(svm_scores(m, x), n);
            else return rank_scores(mlp_probabilities(m, x), n);
        },
        c);
}

}  // namespace carspeak
