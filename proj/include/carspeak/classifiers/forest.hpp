// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "carspeak/ranking.hpp"
#include "carspeak/rng.hpp"
#include "carspeak/vectorize.hpp"

namespace carspeak {

struct ForestParams {
    std::size_t n_trees = 100;
    std::size_t max_depth = 40;
    std::size_t min_split = 2;
    std::uint64_t seed = 7;
};

/// Internal nodes send x[feature] <= threshold left. Leaves carry a sparse
/// (class, count) histogram sorted by class.
struct TreeNode {
    static constexpr std::uint32_t kLeaf = UINT32_MAX;

    std::uint32_t feature = kLeaf;
    double threshold = 0.0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::vector<std::pair<ClassId, std::uint32_t>> histogram;

    bool is_leaf() const { return feature == kLeaf; }
    bool operator==(const TreeNode&) const = default;
};

struct DecisionTree {
    std::vector<TreeNode> nodes;  // root at 0

    const TreeNode& route(const SparseVector& x) const {
        const TreeNode* n = &nodes.front();
        while (!n->is_leaf()) n = &nodes[x.at(n->feature) <= n->threshold ? n->left : n->right];
        return *n;
    }

    bool operator==(const DecisionTree&) const = default;
};

struct ForestModel {
    std::vector<DecisionTree> trees;
    std::size_t dim = 0;
    std::size_t n_classes = 0;

    bool operator==(const ForestModel&) const = default;
};

namespace detail {

struct SplitChoice {
    bool valid = false;
    FeatureIndex feature = 0;
    double threshold = 0.0;
    // Maximizing Σ_left c²/n_left + Σ_right c²/n_right minimizes weighted Gini.
    // Kept as an exact fraction so ties are decided by the index rules, not rounding.
    unsigned __int128 num = 0;
    unsigned __int128 den = 1;
};

/// a is the better split: higher purity, then lower feature, then lower threshold.
inline bool better_split(const SplitChoice& a, const SplitChoice& b) {
    if (!b.valid) return a.valid;
    if (!a.valid) return false;
    const auto lhs = a.num * b.den;
    const auto rhs = b.num * a.den;
    if (lhs != rhs) return lhs > rhs;
    if (a.feature != b.feature) return a.feature < b.feature;
    return a.threshold < b.threshold;
}

class TreeBuilder {
public:
    TreeBuilder(const DatasetMatrix& data, const ForestParams& params, std::uint64_t seed)
        : data_(data), params_(params), rng_(seed), features_(data.dim),
          mtry_(static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(data.dim))))),
          left_counts_(data.n_classes), right_counts_(data.n_classes) {
        std::iota(features_.begin(), features_.end(), FeatureIndex{0});
    }

    DecisionTree build() {
        const auto n = data_.size();
        std::vector<std::uint32_t> sample(n);
        for (auto& s : sample) s = static_cast<std::uint32_t>(rng_.below(n));
        DecisionTree tree;
        grow(tree, sample, 0);
        return tree;
    }

private:
    std::uint32_t grow(DecisionTree& tree, const std::vector<std::uint32_t>& rows, std::size_t depth) {
        const auto id = static_cast<std::uint32_t>(tree.nodes.size());
        tree.nodes.emplace_back();

        std::vector<std::uint32_t> hist(data_.n_classes, 0);
        std::size_t distinct = 0;
        for (auto r : rows)
            if (hist[data_.rows[r].label]++ == 0) ++distinct;

        SplitChoice split;
        if (distinct > 1 && depth < params_.max_depth && rows.size() >= params_.min_split)
            split = choose_split(rows);

        if (!split.valid) {
            auto& node = tree.nodes[id];
            for (ClassId c = 0; c < hist.size(); ++c)
                if (hist[c] > 0) node.histogram.emplace_back(c, hist[c]);
            return id;
        }

        std::vector<std::uint32_t> left, right;
        for (auto r : rows)
            (data_.rows[r].x.at(split.feature) <= split.threshold ? left : right).push_back(r);
        const auto l = grow(tree, left, depth + 1);
        const auto rt = grow(tree, right, depth + 1);
        auto& node = tree.nodes[id];
        node.feature = split.feature;
        node.threshold = split.threshold;
        node.left = l;
        node.right = rt;
        return id;
    }

    /// Draws ceil(sqrt(dim)) candidate features without replacement. When none
    /// of them separates the node, keeps drawing until one does or all are spent.
    SplitChoice choose_split(const std::vector<std::uint32_t>& rows) {
        SplitChoice best;
        const auto dim = features_.size();
        for (std::size_t i = 0; i < dim; ++i) {
            if (i >= mtry_ && best.valid) break;
            const auto j = i + static_cast<std::size_t>(rng_.below(dim - i));
            std::swap(features_[i], features_[j]);
            auto cand = best_threshold(rows, features_[i]);
            if (better_split(cand, best)) best = cand;
        }
        return best;
    }

    SplitChoice best_threshold(const std::vector<std::uint32_t>& rows, FeatureIndex f) {
        values_.clear();
        for (auto r : rows) values_.emplace_back(data_.rows[r].x.at(f), data_.rows[r].label);
        std::sort(values_.begin(), values_.end());
        SplitChoice best;
        if (values_.front().first == values_.back().first) return best;

        std::fill(left_counts_.begin(), left_counts_.end(), 0);
        std::fill(right_counts_.begin(), right_counts_.end(), 0);
        for (const auto& [_, c] : values_) ++right_counts_[c];
        std::uint64_t left_sq = 0;
        std::uint64_t right_sq = 0;
        for (auto c : right_counts_) right_sq += static_cast<std::uint64_t>(c) * c;

        const std::uint64_t n = values_.size();
        for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
            const auto c = values_[i].second;
            left_sq += 2 * static_cast<std::uint64_t>(left_counts_[c]) + 1;
            right_sq -= 2 * static_cast<std::uint64_t>(right_counts_[c]) - 1;
            ++left_counts_[c];
            --right_counts_[c];
            const double a = values_[i].first;
            const double b = values_[i + 1].first;
            if (a == b) continue;
            const std::uint64_t nl = i + 1;
            const std::uint64_t nr = n - nl;
            SplitChoice cand;
            cand.valid = true;
            cand.feature = f;
            cand.threshold = a + (b - a) / 2.0;
            if (!(cand.threshold < b)) cand.threshold = a;
            // left_sq/nl + right_sq/nr as one fraction
            cand.num = static_cast<unsigned __int128>(left_sq) * nr + static_cast<unsigned __int128>(right_sq) * nl;
            cand.den = static_cast<unsigned __int128>(nl) * nr;
            if (better_split(cand, best)) best = cand;
        }
        return best;
    }

    const DatasetMatrix& data_;
    const ForestParams& params_;
    Rng rng_;
    std::vector<FeatureIndex> features_;
    std::size_t mtry_;
    std::vector<std::uint32_t> left_counts_;
    std::vector<std::uint32_t> right_counts_;
    std::vector<std::pair<double, ClassId>> values_;
};

}  // namespace detail

/// Bagged Gini trees. Tree t is grown from its own generator seeded with
/// seed + t, so trees can be built in any order with identical results.
inline ForestModel rf_train(const DatasetMatrix& data, const ForestParams& params) {
    if (data.empty()) throw std::invalid_argument("rf: empty training set");
    if (params.n_trees < 1) throw std::invalid_argument("rf: n_trees must be at least 1");
    ForestModel m;
    m.dim = data.dim;
    m.n_classes = data.n_classes;
    m.trees.reserve(params.n_trees);
    for (std::size_t t = 0; t < params.n_trees; ++t)
        m.trees.push_back(detail::TreeBuilder(data, params, params.seed + t).build());
    return m;
}

/// Leaf histograms summed over all trees.
inline std::vector<double> rf_scores(const ForestModel& m, const SparseVector& x) {
    std::vector<double> mass(m.n_classes, 0.0);
    for (const auto& tree : m.trees)
        for (const auto& [c, n] : tree.route(x).histogram) mass[c] += n;
    return mass;
}

inline ClassId rf_predict(const ForestModel& m, const SparseVector& x) { return argmax(rf_scores(m, x)); }

}  // namespace carspeak
