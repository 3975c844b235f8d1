// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "carspeak/ranking.hpp"
#include "carspeak/vectorize.hpp"

namespace carspeak {

struct KnnParams {
    std::size_t k = 5;
};

/// Lazy learner: the training rows themselves. Similarity is the dot product
/// of L2-normalized rows, i.e. cosine.
struct KnnModel {
    std::vector<LabeledRow> rows;
    std::size_t k = 5;
    std::size_t dim = 0;
    std::size_t n_classes = 0;

    bool operator==(const KnnModel&) const = default;
};

inline KnnModel knn_train(const DatasetMatrix& data, const KnnParams& params) {
    if (data.empty()) throw std::invalid_argument("knn: empty training set");
    if (params.k < 1) throw std::invalid_argument("knn: k must be at least 1");
    if (params.k > data.size())
        throw std::invalid_argument("knn: k=" + std::to_string(params.k) + " exceeds the " +
                                    std::to_string(data.size()) + " training rows");
    return {data.rows, params.k, data.dim, data.n_classes};
}

struct KnnVotes {
    std::vector<std::size_t> votes;
    std::vector<double> similarity;  // summed over the voting neighbors
};

/// Tallies the k most similar rows. Equal similarities go to the earlier row.
inline KnnVotes knn_votes(const KnnModel& m, const SparseVector& x) {
    std::vector<double> sims(m.rows.size());
    for (std::size_t i = 0; i < m.rows.size(); ++i) sims[i] = dot(m.rows[i].x, x);
    std::vector<std::size_t> order(m.rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto k = std::min(m.k, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) { return sims[a] != sims[b] ? sims[a] > sims[b] : a < b; });
    KnnVotes v{std::vector<std::size_t>(m.n_classes, 0), std::vector<double>(m.n_classes, 0.0)};
    for (std::size_t j = 0; j < k; ++j) {
        const auto& row = m.rows[order[j]];
        ++v.votes[row.label];
        v.similarity[row.label] += sims[order[j]];
    }
    return v;
}

namespace detail {

/// Majority vote, then summed similarity, then smaller id.
inline bool knn_outranks(const KnnVotes& v, ClassId a, ClassId b) {
    if (v.votes[a] != v.votes[b]) return v.votes[a] > v.votes[b];
    if (v.similarity[a] != v.similarity[b]) return v.similarity[a] > v.similarity[b];
    return a < b;
}

}  // namespace detail

inline ClassId knn_predict(const KnnModel& m, const SparseVector& x) {
    const auto v = knn_votes(m, x);
    ClassId best = 0;
    for (ClassId c = 1; c < m.n_classes; ++c)
        if (detail::knn_outranks(v, c, best)) best = c;
    return best;
}

/// Classes in vote order; the score is each class's share of the k votes.
inline Ranking knn_topn(const KnnModel& m, const SparseVector& x, std::size_t n) {
    if (n < 1) throw std::invalid_argument("top-n must be at least 1");
    const auto v = knn_votes(m, x);
    std::vector<ClassId> ids(m.n_classes);
    std::iota(ids.begin(), ids.end(), ClassId{0});
    const auto keep = std::min(n, ids.size());
    std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(keep), ids.end(),
                      [&](ClassId a, ClassId b) { return detail::knn_outranks(v, a, b); });
    Ranking r;
    r.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i)
        r.push_back({ids[i], static_cast<double>(v.votes[ids[i]]) / static_cast<double>(m.k)});
    return r;
}

}  // namespace carspeak
