// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "carspeak/vectorize.hpp"

namespace carspeak {

struct ScoredClass {
    ClassId cls = 0;
    double score = 0.0;

    bool operator==(const ScoredClass&) const = default;
};

/// Classes ordered by non-increasing score.
using Ranking = std::vector<ScoredClass>;

/// Top n of a dense per-class score vector; equal scores go to the smaller id.
inline Ranking rank_scores(const std::vector<double>& scores, std::size_t n) {
    if (n < 1) throw std::invalid_argument("top-n must be at least 1");
    Ranking all;
    all.reserve(scores.size());
    for (std::size_t c = 0; c < scores.size(); ++c) all.push_back({static_cast<ClassId>(c), scores[c]});
    const auto keep = std::min(n, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                      [](const ScoredClass& a, const ScoredClass& b) {
                          return a.score != b.score ? a.score > b.score : a.cls < b.cls;
                      });
    all.resize(keep);
    return all;
}

/// Index of the largest score, smaller index on ties.
inline ClassId argmax(const std::vector<double>& scores) {
    ClassId best = 0;
    for (std::size_t c = 1; c < scores.size(); ++c)
        if (scores[c] > scores[best]) best = static_cast<ClassId>(c);
    return best;
}

}  // namespace carspeak
