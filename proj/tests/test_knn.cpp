// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include <gtest/gtest.h>

#include "carspeak/classifiers/knn.hpp"
#include "support/oracles.hpp"

namespace carspeak {
namespace {

SparseVector unit(std::vector<std::pair<FeatureIndex, double>> e) {
    SparseVector x{std::move(e)};
    const double n = x.norm();
    for (auto& [i, w] : x.entries) w /= n;
    return x;
}

DatasetMatrix matrix(std::vector<LabeledRow> rows, std::size_t dim, std::size_t classes) {
    return {std::move(rows), dim, classes};
}

TEST(Knn, ExactMatchWins) {
    const auto data = matrix({{unit({{0, 1}}), 0}, {unit({{1, 1}}), 1}, {unit({{2, 1}}), 2}}, 3, 3);
    const auto m = knn_train(data, {1});
    for (const auto& r : data.rows) EXPECT_EQ(knn_predict(m, r.x), r.label);
}

TEST(Knn, MajorityAmongEquidistantNeighbours) {
    const auto x = unit({{0, 1}});
    const auto data = matrix({{x, 0}, {x, 0}, {x, 1}}, 1, 2);
    EXPECT_EQ(knn_predict(knn_train(data, {3}), x), 0u);
}

TEST(Knn, VoteTieGoesToLargerSummedSimilarity) {
    // query (1,0); class 1 neighbours are closer than class 0 ones
    const auto data = matrix({{unit({{0, 1}, {1, 1}}), 0},
                              {unit({{0, 1}, {1, 1}}), 0},
                              {unit({{0, 3}, {1, 1}}), 1},
                              {unit({{0, 3}, {1, 1}}), 1}},
                             2, 2);
    const auto m = knn_train(data, {4});
    EXPECT_EQ(knn_predict(m, unit({{0, 1}})), 1u);
    // full tie on votes and similarity: smaller id
    EXPECT_EQ(knn_predict(m, SparseVector{}), 0u);
}

TEST(Knn, TiedNeighboursGoToEarlierRow) {
    const auto x = unit({{0, 1}});
    const auto data = matrix({{x, 1}, {x, 0}}, 1, 2);
    EXPECT_EQ(knn_predict(knn_train(data, {1}), x), 1u);
}

TEST(Knn, RejectsBadK) {
    const auto data = matrix({{unit({{0, 1}}), 0}, {unit({{0, 1}}), 1}}, 1, 2);
    EXPECT_THROW(knn_train(data, {3}), std::invalid_argument);
    EXPECT_THROW(knn_train(data, {0}), std::invalid_argument);
    EXPECT_THROW(knn_train(matrix({}, 1, 1), {1}), std::invalid_argument);
}

TEST(Knn, TopNScoresAreVoteShares) {
    const auto x = unit({{0, 1}});
    const auto data = matrix({{x, 0}, {x, 0}, {x, 2}, {unit({{1, 1}}), 1}}, 2, 3);
    const auto r = knn_topn(knn_train(data, {3}), x, 5);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[0], (ScoredClass{0, 2.0 / 3.0}));
    EXPECT_EQ(r[1], (ScoredClass{2, 1.0 / 3.0}));
    EXPECT_EQ(r[2], (ScoredClass{1, 0.0}));
    EXPECT_THROW(knn_topn(knn_train(data, {3}), x, 0), std::invalid_argument);
}

TEST(Knn, AgreesWithExhaustiveOracle) {
    Rng rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const auto dim = 3 + rng.below(20);
        const auto data = testing::random_dataset(rng, 1 + rng.below(120), dim, 2 + rng.below(5));
        const auto k = 1 + rng.below(std::min<std::size_t>(data.size(), 9));
        const auto m = knn_train(data, {k});
        for (int q = 0; q < 10; ++q) {
            const auto x = rng.below(3) == 0 ? data.rows[rng.below(data.size())].x : testing::random_unit_row(rng, dim, 5);
            EXPECT_EQ(knn_predict(m, x), testing::knn_oracle(data.rows, dim, k, x));
            EXPECT_EQ(knn_topn(m, x, 1).front().cls, knn_predict(m, x));
        }
    }
}

}  // namespace
}  // namespace carspeak
