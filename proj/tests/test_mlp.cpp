// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "carspeak/classifiers/mlp.hpp"
#include "support/oracles.hpp"

namespace carspeak {
namespace {

MlpGradient flipped(const MlpModel& m, const SparseVector& x, ClassId y) {
    auto g = mlp_gradient(m, x, y);
    for (auto* v : {&g.w1, &g.b1, &g.w2, &g.b2})
        for (auto& e : *v) e = -e;
    return g;
}

TEST(Mlp, FirstEpochLowersLoss) {
    Rng rng(31);
    const auto data = testing::random_dataset(rng, 60, 10, 3);
    MlpTrainLog log;
    mlp_train(data, {.hidden = 16, .epochs = 5}, &log);
    ASSERT_EQ(log.epoch_loss.size(), 5u);
    EXPECT_LT(log.epoch_loss.front(), log.initial_loss);
    EXPECT_LT(log.epoch_loss.back(), log.epoch_loss.front());
}

TEST(Mlp, Deterministic) {
    Rng rng(32);
    const auto data = testing::random_dataset(rng, 40, 8, 3);
    const MlpParams p{.hidden = 8, .epochs = 3, .seed = 9};
    EXPECT_EQ(mlp_train(data, p), mlp_train(data, p));
}

TEST(Mlp, ZeroEpochsReturnsInitialModel) {
    Rng rng(33);
    const auto data = testing::random_dataset(rng, 10, 4, 2);
    Rng init(5);
    EXPECT_EQ(mlp_train(data, {.hidden = 3, .epochs = 0, .seed = 5}), mlp_init(4, 3, 2, init));
}

TEST(Mlp, InitializationBounds) {
    Rng rng(1);
    const auto m = mlp_init(30, 10, 4, rng);
    const double r1 = std::sqrt(6.0 / 40.0);
    const double r2 = std::sqrt(6.0 / 14.0);
    for (double w : m.w1) EXPECT_LE(std::abs(w), r1);
    for (double w : m.w2) EXPECT_LE(std::abs(w), r2);
    for (double b : m.b1) EXPECT_EQ(b, 0.0);
    for (double b : m.b2) EXPECT_EQ(b, 0.0);
}

TEST(Mlp, RejectsBadParameters) {
    Rng rng(34);
    const auto data = testing::random_dataset(rng, 10, 4, 2);
    EXPECT_THROW(mlp_train(data, {.lr = 0.0}), std::invalid_argument);
    EXPECT_THROW(mlp_train(data, {.batch = 0}), std::invalid_argument);
    EXPECT_THROW(mlp_train(data, {.hidden = 0}), std::invalid_argument);
    EXPECT_THROW(mlp_train(DatasetMatrix{}, {}), std::invalid_argument);
}

TEST(Mlp, ProbabilitiesFormADistribution) {
    Rng rng(35);
    const auto m = mlp_init(12, 6, 5, rng);
    for (int i = 0; i < 20; ++i) {
        const auto p = mlp_probabilities(m, testing::random_unit_row(rng, 12, 4));
        EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
        for (double v : p) EXPECT_GT(v, 0.0);
    }
}

TEST(Mlp, GradientMatchesFiniteDifferences) {
    Rng rng(36);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = mlp_init(15, 7, 4, rng);
        const auto x = testing::random_unit_row(rng, 15, 5);
        const auto y = static_cast<ClassId>(rng.below(4));
        EXPECT_LE(mlp_gradient_check(m, x, y), 1e-4);
        EXPECT_GT(mlp_gradient_check(m, x, y, 1e-5, flipped), 1e-1);
    }
}

TEST(Mlp, GradientCheckRejectsNonPositiveStep) {
    Rng rng(37);
    const auto m = mlp_init(3, 2, 2, rng);
    EXPECT_THROW(mlp_gradient_check(m, SparseVector{{{0, 1.0}}}, 0, 0.0), std::invalid_argument);
}

TEST(Mlp, LearnsSeparableData) {
    DatasetMatrix data{{}, 3, 3};
    for (int i = 0; i < 30; ++i)
        data.rows.push_back({SparseVector{{{static_cast<FeatureIndex>(i % 3), 1.0}}}, static_cast<ClassId>(i % 3)});
    const auto m = mlp_train(data, {.hidden = 8, .epochs = 40, .batch = 4});
    for (const auto& r : data.rows) EXPECT_EQ(mlp_predict(m, r.x), r.label);
}

}  // namespace
}  // namespace carspeak
