// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <utility>
#include <stdexcept>
#include <vector>

#include "carspeak/ranking.hpp"
#include "carspeak/rng.hpp"
#include "carspeak/vectorize.hpp"

namespace carspeak {

struct MlpParams {
    std::size_t hidden = 100;
    std::size_t epochs = 50;
    std::size_t batch = 32;
    double lr = 0.01;
    std::uint64_t seed = 7;
};

/// dim -> hidden (ReLU) -> n_classes (softmax).
/// w1 is dim x hidden, row per input feature; w2 is hidden x n_classes.
struct MlpModel {
    std::size_t dim = 0;
    std::size_t hidden = 0;
    std::size_t n_classes = 0;
    std::vector<double> w1, b1, w2, b2;

    bool operator==(const MlpModel&) const = default;
};

/// Same layout as the model parameters.
struct MlpGradient {
    std::vector<double> w1, b1, w2, b2;
};

struct MlpTrainLog {
    double initial_loss = 0.0;
    std::vector<double> epoch_loss;  // mean cross-entropy over the training rows
};

namespace detail {

struct MlpActivations {
    std::vector<double> pre;  // hidden pre-activations
    std::vector<double> hidden;
    std::vector<double> prob;
};

inline void softmax_inplace(std::vector<double>& z) {
    const double mx = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (auto& v : z) {
        v = std::exp(v - mx);
        sum += v;
    }
    for (auto& v : z) v /= sum;
}

inline MlpActivations mlp_forward(const MlpModel& m, const SparseVector& x) {
    MlpActivations a;
    a.pre = m.b1;
    for (const auto& [i, xi] : x.entries) {
        const double* row = &m.w1[static_cast<std::size_t>(i) * m.hidden];
        for (std::size_t j = 0; j < m.hidden; ++j) a.pre[j] += row[j] * xi;
    }
    a.hidden.resize(m.hidden);
    for (std::size_t j = 0; j < m.hidden; ++j) a.hidden[j] = a.pre[j] > 0.0 ? a.pre[j] : 0.0;
    a.prob = m.b2;
    for (std::size_t j = 0; j < m.hidden; ++j) {
        if (a.hidden[j] == 0.0) continue;
        const double* row = &m.w2[j * m.n_classes];
        for (std::size_t c = 0; c < m.n_classes; ++c) a.prob[c] += a.hidden[j] * row[c];
    }
    softmax_inplace(a.prob);
    return a;
}

/// Adds weight * dLoss/dθ for one example into g. Only rows of g.w1 for the
/// non-zero features of x are touched.
inline void mlp_backprop(const MlpModel& m, const SparseVector& x, ClassId y, double weight, MlpGradient& g) {
    const auto a = mlp_forward(m, x);
    std::vector<double> dz = a.prob;
    dz[y] -= 1.0;
    std::vector<double> dpre(m.hidden, 0.0);
    for (std::size_t j = 0; j < m.hidden; ++j) {
        const double* w2row = &m.w2[j * m.n_classes];
        double* g2row = &g.w2[j * m.n_classes];
        double back = 0.0;
        for (std::size_t c = 0; c < m.n_classes; ++c) {
            g2row[c] += weight * a.hidden[j] * dz[c];
            back += w2row[c] * dz[c];
        }
        dpre[j] = a.pre[j] > 0.0 ? back : 0.0;
    }
    for (std::size_t c = 0; c < m.n_classes; ++c) g.b2[c] += weight * dz[c];
    for (std::size_t j = 0; j < m.hidden; ++j) g.b1[j] += weight * dpre[j];
    for (const auto& [i, xi] : x.entries) {
        double* g1row = &g.w1[static_cast<std::size_t>(i) * m.hidden];
        for (std::size_t j = 0; j < m.hidden; ++j) g1row[j] += weight * xi * dpre[j];
    }
}

inline MlpGradient zero_gradient(const MlpModel& m) {
    return {std::vector<double>(m.w1.size(), 0.0), std::vector<double>(m.b1.size(), 0.0),
            std::vector<double>(m.w2.size(), 0.0), std::vector<double>(m.b2.size(), 0.0)};
}

/// Adam (beta1 0.9, beta2 0.999, epsilon 1e-8). step() consumes and zeroes g.
class AdamState {
public:
    explicit AdamState(const MlpModel& m)
        : first_(zero_gradient(m)), second_(zero_gradient(m)) {}

    void step(MlpModel& model, MlpGradient& g, double lr) {
        ++t_;
        b1t_ *= kBeta1;
        b2t_ *= kBeta2;
        const double alpha = lr * std::sqrt(1.0 - b2t_) / (1.0 - b1t_);
        update(model.w1, g.w1, first_.w1, second_.w1, alpha);
        update(model.b1, g.b1, first_.b1, second_.b1, alpha);
        update(model.w2, g.w2, first_.w2, second_.w2, alpha);
        update(model.b2, g.b2, first_.b2, second_.b2, alpha);
    }

private:
    static constexpr double kBeta1 = 0.9;
    static constexpr double kBeta2 = 0.999;
    static constexpr double kEps = 1e-8;

    static void update(std::vector<double>& w, std::vector<double>& g, std::vector<double>& m, std::vector<double>& v,
                       double alpha) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double gi = std::exchange(g[i], 0.0);
            m[i] = kBeta1 * m[i] + (1.0 - kBeta1) * gi;
            v[i] = kBeta2 * v[i] + (1.0 - kBeta2) * gi * gi;
            w[i] -= alpha * m[i] / (std::sqrt(v[i]) + kEps);
        }
    }

    MlpGradient first_, second_;  // moment estimates
    std::uint64_t t_ = 0;
    double b1t_ = 1.0;
    double b2t_ = 1.0;
};

}  // namespace detail

inline std::vector<double> mlp_probabilities(const MlpModel& m, const SparseVector& x) {
    return detail::mlp_forward(m, x).prob;
}

/// Cross-entropy of one example.
inline double mlp_loss(const MlpModel& m, const SparseVector& x, ClassId y) {
    return -std::log(std::max(mlp_probabilities(m, x)[y], 1e-300));
}

inline double mlp_mean_loss(const MlpModel& m, const DatasetMatrix& data) {
    double s = 0.0;
    for (const auto& row : data.rows) s += mlp_loss(m, row.x, row.label);
    return data.empty() ? 0.0 : s / static_cast<double>(data.size());
}

/// Analytic gradient of mlp_loss by backpropagation.
inline MlpGradient mlp_gradient(const MlpModel& m, const SparseVector& x, ClassId y) {
    auto g = detail::zero_gradient(m);
    detail::mlp_backprop(m, x, y, 1.0, g);
    return g;
}

/// Glorot-uniform weights, zero biases.
inline MlpModel mlp_init(std::size_t dim, std::size_t hidden, std::size_t n_classes, Rng& rng) {
    MlpModel m;
    m.dim = dim;
    m.hidden = hidden;
    m.n_classes = n_classes;
    const double r1 = std::sqrt(6.0 / static_cast<double>(dim + hidden));
    const double r2 = std::sqrt(6.0 / static_cast<double>(hidden + n_classes));
    m.w1.resize(dim * hidden);
    for (auto& w : m.w1) w = rng.uniform(-r1, r1);
    m.b1.assign(hidden, 0.0);
    m.w2.resize(hidden * n_classes);
    for (auto& w : m.w2) w = rng.uniform(-r2, r2);
    m.b2.assign(n_classes, 0.0);
    return m;
}

/// Mini-batch gradient descent on mean cross-entropy, with Adam updates.
inline MlpModel mlp_train(const DatasetMatrix& data, const MlpParams& p, MlpTrainLog* log = nullptr) {
    if (data.empty()) throw std::invalid_argument("mlp: empty training set");
    if (p.hidden < 1) throw std::invalid_argument("mlp: hidden width must be at least 1");
    if (!(p.lr > 0.0)) throw std::invalid_argument("mlp: learning rate must be positive");
    if (p.batch < 1) throw std::invalid_argument("mlp: batch size must be at least 1");
    if (data.n_classes < 1) throw std::invalid_argument("mlp: no classes");

    Rng rng(p.seed);
    auto m = mlp_init(data.dim, p.hidden, data.n_classes, rng);
    if (log) {
        log->initial_loss = mlp_mean_loss(m, data);
        log->epoch_loss.clear();
    }

    auto g = detail::zero_gradient(m);
    detail::AdamState adam(m);
    std::vector<std::uint32_t> order(data.size());
    std::iota(order.begin(), order.end(), std::uint32_t{0});

    for (std::size_t epoch = 0; epoch < p.epochs; ++epoch) {
        rng.shuffle(std::span(order));
        for (std::size_t start = 0; start < order.size(); start += p.batch) {
            const auto stop = std::min(order.size(), start + p.batch);
            const double weight = 1.0 / static_cast<double>(stop - start);
            for (auto k = start; k < stop; ++k) {
                const auto& row = data.rows[order[k]];
                detail::mlp_backprop(m, row.x, row.label, weight, g);
            }
            adam.step(m, g, p.lr);
        }
        if (log) log->epoch_loss.push_back(mlp_mean_loss(m, data));
    }
    return m;
}

inline ClassId mlp_predict(const MlpModel& m, const SparseVector& x) { return argmax(mlp_probabilities(m, x)); }

using MlpGradientFn = std::function<MlpGradient(const MlpModel&, const SparseVector&, ClassId)>;

/// Compares `analytic` against central differences of mlp_loss on a seeded
/// sample of parameters (at least 50, or all of them when fewer exist). w1
/// entries are only sampled from rows of the non-zero features of x.
/// Returns max |ga - gn| / max(|ga| + |gn|, 1e-8).
inline double mlp_gradient_check(const MlpModel& m, const SparseVector& x, ClassId y, double eps = 1e-5,
                                 const MlpGradientFn& analytic = mlp_gradient, std::size_t sample = 128,
                                 std::uint64_t seed = 0) {
    if (!(eps > 0.0)) throw std::invalid_argument("gradient check: eps must be positive");
    if (y >= m.n_classes) throw std::invalid_argument("gradient check: label out of range");
    sample = std::max<std::size_t>(sample, 50);

    enum Block : std::uint8_t { W1, B1, W2, B2 };
    struct Slot {
        Block block;
        std::size_t index;
    };
    std::vector<Slot> slots;
    for (const auto& [i, _] : x.entries)
        for (std::size_t j = 0; j < m.hidden; ++j) slots.push_back({W1, static_cast<std::size_t>(i) * m.hidden + j});
    for (std::size_t j = 0; j < m.b1.size(); ++j) slots.push_back({B1, j});
    for (std::size_t j = 0; j < m.w2.size(); ++j) slots.push_back({W2, j});
    for (std::size_t j = 0; j < m.b2.size(); ++j) slots.push_back({B2, j});
    if (slots.size() > sample) {
        Rng rng(seed);
        rng.shuffle(std::span(slots));
        slots.resize(sample);
    }

    const auto ga = analytic(m, x, y);
    auto probe = m;
    auto param = [](MlpModel& mm, const Slot& s) -> double& {
        switch (s.block) {
            case W1: return mm.w1[s.index];
            case B1: return mm.b1[s.index];
            case W2: return mm.w2[s.index];
            default: return mm.b2[s.index];
        }
    };
    auto grad = [&](const Slot& s) {
        switch (s.block) {
            case W1: return ga.w1[s.index];
            case B1: return ga.b1[s.index];
            case W2: return ga.w2[s.index];
            default: return ga.b2[s.index];
        }
    };

    double worst = 0.0;
    for (const auto& s : slots) {
        double& p = param(probe, s);
        const double saved = p;
        p = saved + eps;
        const double up = mlp_loss(probe, x, y);
        p = saved - eps;
        const double down = mlp_loss(probe, x, y);
        p = saved;
        const double gn = (up - down) / (2.0 * eps);
        const double g = grad(s);
        worst = std::max(worst, std::abs(g - gn) / std::max(std::abs(g) + std::abs(gn), 1e-8));
    }
    return worst;
}

}  // namespace carspeak
