// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "carspeak/ranking.hpp"
#include "carspeak/rng.hpp"
#include "carspeak/vectorize.hpp"

namespace carspeak {

struct SvmParams {
    double lambda = 1e-4;
    std::size_t epochs = 20;
    std::uint64_t seed = 7;
};

/// One-vs-rest linear SVM: one dense weight vector and bias per class.
struct SvmModel {
    std::vector<std::vector<double>> weights;
    std::vector<double> bias;
    std::size_t dim = 0;
    std::size_t n_classes = 0;

    bool operator==(const SvmModel&) const = default;
};

/// Per class, the objective at the average iterate of each epoch.
struct SvmTrace {
    std::vector<std::vector<double>> epoch_objective;
};

/// (λ/2)(‖w‖² + b²) + mean hinge loss of the binary problem "class c vs rest".
/// The bias is trained as the weight of a constant feature, hence b² above.
inline double svm_objective(std::span<const double> w, double b, const DatasetMatrix& data, ClassId c,
                            double lambda) {
    double sq = b * b;
    for (double v : w) sq += v * v;
    double hinge = 0.0;
    for (const auto& row : data.rows) {
        const double y = row.label == c ? 1.0 : -1.0;
        hinge += std::max(0.0, 1.0 - y * (dot(w, row.x) + b));
    }
    return 0.5 * lambda * sq + hinge / static_cast<double>(data.size());
}

namespace detail {

/// Pegasos with step 1/(λt). w is kept as scale·v so the shrink step is O(1).
inline void pegasos_binary(const DatasetMatrix& data, ClassId c, const SvmParams& p,
                           const std::vector<std::vector<std::uint32_t>>& epoch_orders, std::vector<double>& w_out,
                           double& b_out, std::vector<double>* trace) {
    const auto dim = data.dim;
    std::vector<double> v(dim, 0.0);
    double vb = 0.0;
    double scale = 1.0;
    std::uint64_t t = 0;

    std::vector<double> avg_w;
    double avg_b = 0.0;

    for (const auto& order : epoch_orders) {
        if (trace) {
            avg_w.assign(dim, 0.0);
            avg_b = 0.0;
        }
        for (auto r : order) {
            ++t;
            const auto& row = data.rows[r];
            const double y = row.label == c ? 1.0 : -1.0;
            const double margin = y * scale * (dot(v, row.x) + vb);
            const double eta = 1.0 / (p.lambda * static_cast<double>(t));
            if (t == 1) {
                std::fill(v.begin(), v.end(), 0.0);
                vb = 0.0;
                scale = 1.0;
            } else {
                scale *= 1.0 - 1.0 / static_cast<double>(t);
            }
            if (margin < 1.0) {
                const double step = eta * y / scale;
                for (const auto& [i, x] : row.x.entries) v[i] += step * x;
                vb += step;
            }
            if (scale < 1e-9) {
                for (auto& e : v) e *= scale;
                vb *= scale;
                scale = 1.0;
            }
            if (trace) {
                for (std::size_t i = 0; i < dim; ++i) avg_w[i] += scale * v[i];
                avg_b += scale * vb;
            }
        }
        if (trace && !order.empty()) {
            const double k = static_cast<double>(order.size());
            for (auto& e : avg_w) e /= k;
            trace->push_back(svm_objective(avg_w, avg_b / k, data, c, p.lambda));
        }
    }
    w_out.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) w_out[i] = scale * v[i];
    b_out = scale * vb;
}

}  // namespace detail

inline SvmModel svm_train(const DatasetMatrix& data, const SvmParams& params, SvmTrace* trace = nullptr) {
    if (data.empty()) throw std::invalid_argument("svm: empty training set");
    if (!(params.lambda > 0.0)) throw std::invalid_argument("svm: lambda must be positive");
    if (data.n_classes < 2) throw std::invalid_argument("svm: need at least two classes");
    {
        auto first = data.rows.front().label;
        if (std::all_of(data.rows.begin(), data.rows.end(), [&](const LabeledRow& r) { return r.label == first; }))
            throw std::invalid_argument("svm: training rows contain a single class, nothing to separate");
    }

    // every class sees the same row order
    Rng rng(params.seed);
    std::vector<std::vector<std::uint32_t>> orders(params.epochs);
    for (auto& o : orders) {
        o.resize(data.size());
        std::iota(o.begin(), o.end(), std::uint32_t{0});
        rng.shuffle(std::span(o));
    }

    SvmModel m;
    m.dim = data.dim;
    m.n_classes = data.n_classes;
    m.weights.resize(data.n_classes);
    m.bias.resize(data.n_classes);
    if (trace) trace->epoch_objective.assign(data.n_classes, {});
    for (ClassId c = 0; c < data.n_classes; ++c)
        detail::pegasos_binary(data, c, params, orders, m.weights[c], m.bias[c],
                               trace ? &trace->epoch_objective[c] : nullptr);
    return m;
}

inline std::vector<double> svm_scores(const SvmModel& m, const SparseVector& x) {
    std::vector<double> s(m.n_classes);
    for (ClassId c = 0; c < m.n_classes; ++c) s[c] = dot(m.weights[c], x) + m.bias[c];
    return s;
}

inline ClassId svm_predict(const SvmModel& m, const SparseVector& x) { return argmax(svm_scores(m, x)); }

}  // namespace carspeak
