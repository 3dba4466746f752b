#pragma once

// Multinomial logistic regression over the four attribute values,
// trained by deterministic full-batch gradient descent on L2-regularized
// cross-entropy. Features are standardized with train-pool statistics;
// class order ABSTRACT < PLOS_LAY < ELIFE_LAY settles every tie.

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "atlas/corpus.hpp"
#include "atlas/errors.hpp"

namespace atlas::classifier {

inline constexpr std::size_t kNumClasses = 3;
inline constexpr std::size_t kNumFeatures = 4;  // L, R, BG, CWE

using Features = std::array<double, kNumFeatures>;
using Weights = std::array<std::array<double, kNumFeatures>, kNumClasses>;
using Bias = std::array<double, kNumClasses>;

struct FeatureRow {
    Features x{};
    corpus::SummaryType y = corpus::SummaryType::ABSTRACT;
};

inline std::size_t class_index(corpus::SummaryType t) {
    return static_cast<std::size_t>(t);
}

// ---------------------------------------------------------------------
// Standardization (train statistics only)

struct Standardization {
    Features mean{};
    Features stddev{};
};

inline Standardization fit_standardization(const std::vector<FeatureRow>& rows) {
    if (rows.empty())
        throw ValidationError("standardize: no rows");
    Standardization s;
    const double n = static_cast<double>(rows.size());
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
        double sum = 0;
        for (const auto& r : rows) sum += r.x[f];
        s.mean[f] = sum / n;
        double var = 0;
        for (const auto& r : rows) {
            double d = r.x[f] - s.mean[f];
            var += d * d;
        }
        s.stddev[f] = std::sqrt(var / n);
        if (s.stddev[f] <= 0.0)
            throw DegenerateDataError("standardize: feature " + std::to_string(f) +
                                      " has zero variance on the train pool");
    }
    return s;
}

inline Features apply_standardization(const Features& x, const Standardization& s) {
    Features out;
    for (std::size_t f = 0; f < kNumFeatures; ++f)
        out[f] = (x[f] - s.mean[f]) / s.stddev[f];
    return out;
}

inline std::vector<FeatureRow> standardize(const std::vector<FeatureRow>& rows,
                                           const Standardization& stats) {
    std::vector<FeatureRow> out = rows;
    for (auto& r : out) r.x = apply_standardization(r.x, stats);
    return out;
}

// ---------------------------------------------------------------------
// Model

struct LogRegModel {
    Weights weights{};
    Bias bias{};
    Standardization stats;
};

inline std::array<double, kNumClasses> softmax(
    const std::array<double, kNumClasses>& logits) {
    double max_logit = logits[0];
    for (double v : logits) max_logit = std::max(max_logit, v);
    std::array<double, kNumClasses> p{};
    double z = 0;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        p[c] = std::exp(logits[c] - max_logit);
        z += p[c];
    }
    for (auto& v : p) v /= z;
    return p;
}

inline std::array<double, kNumClasses> logits_of(const Weights& w, const Bias& b,
                                                 const Features& x) {
    std::array<double, kNumClasses> logits{};
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        logits[c] = b[c];
        for (std::size_t f = 0; f < kNumFeatures; ++f) logits[c] += w[c][f] * x[f];
    }
    return logits;
}

struct LossGradient {
    double loss = 0.0;
    Weights d_weights{};
    Bias d_bias{};
};

// Mean cross-entropy plus 0.5*l2*||W||^2 (bias unregularized); rows are
// expected to be standardized already.
inline LossGradient loss_and_gradient(const Weights& w, const Bias& b,
                                      const std::vector<FeatureRow>& rows,
                                      double l2) {
    if (rows.empty()) throw ValidationError("loss_and_gradient: no rows");
    LossGradient out;
    const double n = static_cast<double>(rows.size());
    for (const auto& row : rows) {
        auto p = softmax(logits_of(w, b, row.x));
        const std::size_t y = class_index(row.y);
        out.loss += -std::log(std::max(p[y], 1e-300));
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            double delta = p[c] - (c == y ? 1.0 : 0.0);
            out.d_bias[c] += delta;
            for (std::size_t f = 0; f < kNumFeatures; ++f)
                out.d_weights[c][f] += delta * row.x[f];
        }
    }
    out.loss /= n;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        out.d_bias[c] /= n;
        for (std::size_t f = 0; f < kNumFeatures; ++f) {
            out.d_weights[c][f] /= n;
            out.d_weights[c][f] += l2 * w[c][f];
            out.loss += 0.5 * l2 * w[c][f] * w[c][f];
        }
    }
    return out;
}

struct TrainOptions {
    double lr = 0.1;
    double l2 = 1e-4;
    int epochs = 1000;
    double grad_tol = 1e-7;  // early stop on gradient L-infinity norm
};

struct TrainResult {
    LogRegModel model;
    std::vector<double> losses;  // loss at each visited iterate
};

inline TrainResult train_logreg(const std::vector<FeatureRow>& rows,
                                const TrainOptions& opts = {}) {
    std::array<std::size_t, kNumClasses> per_class{};
    for (const auto& r : rows) ++per_class[class_index(r.y)];
    for (corpus::SummaryType t : corpus::kSummaryTypes)
        if (per_class[class_index(t)] == 0)
            throw ValidationError("train_logreg: no rows for class " +
                                  corpus::to_string(t));

    TrainResult result;
    result.model.stats = fit_standardization(rows);
    auto std_rows = standardize(rows, result.model.stats);

    Weights& w = result.model.weights;  // zero-initialized
    Bias& b = result.model.bias;
    for (int epoch = 0; epoch < opts.epochs; ++epoch) {
        auto lg = loss_and_gradient(w, b, std_rows, opts.l2);
        result.losses.push_back(lg.loss);
        double grad_max = 0;
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            grad_max = std::max(grad_max, std::abs(lg.d_bias[c]));
            for (std::size_t f = 0; f < kNumFeatures; ++f)
                grad_max = std::max(grad_max, std::abs(lg.d_weights[c][f]));
        }
        if (grad_max < opts.grad_tol) break;
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            b[c] -= opts.lr * lg.d_bias[c];
            for (std::size_t f = 0; f < kNumFeatures; ++f)
                w[c][f] -= opts.lr * lg.d_weights[c][f];
        }
    }
    return result;
}

// argmax of softmax(Wx + b); ties break toward the lower class index
inline corpus::SummaryType predict(const LogRegModel& model, const Features& raw_x) {
    auto logits = logits_of(model.weights, model.bias,
                            apply_standardization(raw_x, model.stats));
    std::size_t best = 0;
    for (std::size_t c = 1; c < kNumClasses; ++c)
        if (logits[c] > logits[best]) best = c;
    return corpus::kSummaryTypes[best];
}

// ---------------------------------------------------------------------
// Metrics

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t tp = 0, fp = 0, fn = 0;
};

inline std::map<corpus::SummaryType, ClassMetrics> prf1(
    const std::vector<corpus::SummaryType>& predictions,
    const std::vector<corpus::SummaryType>& gold) {
    if (predictions.size() != gold.size())
        throw ValidationError("prf1: predictions and gold differ in length");
    if (predictions.empty()) throw ValidationError("prf1: empty input");

    std::map<corpus::SummaryType, ClassMetrics> out;
    for (corpus::SummaryType t : corpus::kSummaryTypes) out[t] = {};
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (predictions[i] == gold[i]) {
            ++out[gold[i]].tp;
        } else {
            ++out[predictions[i]].fp;
            ++out[gold[i]].fn;
        }
    }
    for (auto& [t, m] : out) {
        const double tp = static_cast<double>(m.tp);
        m.precision = (m.tp + m.fp) ? tp / static_cast<double>(m.tp + m.fp) : 0.0;
        m.recall = (m.tp + m.fn) ? tp / static_cast<double>(m.tp + m.fn) : 0.0;
        m.f1 = (m.precision + m.recall > 0)
                   ? 2 * m.precision * m.recall / (m.precision + m.recall)
                   : 0.0;
    }
    return out;
}

// ---------------------------------------------------------------------
// Persistence

inline nlohmann::ordered_json model_to_json(const LogRegModel& model) {
    nlohmann::ordered_json j;
    j["weights"] = model.weights;
    j["bias"] = model.bias;
    j["feature_means"] = model.stats.mean;
    j["feature_stds"] = model.stats.stddev;
    return j;
}

inline LogRegModel model_from_json(const nlohmann::json& j) {
    LogRegModel model;
    model.weights = j.at("weights").get<Weights>();
    model.bias = j.at("bias").get<Bias>();
    model.stats.mean = j.at("feature_means").get<Features>();
    model.stats.stddev = j.at("feature_stds").get<Features>();
    for (double s : model.stats.stddev)
        if (s <= 0.0)
            throw ValidationError("model: feature stds must be positive");
    return model;
}

}  // namespace atlas::classifier
