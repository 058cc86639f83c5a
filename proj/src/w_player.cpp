#include "fol/w_player.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fol {

std::string_view to_string(LearnerKind kind) {
    switch (kind) {
        case LearnerKind::Perceptron: return "perceptron";
        case LearnerKind::OgdHinge: return "ogd-hinge";
        case LearnerKind::SgdLogistic: return "sgd-logistic";
    }
    return "unknown";
}

LearnerKind parse_learner_kind(std::string_view name) {
    if (name == "perceptron") return LearnerKind::Perceptron;
    if (name == "ogd-hinge" || name == "hinge") return LearnerKind::OgdHinge;
    if (name == "sgd-logistic" || name == "logistic") return LearnerKind::SgdLogistic;
    throw std::invalid_argument("unknown learner: " + std::string(name));
}

LossKind natural_loss(LearnerKind kind) {
    switch (kind) {
        case LearnerKind::Perceptron: return LossKind::ZeroOne;
        case LearnerKind::OgdHinge: return LossKind::Hinge;
        case LearnerKind::SgdLogistic: return LossKind::Logistic;
    }
    return LossKind::ZeroOne;
}

OnlineLearner::OnlineLearner(LearnerKind kind, std::size_t dimension, LearnerParams params)
    : kind_(kind),
      params_(params),
      report_loss_(params.report_loss.value_or(natural_loss(kind))),
      weights_(dimension, 0.0) {
    if (dimension == 0) throw std::invalid_argument("OnlineLearner: dimension must be positive");
    if (!(params_.base_rate > 0.0) || !std::isfinite(params_.base_rate)) {
        throw std::invalid_argument("OnlineLearner: base rate must be positive");
    }
    if (!(params_.decay >= 0.0) || !(params_.power >= 0.0) || !(params_.l2 >= 0.0)) {
        throw std::invalid_argument("OnlineLearner: decay, power and l2 must be non-negative");
    }
}

void OnlineLearner::set_weights(std::span<const double> w) {
    check_dimension(weights_.size(), w.size(), "OnlineLearner::set_weights");
    weights_.assign(w.begin(), w.end());
}

double OnlineLearner::rate_at(std::size_t t) const {
    if (params_.decay == 0.0) return params_.base_rate;
    return params_.base_rate * std::pow(1.0 + params_.decay * static_cast<double>(t), -params_.power);
}

double OnlineLearner::step(ExampleRef e) {
    check_dimension(weights_.size(), e.features.size(), "OnlineLearner::step");
    const double y = e.label;
    const double margin = y * dot(weights_, e.features);
    const double loss = evaluate_loss_at_margin(report_loss_, margin);

    switch (kind_) {
        case LearnerKind::Perceptron:
            if (margin <= 0.0) {
                for (std::size_t j = 0; j < weights_.size(); ++j) weights_[j] += y * e.features[j];
            }
            break;
        case LearnerKind::OgdHinge:
        case LearnerKind::SgdLogistic: {
            const double eta = rate_at(steps_);
            // Gradient of the untruncated surrogate: slope * y * x.
            const double slope = surrogate_slope(natural_loss(kind_), margin);
            const double shrink = 1.0 - eta * params_.l2;
            for (std::size_t j = 0; j < weights_.size(); ++j) {
                weights_[j] = shrink * weights_[j] - eta * slope * y * e.features[j];
            }
            break;
        }
    }
    ++steps_;
    return loss;
}

}  // namespace fol
