#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fol/core_types.hpp"

namespace fol {

enum class LearnerKind { Perceptron, OgdHinge, SgdLogistic };

std::string_view to_string(LearnerKind kind);
LearnerKind parse_learner_kind(std::string_view name);

// The loss each learner reports by default: zero-one, hinge, logistic.
LossKind natural_loss(LearnerKind kind);

struct LearnerParams {
    // eta_t = base_rate * (1 + decay * t)^(-power), t = steps taken so far.
    // The Perceptron ignores the schedule and always adds y*x.
    double base_rate = 1.0;
    double decay = 0.0;
    double power = 0.75;
    double l2 = 0.0;
    // Loss returned by step(); defaults to natural_loss(kind).
    std::optional<LossKind> report_loss;
};

// Online learner with a uniform step interface. Weights start at zero.
class OnlineLearner {
public:
    OnlineLearner(LearnerKind kind, std::size_t dimension, LearnerParams params = {});

    // Returns the (truncated) loss of the current weights on e, then updates.
    double step(ExampleRef e);

    Hypothesis snapshot() const { return Hypothesis{weights_}; }
    std::span<const double> weights() const { return weights_; }
    void set_weights(std::span<const double> w);

    LearnerKind kind() const { return kind_; }
    LossKind loss_kind() const { return report_loss_; }
    const LearnerParams& params() const { return params_; }
    std::size_t dimension() const { return weights_.size(); }
    std::size_t step_count() const { return steps_; }
    double rate_at(std::size_t t) const;

private:
    LearnerKind kind_;
    LearnerParams params_;
    LossKind report_loss_;
    std::vector<double> weights_;
    std::size_t steps_ = 0;
};

}  // namespace fol
