#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fol/core_types.hpp"
#include "fol/fol_driver.hpp"
#include "fol/rng.hpp"
#include "fol/w_player.hpp"

namespace fol {

struct SgdResult {
    Hypothesis hypothesis;  // last iterate
    RunMetrics metrics;     // one checkpoint per epoch
};

// epochs * m learner steps on uniformly drawn examples (average-loss SGD).
SgdResult sgd_average(const Dataset& ds, OnlineLearner& learner, std::size_t epochs, Rng& rng);

// sign(sum_t alpha_t h_t(x)), ties to +1.
struct WeightedEnsemble {
    std::vector<Hypothesis> members;
    std::vector<double> alphas;

    int predict(std::span<const double> x) const;
    std::size_t mistakes(const Dataset& ds) const;
};

struct BoostRound {
    std::size_t t = 0;  // 1-based
    double weighted_error = 0.0;  // epsilon_t
    double alpha = 0.0;
    std::size_t retries = 0;
    std::size_t ensemble_mistakes = 0;  // of the weighted vote after this round
};

struct AdaBoostOptions {
    bool warm_start = false;  // start each weak learner from the previous h_t
    std::size_t max_retries = 3;
};

struct AdaBoostResult {
    WeightedEnsemble ensemble;
    std::vector<BoostRound> rounds;
    double epochs = 0.0;  // two per boosting round: one sampling epoch, one evaluation pass
    std::vector<double> distribution;  // p after the last reweighting
    RunMetrics metrics;
};

class BoostingAborted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// alpha = 0.5 log(1/eps - 1); eps = 0 is treated as eps = 1/(2m).
double adaboost_alpha(double weighted_error, std::size_t m);

using LearnerFactory = std::function<OnlineLearner()>;

// Each round trains a fresh weak learner for one epoch of p-weighted sampling,
// weighs it by alpha_t and reweights p_i <- p_i exp(-alpha_t y_i h_t(x_i)).
// A round with weighted error above 1/2 is retrained (up to max_retries)
// before BoostingAborted is thrown.
AdaBoostResult adaboost(const Dataset& ds, const LearnerFactory& make_learner, std::size_t rounds,
                        Rng& rng, AdaBoostOptions options = {});

}  // namespace fol
