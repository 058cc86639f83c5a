#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fol/core_types.hpp"
#include "fol/fol_driver.hpp"
#include "fol/rng.hpp"
#include "fol/w_player.hpp"

namespace fol {

// --- sub-sampling with repetitions ---------------------------------------

std::vector<std::size_t> subsample_indices(std::size_t m, std::size_t n, Rng& rng);
// n i.i.d. uniform draws (with replacement) from ds.
Dataset subsample_with_repetitions(const Dataset& ds, std::size_t n, Rng& rng);

struct SubsampleBound {
    double value = 0.0;
    bool hypothesis_holds = false;  // m >= 10 k
};

// 0.01 + 0.99 k n / m + exp(-0.1 n m2 / m): an upper bound on the chance that
// a size-n resample contains an outlier or too few rare examples.
SubsampleBound theorem3_bound(double k_outliers, double m2, double m, double n);

struct BadEventEstimate {
    std::size_t trials = 0;
    std::size_t bad = 0;
    double probability = 0.0;
    double std_error = 0.0;  // sqrt(p (1 - p) / trials)
};

// Indices [0, k) are outliers and [k, k + m2) are rare. A trial is bad when a
// draw hits an outlier or the number of rare draws is at most half its
// expectation n m2 / m. Trials use independent streams seeded from one draw of
// rng, so the result does not depend on the thread count.
BadEventEstimate monte_carlo_bad_event(std::size_t m, std::size_t k_outliers, std::size_t m2,
                                       std::size_t n, std::size_t trials, Rng& rng);

namespace serial {
BadEventEstimate monte_carlo_bad_event(std::size_t m, std::size_t k_outliers, std::size_t m2,
                                       std::size_t n, std::size_t trials, Rng& rng);
}

// --- slack variables -------------------------------------------------------

enum class SlackNorm { L1, L2Squared };

std::string_view to_string(SlackNorm norm);
SlackNorm parse_slack_norm(std::string_view name);

struct SlackState {
    std::vector<double> xi;
    double budget = 1.0;  // K
    SlackNorm norm = SlackNorm::L1;
};

// Euclidean projection onto {xi in [0,1]^m : ||xi||_1 <= K} (L1) or
// {xi in [0,1]^m : ||xi||_2^2 <= K} (L2Squared). Throws when K <= 0.
std::vector<double> project_slack(std::span<const double> xi_raw, double K, SlackNorm norm);

struct SlackOptions {
    double rate = 0.0;            // step on xi; 0 means 1/(2m)
    bool multiplicative = false;  // feed (1 - xi_i) loss instead of loss - xi_i
};

struct SlackResult {
    FolResult fol;
    SlackState slack;
};

// FOL where the sampling player sees clamp(loss - xi_{i_t}, 0, 1). After each
// round xi_{i_t} takes a subgradient step of the relaxed loss and xi is
// projected back onto the feasible set. K = 0 pins xi at zero, which reproduces
// run() exactly.
SlackResult fol_with_slack(const Dataset& ds, OnlineLearner& learner, const FolConfig& config,
                           SlackState slack, Rng& rng, SlackOptions options = {});

}  // namespace fol
