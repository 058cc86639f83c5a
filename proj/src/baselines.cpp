#include "fol/baselines.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "fol/detail/game_loop.hpp"
#include "fol/kernels.hpp"
#include "fol/sampler_tree.hpp"

namespace fol {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

SgdResult sgd_average(const Dataset& ds, OnlineLearner& learner, std::size_t epochs, Rng& rng) {
    if (epochs == 0) throw std::invalid_argument("sgd_average: epochs must be at least 1");
    if (ds.empty()) throw std::invalid_argument("sgd_average: dataset is empty");
    check_dimension(ds.dimension(), learner.dimension(), "sgd_average");
    const auto start = std::chrono::steady_clock::now();
    const std::size_t m = ds.size();
    const LossKind kind = learner.loss_kind();

    SgdResult out;
    auto& f = out.metrics.final;
    for (std::size_t e = 1; e <= epochs; ++e) {
        for (std::size_t s = 0; s < m; ++s) {
            const auto i = static_cast<std::size_t>(uniform_index(rng, m));
            f.cumulative_loss += learner.step(ds[i]);
        }
        out.metrics.checkpoints.push_back(detail::make_checkpoint(ds, kind, e * m, learner.snapshot(), {}));
    }
    out.hypothesis = learner.snapshot();
    const auto& last = out.metrics.checkpoints.back();
    f.rounds = epochs * m;
    f.epochs = static_cast<double>(epochs);
    f.last_lmax = f.ensemble_lmax = last.current_lmax;
    f.last_lavg = f.ensemble_lavg = last.current_lavg;
    f.last_mistakes = f.ensemble_mistakes = last.current_mistakes;
    for (const auto& c : out.metrics.checkpoints) {
        if (c.current_mistakes == 0) {
            f.last_iterate_consistent_at = f.rounds_to_consistency = c.step;
            break;
        }
    }
    out.metrics.wall_seconds = seconds_since(start);
    return out;
}

int WeightedEnsemble::predict(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t t = 0; t < members.size(); ++t) s += alphas[t] * members[t].classify(x);
    return s >= 0.0 ? 1 : -1;
}

std::size_t WeightedEnsemble::mistakes(const Dataset& ds) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) n += predict(ds.features(i)) != ds.label(i);
    return n;
}

double adaboost_alpha(double weighted_error, std::size_t m) {
    if (!(weighted_error >= 0.0 && weighted_error <= 1.0)) {
        throw std::invalid_argument("adaboost_alpha: error must be in [0,1]");
    }
    const double floor = 1.0 / (2.0 * static_cast<double>(std::max<std::size_t>(m, 1)));
    const double eps = weighted_error == 0.0 ? floor : weighted_error;
    return 0.5 * std::log(1.0 / eps - 1.0);
}

AdaBoostResult adaboost(const Dataset& ds, const LearnerFactory& make_learner, std::size_t rounds,
                        Rng& rng, AdaBoostOptions options) {
    if (rounds == 0) throw std::invalid_argument("adaboost: at least one round is required");
    if (ds.empty()) throw std::invalid_argument("adaboost: dataset is empty");
    const auto start = std::chrono::steady_clock::now();
    const std::size_t m = ds.size();
    std::vector<double> p(m, 1.0 / static_cast<double>(m));
    std::vector<int> correct(m);

    AdaBoostResult out;
    std::vector<double> previous;
    for (std::size_t t = 1; t <= rounds; ++t) {
        BoostRound round;
        round.t = t;
        Hypothesis h;
        for (;;) {
            OnlineLearner learner = make_learner();
            check_dimension(ds.dimension(), learner.dimension(), "adaboost weak learner");
            if (options.warm_start && !previous.empty()) learner.set_weights(previous);
            const auto tree = SamplerTree::from_weights(p);
            for (std::size_t s = 0; s < m; ++s) learner.step(ds[tree.sample(0.0, rng).index]);
            h = learner.snapshot();

            double err = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                correct[i] = h.classify(ds.features(i)) == ds.label(i);
                if (!correct[i]) err += p[i];
            }
            round.weighted_error = std::min(1.0, err);
            if (round.weighted_error <= 0.5) break;
            if (round.retries == options.max_retries) {
                throw BoostingAborted("adaboost: round " + std::to_string(t) + " weighted error " +
                                      std::to_string(round.weighted_error) + " exceeds 1/2 after " +
                                      std::to_string(round.retries) + " retries");
            }
            ++round.retries;
        }
        round.alpha = adaboost_alpha(round.weighted_error, m);

        double z = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            // y_i h_t(x_i) is +1 when correct, -1 otherwise.
            p[i] *= std::exp(correct[i] ? -round.alpha : round.alpha);
            z += p[i];
        }
        for (double& v : p) v /= z;

        out.ensemble.members.push_back(h);
        out.ensemble.alphas.push_back(round.alpha);
        previous = h.weights;
        round.ensemble_mistakes = out.ensemble.mistakes(ds);
        out.rounds.push_back(round);

        Checkpoint c = detail::make_checkpoint(ds, LossKind::ZeroOne, t, h, {});
        c.epochs = 2.0 * static_cast<double>(t);
        const double md = static_cast<double>(m);
        c.ensemble = EnsembleStats{t, round.ensemble_mistakes > 0 ? 1.0 : 0.0,
                                   static_cast<double>(round.ensemble_mistakes) / md,
                                   round.ensemble_mistakes};
        out.metrics.checkpoints.push_back(c);
    }

    out.epochs = 2.0 * static_cast<double>(rounds);
    out.distribution = p;
    auto& f = out.metrics.final;
    const auto& last = out.metrics.checkpoints.back();
    f.rounds = rounds;
    f.epochs = out.epochs;
    f.last_lmax = last.current_lmax;
    f.last_lavg = last.current_lavg;
    f.last_mistakes = last.current_mistakes;
    f.ensemble_lmax = last.ensemble->lmax;
    f.ensemble_lavg = last.ensemble->lavg;
    f.ensemble_mistakes = last.ensemble->mistakes;
    for (const auto& c : out.metrics.checkpoints) {
        if (c.ensemble->mistakes == 0) {
            f.rounds_to_consistency = c.step;
            break;
        }
    }
    out.metrics.wall_seconds = seconds_since(start);
    return out;
}

}  // namespace fol
