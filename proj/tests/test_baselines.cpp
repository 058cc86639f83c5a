#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fol/baselines.hpp"
#include "fol/synthetic.hpp"
#include "test_support.hpp"

using namespace fol;

TEST_CASE("sgd on one example is deterministic online learning") {
    Dataset ds(2, {1.0, -0.5}, {-1});
    OnlineLearner a(LearnerKind::OgdHinge, 2, {.base_rate = 0.2});
    OnlineLearner b(LearnerKind::OgdHinge, 2, {.base_rate = 0.2});
    Rng rng(1);
    const auto r = sgd_average(ds, a, 7, rng);
    for (int s = 0; s < 7; ++s) b.step(ds[0]);
    CHECK(r.hypothesis.weights == std::vector<double>(b.weights().begin(), b.weights().end()));
    CHECK(r.metrics.checkpoints.size() == 7);
    CHECK(r.metrics.final.epochs == 7.0);
}

TEST_CASE("sgd is deterministic and improves on separable data") {
    Rng data_rng(2);
    std::size_t improved = 0;
    const std::size_t seeds = 20;
    for (std::size_t s = 0; s < seeds; ++s) {
        const auto data = make_separable(200, 5, 0.1, 1.0, data_rng);
        OnlineLearner a(LearnerKind::OgdHinge, 5, {.base_rate = 0.5}), b(LearnerKind::OgdHinge, 5, {.base_rate = 0.5});
        Rng r1(s), r2(s);
        const auto x = sgd_average(data.data, a, 10, r1);
        const auto y = sgd_average(data.data, b, 10, r2);
        CHECK(same_metrics(x.metrics, y.metrics));
        const auto& cps = x.metrics.checkpoints;
        improved += cps.back().current_lavg <= cps.front().current_lavg;
    }
    CHECK(improved >= 18);
}

TEST_CASE("alpha formula") {
    CHECK(adaboost_alpha(0.5, 10) == 0.0);
    CHECK(adaboost_alpha(0.1, 10) == doctest::Approx(0.5 * std::log(9.0)).epsilon(1e-15));
    CHECK(adaboost_alpha(0.1, 10) == doctest::Approx(1.0986).epsilon(1e-4));
    CHECK(adaboost_alpha(0.0, 50) == doctest::Approx(0.5 * std::log(99.0)));
    CHECK(std::isfinite(adaboost_alpha(0.0, 1)));
    CHECK_THROWS_AS(adaboost_alpha(1.5, 10), std::invalid_argument);
}

TEST_CASE("adaboost bookkeeping") {
    Rng rng(3);
    const auto data = make_separable(300, 5, 0.1, 1.0, rng);
    auto factory = [] { return OnlineLearner(LearnerKind::SgdLogistic, 5, {.base_rate = 1.0}); };
    const auto r = adaboost(data.data, factory, 12, rng);
    CHECK(r.rounds.size() == 12);
    CHECK(r.epochs == 24.0);
    CHECK(r.metrics.final.epochs == 24.0);
    CHECK(r.metrics.checkpoints.back().epochs == 24.0);

    // p must be the normalized exp(-sum_t alpha_t y_i h_t(x_i))
    std::vector<double> expect(data.data.size());
    double z = 0.0;
    for (std::size_t i = 0; i < data.data.size(); ++i) {
        double s = 0.0;
        for (std::size_t t = 0; t < r.rounds.size(); ++t) {
            s += r.ensemble.alphas[t] * data.data.label(i) * r.ensemble.members[t].classify(data.data.features(i));
        }
        expect[i] = std::exp(-s);
        z += expect[i];
    }
    CHECK(std::accumulate(r.distribution.begin(), r.distribution.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < expect.size(); ++i) {
        CHECK(r.distribution[i] == doctest::Approx(expect[i] / z).epsilon(1e-9));
    }
    for (const auto& round : r.rounds) {
        CHECK(round.weighted_error <= 0.5);
        CHECK(round.alpha == adaboost_alpha(round.weighted_error, data.data.size()));
    }
}

TEST_CASE("adaboost aborts when every retry is worse than chance") {
    Dataset ds(1, {1.0, 2.0, 3.0}, {1, 1, 1});
    // a learner that never moves from a wrong initial direction
    auto factory = [] {
        OnlineLearner l(LearnerKind::OgdHinge, 1, {.base_rate = 1e-300});
        l.set_weights(std::vector<double>{-1.0});
        return l;
    };
    Rng rng(4);
    CHECK_THROWS_AS(adaboost(ds, factory, 3, rng), BoostingAborted);
    CHECK_THROWS_AS(adaboost(ds, factory, 0, rng), std::invalid_argument);
}

TEST_CASE("weighted ensemble ties go to +1") {
    WeightedEnsemble e{{Hypothesis{{1.0}}, Hypothesis{{-1.0}}}, {0.5, 0.5}};
    CHECK(e.predict(std::vector<double>{1.0}) == 1);
}
