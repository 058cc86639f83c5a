#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fol/core_types.hpp"
#include "test_support.hpp"

using namespace fol;

TEST_CASE("zero-one loss counts a zero margin as a mistake") {
    Hypothesis h{{1.0, -1.0}};
    CHECK(evaluate_loss(LossKind::ZeroOne, h, Example{{2.0, 1.0}, 1}) == 0.0);
    CHECK(evaluate_loss(LossKind::ZeroOne, h, Example{{2.0, 1.0}, -1}) == 1.0);
    CHECK(evaluate_loss(LossKind::ZeroOne, h, Example{{1.0, 1.0}, 1}) == 1.0);
    CHECK(evaluate_loss(LossKind::ZeroOne, h, Example{{1.0, 1.0}, -1}) == 1.0);
    CHECK(h.classify(std::vector<double>{1.0, 1.0}) == 1);
}

TEST_CASE("hinge loss is truncated at one") {
    Hypothesis zero{{0.0, 0.0}};
    CHECK(evaluate_loss(LossKind::Hinge, zero, Example{{3.0, 4.0}, 1}) == 1.0);
    Hypothesis h{{0.25, 0.0}};
    CHECK(evaluate_loss(LossKind::Hinge, h, Example{{2.0, 0.0}, 1}) == doctest::Approx(0.5));
    CHECK(evaluate_loss(LossKind::Hinge, h, Example{{2.0, 0.0}, -1}) == 1.0);
    CHECK(evaluate_loss(LossKind::Hinge, h, Example{{8.0, 0.0}, 1}) == 0.0);
}

TEST_CASE("logistic loss is log2-scaled and truncated") {
    CHECK(evaluate_loss_at_margin(LossKind::Logistic, 0.0) == doctest::Approx(1.0));
    CHECK(evaluate_loss_at_margin(LossKind::Logistic, -5.0) == 1.0);
    const double z = 3.0;
    CHECK(evaluate_loss_at_margin(LossKind::Logistic, z) ==
          doctest::Approx(std::log1p(std::exp(-z)) / std::log(2.0)).epsilon(1e-14));
    CHECK(evaluate_loss_at_margin(LossKind::Logistic, 800.0) >= 0.0);
    CHECK(evaluate_loss_at_margin(LossKind::Logistic, 800.0) < 1e-300);
}

TEST_CASE("surrogate slopes match finite differences of the natural-log surrogates") {
    for (double z : {-2.0, -0.3, 0.4, 0.9, 3.0}) {
        const double h = 1e-6;
        const double raw_logistic_plus = std::log1p(std::exp(-(z + h)));
        const double raw_logistic_minus = std::log1p(std::exp(-(z - h)));
        CHECK(surrogate_slope(LossKind::Logistic, z) ==
              doctest::Approx((raw_logistic_plus - raw_logistic_minus) / (2 * h)).epsilon(1e-6));
        CHECK(surrogate_slope(LossKind::Hinge, z) == (z < 1.0 ? -1.0 : 0.0));
        CHECK(surrogate_slope(LossKind::ZeroOne, z) == 0.0);
    }
}

TEST_CASE("objective examples") {
    Dataset ds(2, {1.0, 0.0, 0.0, 1.0}, {1, 1});
    Hypothesis h1{{0.5, 0.5}};
    Hypothesis h2{{0.5, 1.0}};
    CHECK(objective_max(LossKind::Hinge, h1, ds) == doctest::Approx(0.5));
    CHECK(objective_avg(LossKind::Hinge, h2, ds) == doctest::Approx(0.25));

    EnsembleHypothesis ens{{h1, h2}, EnsembleMode::Average};
    // member-averaged per-example losses are {0.5, 0.25}
    CHECK(objective_max(LossKind::Hinge, ens, ds) == doctest::Approx(0.5));
    CHECK(objective_avg(LossKind::Hinge, ens, ds) == doctest::Approx(0.375));

    Dataset wrong(1, {1.0, 1.0}, {1, -1});
    Hypothesis w{{1.0}};
    CHECK(objective_max(LossKind::ZeroOne, w, wrong) == 1.0);
    CHECK(objective_avg(LossKind::ZeroOne, w, wrong) == 0.5);
}

TEST_CASE("objectives reject empty data and dimension mismatches") {
    Dataset empty;
    Hypothesis h{{1.0}};
    CHECK_THROWS_AS(objective_max(LossKind::Hinge, h, empty), std::invalid_argument);
    Dataset ds(2, {1.0, 2.0}, {1});
    CHECK_THROWS_AS(objective_max(LossKind::Hinge, h, ds), std::invalid_argument);
    CHECK_THROWS_AS(objective_avg(LossKind::ZeroOne, h, ds), std::invalid_argument);
    CHECK_THROWS_AS(Dataset(2, {1.0, 2.0, 3.0}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(Dataset(1, {1.0}, {0}), std::invalid_argument);
}

TEST_CASE("loss and objective invariants on random inputs") {
    Rng rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const auto ds = testing::random_dataset(1 + rep % 17, 1 + rep % 5, rng);
        const auto h = testing::random_hypothesis(ds.dimension(), rng);
        for (auto kind : {LossKind::ZeroOne, LossKind::Hinge, LossKind::Logistic}) {
            for (std::size_t i = 0; i < ds.size(); ++i) {
                const double l = evaluate_loss(kind, h, ds[i]);
                CHECK(l >= 0.0);
                CHECK(l <= 1.0);
            }
            CHECK(objective_max(kind, h, ds) >= objective_avg(kind, h, ds));
        }
        const bool consistent = training_mistakes(h, ds) == 0;
        CHECK((objective_max(LossKind::ZeroOne, h, ds) < 1.0) == consistent);
    }
}

TEST_CASE("majority vote abstains on zero and breaks ties to +1") {
    EnsembleHypothesis ens;
    ens.members = {Hypothesis{{1.0}}, Hypothesis{{1.0}}, Hypothesis{{-1.0}}};
    const std::vector<double> x{1.0};
    CHECK(ens.predict(x) == 1.0);
    ens.members = {Hypothesis{{1.0}}, Hypothesis{{-1.0}}};
    CHECK(ens.predict(x) == 1.0);
    ens.members = {Hypothesis{{0.0}}, Hypothesis{{-1.0}}};
    CHECK(ens.predict(x) == -1.0);
    ens.members = {Hypothesis{{-2.0}}, Hypothesis{{-1.0}}, Hypothesis{{0.5}}};
    CHECK(ens.predict(x) == -1.0);
}

TEST_CASE("average mode predicts with the mean classifier") {
    Rng rng(3);
    EnsembleHypothesis ens;
    ens.mode = EnsembleMode::Average;
    for (int j = 0; j < 7; ++j) ens.members.push_back(testing::random_hypothesis(4, rng));
    const Hypothesis mean = ens.mean();
    for (int rep = 0; rep < 50; ++rep) {
        const auto x = testing::random_hypothesis(4, rng).weights;
        CHECK(ens.predict(x) == doctest::Approx(mean.margin(x)).epsilon(1e-12));
    }
    EnsembleHypothesis empty;
    CHECK_THROWS_AS(empty.mean(), std::invalid_argument);
}

TEST_CASE("names round-trip") {
    for (auto k : {LossKind::ZeroOne, LossKind::Hinge, LossKind::Logistic}) {
        CHECK(parse_loss_kind(to_string(k)) == k);
    }
    for (auto m : {EnsembleMode::Majority, EnsembleMode::Average}) {
        CHECK(parse_ensemble_mode(to_string(m)) == m);
    }
    CHECK_THROWS_AS(parse_loss_kind("squared"), std::invalid_argument);
}

TEST_CASE("dataset select and push_back") {
    Dataset ds(2, {1, 2, 3, 4, 5, 6}, {1, -1, 1});
    const std::vector<std::size_t> idx{2, 0, 2};
    const auto sub = ds.select(idx);
    REQUIRE(sub.size() == 3);
    CHECK(sub.features(0)[1] == 6.0);
    CHECK(sub.label(1) == 1);
    Dataset grow;
    grow.push_back(ds[1]);
    CHECK(grow.dimension() == 2);
    CHECK(grow.label(0) == -1);
    CHECK_THROWS_AS(grow.push_back(Example{{1.0}, 1}), std::invalid_argument);
}
