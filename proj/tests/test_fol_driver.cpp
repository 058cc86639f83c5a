#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "fol/fol_driver.hpp"
#include "fol/synthetic.hpp"
#include "test_support.hpp"

using namespace fol;

TEST_CASE("theorem parameters") {
    const auto p = theorem1_params(1, 0.0, 0.5, 0.1);
    CHECK(p.T == static_cast<std::size_t>(std::ceil(384.0 * std::log(10.0) / 0.25)));
    CHECK(p.eta == 0.5);

    // the concentration term is 6 m log(m/delta) / (eps/8)^2
    const std::size_t m = 2000;
    const double eps = 0.49, delta = 0.1;
    const auto q = theorem1_params(m, 100.0, eps, delta);
    const double appendix = 6.0 * m * std::log(m / delta) / ((eps / 8) * (eps / 8));
    CHECK(static_cast<double>(q.T) >= appendix * (1 - 1e-12));
    CHECK(static_cast<double>(q.T) <= appendix + 1.0);
    CHECK(q.k == static_cast<std::size_t>(std::ceil(16.0 * std::log(m / delta) / eps)));
    CHECK(q.eta == doctest::Approx(1.0 / 4000));

    // the learner term dominates for a large C
    const auto big = theorem1_params(2, 1e9, 0.5, 0.5);
    CHECK(big.T == static_cast<std::size_t>(std::ceil(8e9 / 0.5)));

    for (double e : {0.4, 0.2, 0.1}) {
        const auto a = theorem1_params(50, 10.0, e, 0.1);
        const auto b = theorem1_params(50, 10.0, e / 2, 0.1);
        CHECK(b.T >= 2 * a.T);
        CHECK(b.k >= 2 * a.k - 1);
    }
    CHECK_THROWS_AS(theorem1_params(10, 1.0, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(theorem1_params(10, 1.0, 0.5, 1.0), std::invalid_argument);
    CHECK(perceptron_mistake_bound(2.0, 0.5) == 16.0);
}

TEST_CASE("config validation") {
    FolConfig c;
    c.T = 10;
    c.k = 11;
    CHECK_THROWS_AS(c.validate(5), std::invalid_argument);
    c.k = 0;
    CHECK_THROWS_AS(c.validate(5), std::invalid_argument);
    c.k = 3;
    CHECK_NOTHROW(c.validate(5));
    c.eta = -0.1;
    CHECK_THROWS_AS(c.validate(5), std::invalid_argument);
    c.eta = 0.3;
    c.theorem_mode = true;
    CHECK_THROWS_AS(c.validate(5), std::invalid_argument);
    c.eta = 0.1;
    CHECK_NOTHROW(c.validate(5));
    c.gamma = 0.25;
    CHECK_THROWS_AS(c.validate(5), std::invalid_argument);
    c = FolConfig{};
    c.audit = true;
    CHECK_THROWS_AS(c.validate(300), std::invalid_argument);
    CHECK_THROWS_AS(c.validate(0), std::invalid_argument);
}

TEST_CASE("a single example reduces to plain online learning") {
    Dataset ds(2, {0.5, -1.0}, {1});
    OnlineLearner a(LearnerKind::OgdHinge, 2, {.base_rate = 0.3});
    OnlineLearner b(LearnerKind::OgdHinge, 2, {.base_rate = 0.3});
    FolConfig c;
    c.T = 40;
    c.k = 5;
    c.log_rounds = true;
    Rng rng(1);
    const auto r = run(ds, a, c, rng);
    for (const auto& round : r.metrics.rounds) {
        CHECK(round.index == 0);
        CHECK(round.probability == 1.0);
        CHECK(round.loss == b.step(ds[0]));
    }
    CHECK(std::vector<double>(a.weights().begin(), a.weights().end()) ==
          std::vector<double>(b.weights().begin(), b.weights().end()));
}

TEST_CASE("runs are deterministic given the seed") {
    Rng data_rng(2);
    const auto data = make_separable(60, 4, 0.1, 1.0, data_rng);
    for (auto policy : {SnapshotPolicy::PreSampled, SnapshotPolicy::StoreAll}) {
        FolConfig c;
        c.T = 3000;
        c.k = 25;
        c.seed = 9;
        c.eval_every = 500;
        c.log_rounds = true;
        c.snapshot_policy = policy;
        OnlineLearner a(LearnerKind::Perceptron, 4), b(LearnerKind::Perceptron, 4);
        Rng r1(c.seed), r2(c.seed);
        const auto x = run(data.data, a, c, r1);
        const auto y = run(data.data, b, c, r2);
        CHECK(same_metrics(x.metrics, y.metrics));
        CHECK(x.snapshot_rounds == y.snapshot_rounds);
        REQUIRE(x.ensemble.size() == 25);
        for (std::size_t j = 0; j < 25; ++j) CHECK(x.ensemble.members[j].weights == y.ensemble.members[j].weights);
    }
}

TEST_CASE("snapshot rounds and checkpoint bookkeeping") {
    Rng data_rng(3);
    const auto data = make_separable(40, 3, 0.1, 1.0, data_rng);
    FolConfig c;
    c.T = 1000;
    c.k = 30;
    c.eval_every = 100;
    OnlineLearner l(LearnerKind::Perceptron, 3);
    Rng rng(4);
    const auto r = run(data.data, l, c, rng);
    CHECK(r.snapshot_rounds.size() == 30);
    CHECK(std::is_sorted(r.snapshot_rounds.begin(), r.snapshot_rounds.end()));
    for (auto t : r.snapshot_rounds) CHECK((t >= 1 && t <= 1000));
    CHECK(r.metrics.checkpoints.size() == 10);
    CHECK(r.metrics.checkpoints.back().step == 1000);
    CHECK(r.metrics.checkpoints.back().epochs == doctest::Approx(25.0));
    CHECK(r.metrics.final.rounds == 1000);
    CHECK(r.metrics.final.epochs == doctest::Approx(25.0));
    CHECK(r.metrics.final.cumulative_loss <= data.mistake_bound);
    if (r.metrics.final.rounds_to_consistency) CHECK(*r.metrics.final.rounds_to_consistency <= 1000);
}

TEST_CASE("presampled and store-all snapshots have the same output distribution") {
    // Tiny game: the member weights are small integer combinations, so the
    // distribution of the first ensemble member can be tabulated exactly.
    Dataset ds(2, {1.0, 0.2, 0.3, -1.0, -0.5, 0.4}, {1, -1, 1});
    const std::size_t trials = 20000;
    std::map<std::vector<double>, std::array<double, 2>> counts;
    for (int policy = 0; policy < 2; ++policy) {
        for (std::size_t s = 0; s < trials; ++s) {
            FolConfig c;
            c.T = 8;
            c.k = 1;
            c.snapshot_policy = policy == 0 ? SnapshotPolicy::PreSampled : SnapshotPolicy::StoreAll;
            OnlineLearner l(LearnerKind::Perceptron, 2);
            Rng rng(mix_seed(100 + policy, s));
            const auto r = run(ds, l, c, rng);
            counts[r.ensemble.members[0].weights][policy] += 1.0;
        }
    }
    // two-sample chi-square with equal sample sizes
    double chi = 0.0;
    std::size_t cells = 0;
    for (const auto& [w, c] : counts) {
        if (c[0] + c[1] < 10) continue;
        chi += (c[0] - c[1]) * (c[0] - c[1]) / (c[0] + c[1]);
        ++cells;
    }
    REQUIRE(cells >= 3);
    CHECK(chi <= testing::chi_square_critical_001(static_cast<double>(cells - 1)));
}

TEST_CASE("average mode returns the mean classifier") {
    Rng data_rng(5);
    const auto data = make_separable(30, 3, 0.1, 1.0, data_rng);
    FolConfig c;
    c.T = 500;
    c.k = 10;
    c.output_mode = EnsembleMode::Average;
    OnlineLearner l(LearnerKind::OgdHinge, 3, {.base_rate = 0.5});
    Rng rng(6);
    const auto r = run(data.data, l, c, rng);
    REQUIRE(r.averaged.has_value());
    for (std::size_t i = 0; i < data.data.size(); ++i) {
        CHECK(predict(r.ensemble, data.data.features(i)) ==
              doctest::Approx(r.averaged->margin(data.data.features(i))).epsilon(1e-12));
    }
}

TEST_CASE("jensen: the averaged classifier's hinge is at most the member average") {
    // Checked on the untruncated hinge max(0, 1 - z), which is convex; the
    // truncated variant is not.
    Rng rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        const auto data = make_separable(50, 4, 0.05, 1.0, rng);
        FolConfig c;
        c.T = 2000;
        c.k = 15;
        c.output_mode = EnsembleMode::Average;
        OnlineLearner l(LearnerKind::OgdHinge, 4, {.base_rate = 0.5, .decay = 0.01});
        const auto r = run(data.data, l, c, rng);
        const Hypothesis mean = r.ensemble.mean();
        for (std::size_t i = 0; i < data.data.size(); ++i) {
            auto raw = [&](const Hypothesis& h) {
                return std::max(0.0, 1.0 - data.data.label(i) * h.margin(data.data.features(i)));
            };
            double avg = 0.0;
            for (const auto& h : r.ensemble.members) avg += raw(h);
            avg /= static_cast<double>(r.ensemble.size());
            CHECK(raw(mean) <= avg + 1e-12);
        }
    }
}

TEST_CASE("theorem mode on a small separable set gives a consistent majority") {
    Rng data_rng(8);
    const auto data = make_separable(100, 5, 0.1, 1.0, data_rng);
    const auto params = theorem1_params(100, data.mistake_bound, 0.49, 0.1);
    FolConfig c;
    c.T = params.T;
    c.k = params.k;
    c.theorem_mode = true;
    OnlineLearner l(LearnerKind::Perceptron, 5);
    Rng rng(1);
    const auto r = run(data.data, l, c, rng);
    CHECK(r.metrics.final.ensemble_lmax <= 0.49);
    CHECK(r.metrics.final.ensemble_mistakes == 0);
    CHECK(r.metrics.final.cumulative_loss <= data.mistake_bound);
}

TEST_CASE("audit mode attaches a regret report") {
    Rng rng(9);
    const auto ds = testing::random_dataset(8, 3, rng);
    FolConfig c;
    c.T = 500;
    c.k = 5;
    c.audit = true;
    OnlineLearner l(LearnerKind::OgdHinge, 3, {.base_rate = 0.1});
    const auto r = run(ds, l, c, rng);
    REQUIRE(r.metrics.regret.has_value());
    CHECK(r.metrics.regret->rounds == 500);
    CHECK(r.metrics.regret->holds());
}
