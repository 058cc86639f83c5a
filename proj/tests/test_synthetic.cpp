#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "fol/synthetic.hpp"
#include "test_support.hpp"

using namespace fol;

TEST_CASE("separable generator respects margin and radius") {
    Rng rng(1);
    const auto data = make_separable(500, 6, 0.2, 1.5, rng);
    CHECK(data.mistake_bound == doctest::Approx(1.5 * 1.5 / 0.04));
    for (std::size_t i = 0; i < data.data.size(); ++i) {
        const auto x = data.data.features(i);
        CHECK(dot(x, x) <= 1.5 * 1.5 + 1e-12);
        CHECK(data.data.label(i) * data.w_star.margin(x) >= 1.0 - 1e-12);
    }
    CHECK_THROWS_AS(make_separable(10, 2, 2.0, 1.0, rng), std::invalid_argument);
}

TEST_CASE("gap sample support and labels") {
    Rng rng(2);
    const GapDistribution dist{0.05, 0.01};
    const auto none = gap_sample({0.05, 0.0}, 2000, rng);
    for (int tag : none.tags) CHECK(tag <= kMinusZ1);

    const auto s = gap_sample(dist, 100000, rng);
    const auto support = gap_support(dist);
    std::size_t rare = 0;
    for (std::size_t i = 0; i < s.data.size(); ++i) {
        const auto tag = static_cast<std::size_t>(s.tags[i]);
        CHECK(s.data.features(i)[0] == support.data.features(tag)[0]);
        CHECK(s.data.features(i)[1] == support.data.features(tag)[1]);
        CHECK(s.data.label(i) == support.data.label(tag));
        rare += tag >= kPlusZ2;
    }
    const double sigma = std::sqrt(0.01 * 0.99 / 100000);
    CHECK(std::abs(rare / 100000.0 - 0.01) <= 4 * sigma);
}

TEST_CASE("gap generalization error") {
    const GapDistribution dist{0.05, 0.01};
    // w = (1, 0) classifies all four points correctly
    CHECK(gap_generalization_error(dist, std::vector<double>{1.0, 0.0}) == 0.0);
    // w = (0, 1) gets z1 right and z2 wrong
    CHECK(gap_generalization_error(dist, std::vector<double>{0.0, 1.0}) == doctest::Approx(0.01));
    CHECK(gap_generalization_error(dist, std::vector<double>{0.0, 0.0}) == 1.0);
}

TEST_CASE("coupon collector sample size and frequency") {
    CHECK(gap_sample_size(0.05, 0.1) == 148);
    Rng rng(3);
    const auto rep = gap_lemma1_check(0.05, 0.05, 0.1, 1000, rng);
    CHECK(rep.m == 148);
    CHECK(rep.all_present_frequency >= 0.9);
    CHECK(rep.bound_respected);
    CHECK(rep.erm_zero_error_frequency == 1.0);
    CHECK_FALSE(rep.degenerate);
    Rng r2(3);
    CHECK(gap_lemma1_check(0.05, 1.0, 0.1, 50, r2).degenerate);
}

TEST_CASE("gap race is deterministic and favours the focused learner") {
    Rng a(4), b(4);
    const auto x = gap_race(0.05, 0.01, 50.0, 8, a);
    const auto y = gap_race(0.05, 0.01, 50.0, 8, b);
    REQUIRE(x.rows.size() == 8);
    for (std::size_t s = 0; s < 8; ++s) {
        CHECK(x.rows[s].fol_iterations == y.rows[s].fol_iterations);
        CHECK(x.rows[s].sgd_iterations == y.rows[s].sgd_iterations);
    }
    CHECK(x.budget == 6000);
    CHECK(x.fol_median_iterations <= x.sgd_median_iterations);
}

TEST_CASE("mixture sampling") {
    Rng rng(5);
    const auto none = mixture_sample({4, 0.0}, 5000, rng);
    for (int t : none.tags) CHECK(t == kTypical);

    const auto s = mixture_sample({4, 0.01}, 10000, rng);
    const auto rare = static_cast<double>(std::count(s.tags.begin(), s.tags.end(), kRare));
    CHECK(std::abs(rare - 100.0) <= 3 * std::sqrt(10000 * 0.01 * 0.99));
    const Conjunction target{0xF, 4};
    for (std::size_t i = 0; i < s.data.size(); ++i) CHECK(target.predict(s.data.features(i)) == s.data.label(i));
    CHECK_THROWS_AS(mixture_sample({11, 0.01}, 10, rng), std::invalid_argument);
}

TEST_CASE("supports") {
    const auto typical = mixture_typical_support(4);
    CHECK(typical.size() == 12);  // all-ones plus C(4,2)+C(4,3)+C(4,4) points with >= 2 zeros
    double total = 0.0;
    for (const auto& p : typical) total += p.probability;
    CHECK(total == doctest::Approx(1.0));
    const auto rare = mixture_rare_support(4);
    CHECK(rare.size() == 4);
    for (const auto& p : rare) {
        CHECK(std::popcount(p.mask) == 3);
        CHECK(p.label == -1);
    }
}

TEST_CASE("every consistent wrong conjunction pays at least 1/8 on the rare component") {
    const std::size_t d = 4;
    const auto typical = mixture_typical_support(d);
    const auto rare = mixture_rare_support(d);
    std::size_t wrong_consistent = 0;
    for (std::uint32_t mask = 0; mask < 16; ++mask) {
        const Conjunction h{mask, d};
        if (mask == 0xF) {
            CHECK(conjunction_error(h, rare) == 0.0);
            CHECK(conjunction_error(h, typical) == 0.0);
            continue;
        }
        if (conjunction_error(h, typical) == 0.0) {
            ++wrong_consistent;
            CHECK(conjunction_error(h, rare) >= 0.125);
        }
    }
    CHECK(wrong_consistent == 4);
    CHECK(min_wrong_rare_error(d, 0.0) >= 0.125);
    CHECK(min_wrong_rare_error(d, 0.01) >= 0.125);
}

TEST_CASE("ERM with and without rare examples") {
    const std::size_t d = 4;
    Rng rng(6);
    auto typical_only = mixture_sample({d, 0.0}, 400, rng).data;
    const auto h = erm_conjunction(typical_only, d, TieBreak::FewestLiterals);
    CHECK(h.mask != 0xFu);
    CHECK(conjunction_error(h, mixture_rare_support(d)) >= 0.125);
    CHECK(erm_conjunction(typical_only, d, TieBreak::MostLiterals).mask == 0xFu);

    Dataset with_rare = typical_only;
    for (const auto& p : mixture_rare_support(d)) with_rare.push_back(Example{mask_features(p.mask, d), p.label});
    for (auto tb : {TieBreak::FewestLiterals, TieBreak::MostLiterals}) {
        const auto g = erm_conjunction(with_rare, d, tb);
        CHECK(g.mask == 0xFu);
        CHECK(conjunction_error(g, mixture_rare_support(d)) == 0.0);
    }
    CHECK_THROWS_AS(erm_conjunction(Dataset(11, std::vector<double>(11, 1.0), {1}), 11), std::invalid_argument);
}

TEST_CASE("mixture experiment curve is monotone and deterministic") {
    const std::vector<std::size_t> grid{50, 200, 800, 3200};
    Rng a(7), b(7);
    const auto x = mixture_erm_experiment({4, 0.01}, grid, 0.01, 0.1, 40, a);
    const auto y = mixture_erm_experiment({4, 0.01}, grid, 0.01, 0.1, 40, b);
    REQUIRE(x.summary.size() == 4);
    for (std::size_t g = 0; g < 4; ++g) {
        CHECK(x.summary[g].mean_rare_error == y.summary[g].mean_rare_error);
        if (g > 0) CHECK(x.summary[g].mean_rare_error <= x.summary[g - 1].mean_rare_error);
    }
    CHECK(x.gap_constant >= 0.125);
    CHECK(x.summary.back().mean_rare_error < x.summary.front().mean_rare_error);
}
