#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fol/core_types.hpp"
#include "fol/rng.hpp"

namespace fol {

// Dataset plus a per-example integer tag (support point, component, ...).
struct TaggedDataset {
    Dataset data;
    std::vector<int> tags;
};

// ---------------------------------------------------------------------------
// Linearly separable data: x uniform in the radius-R ball, rejected when
// |<u,x>| < margin, labelled sign(<u,x>). w* = u / margin separates with
// margin 1, so the Perceptron mistake bound is R^2 / margin^2.

struct SeparableData {
    Dataset data;
    Hypothesis w_star;
    double mistake_bound = 0.0;
};

SeparableData make_separable(std::size_t m, std::size_t d, double geometric_margin, double radius,
                             Rng& rng);

// ---------------------------------------------------------------------------
// Gap construction: z1 = (alpha, 1), z2 = (alpha, -2 alpha); y uniform on
// {-1,+1}; x = y z1 with probability 1 - epsilon, otherwise x = y z2.

struct GapDistribution {
    double alpha = 0.05;
    double epsilon = 0.01;
};

enum GapPoint : int { kPlusZ1 = 0, kMinusZ1 = 1, kPlusZ2 = 2, kMinusZ2 = 3 };

TaggedDataset gap_sample(const GapDistribution& dist, std::size_t m, Rng& rng);
// The four labelled support points, tagged as above.
TaggedDataset gap_support(const GapDistribution& dist);
// Exact zero-one error of w under the gap distribution.
double gap_generalization_error(const GapDistribution& dist, std::span<const double> w);

// ceil(2 log(4/delta) / epsilon).
std::size_t gap_sample_size(double epsilon, double delta);

struct CouponCollectorReport {
    std::size_t m = 0;
    std::size_t trials = 0;
    double all_present_frequency = 0.0;
    double missing_frequency = 0.0;
    double missing_bound = 0.0;  // 4 (1 - epsilon/2)^m
    double sigma = 0.0;          // Monte Carlo standard error of missing_frequency
    bool bound_respected = false;  // missing_frequency <= missing_bound + 3 sigma
    // Over trials with all four points present: fraction where a consistent
    // halfspace found by the Perceptron has zero generalization error.
    double erm_zero_error_frequency = 0.0;
    bool degenerate = false;  // epsilon in {0, 1}: only two support points exist
};

CouponCollectorReport gap_lemma1_check(double alpha, double epsilon, double delta, std::size_t trials, Rng& rng);

struct GapRaceOptions {
    double delta = 0.1;           // training-set size from gap_sample_size(epsilon, delta)
    std::size_t train_size = 0;   // overrides the above when non-zero
    double sgd_rate = 0.1;        // constant step of the uniform hinge SGD
};

struct GapRaceRow {
    std::size_t seed = 0;
    std::size_t train_size = 0;
    std::size_t rare_in_sample = 0;
    std::optional<std::size_t> fol_iterations;  // first t with zero generalization error
    std::optional<std::size_t> sgd_iterations;
    double sgd_final_error = 0.0;
};

struct GapRaceReport {
    GapDistribution dist;
    std::size_t budget = 0;  // budget_multiplier * (1/epsilon + 1/alpha)
    std::vector<GapRaceRow> rows;
    double fol_success_fraction = 0.0;
    double sgd_failure_fraction = 0.0;  // error >= epsilon at the budget
    double fol_median_iterations = 0.0;  // unfinished runs count as the budget
    double sgd_median_iterations = 0.0;
};

GapRaceReport gap_race(double alpha, double epsilon, double budget_multiplier, std::size_t seeds,
                       Rng& rng, GapRaceOptions options = {});

// ---------------------------------------------------------------------------
// Typical/rare mixture over d boolean features, labelled by the conjunction of
// all d features. D1: uniform over the all-ones point and every point missing
// at least two features. D2: uniform over the d points missing exactly one.

struct MixtureDistribution {
    std::size_t d = 4;
    double lambda2 = 0.01;
};

enum MixtureComponent : int { kTypical = 0, kRare = 1 };

struct SupportPoint {
    std::uint32_t mask;  // bit j set when feature j is present
    int label;
    double probability;
};

std::vector<SupportPoint> mixture_typical_support(std::size_t d);
std::vector<SupportPoint> mixture_rare_support(std::size_t d);

TaggedDataset mixture_sample(const MixtureDistribution& dist, std::size_t m, Rng& rng);
std::vector<double> mask_features(std::uint32_t mask, std::size_t d);

// Monotone conjunction: +1 iff every feature in mask is present.
struct Conjunction {
    std::uint32_t mask = 0;
    std::size_t d = 0;

    int predict(std::span<const double> x) const;
    int predict_mask(std::uint32_t point) const { return (point & mask) == mask ? 1 : -1; }
    std::size_t literals() const;
    bool operator==(const Conjunction&) const = default;
};

double conjunction_error(const Conjunction& h, std::span<const SupportPoint> support);

enum class TieBreak { MostLiterals, FewestLiterals };

std::string_view to_string(TieBreak tb);
TieBreak parse_tie_break(std::string_view name);

// Exhaustive ERM over all 2^d monotone conjunctions (d <= 10). Ties go to the
// most (or fewest) literals, then to the smallest mask.
Conjunction erm_conjunction(const Dataset& ds, std::size_t d, TieBreak tie_break = TieBreak::MostLiterals);

// Smallest exact L_D2 over hypotheses h != h* with L_D1(h) <= epsilon.
double min_wrong_rare_error(std::size_t d, double epsilon);

struct MixtureRow {
    std::size_t m = 0;
    std::size_t seed = 0;
    std::size_t rare_count = 0;
    std::uint32_t erm_mask = 0;
    double typical_error = 0.0;
    double rare_error = 0.0;
    bool both_within_epsilon = false;
};

struct MixtureSummary {
    std::size_t m = 0;
    double success_fraction = 0.0;
    double mean_rare_error = 0.0;
    double mean_typical_error = 0.0;
    double mean_rare_count = 0.0;
};

struct MixtureReport {
    MixtureDistribution dist;
    double epsilon = 0.0;
    double delta = 0.0;
    TieBreak tie_break = TieBreak::FewestLiterals;
    double gap_constant = 0.0;  // min_wrong_rare_error(d, epsilon), the c of the construction
    std::vector<MixtureRow> rows;
    std::vector<MixtureSummary> summary;
    std::optional<std::size_t> sample_size_reached;  // first m with success >= 1 - delta
};

// For each seed one sample of size max(m_grid) is drawn and ERM is run on its
// prefixes, so the per-seed curve is nested in m.
MixtureReport mixture_erm_experiment(const MixtureDistribution& dist, std::span<const std::size_t> m_grid,
                                     double epsilon, double delta, std::size_t seeds, Rng& rng,
                                     TieBreak tie_break = TieBreak::FewestLiterals);

}  // namespace fol
