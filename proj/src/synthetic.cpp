#include "fol/synthetic.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fol/p_player.hpp"
#include "fol/w_player.hpp"

namespace fol {

namespace {

double standard_normal(Rng& rng) {
    // Box-Muller; 1 - u keeps the log argument positive.
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> unit_vector(std::size_t d, Rng& rng) {
    std::vector<double> v(d);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (double& x : v) {
            x = standard_normal(rng);
            norm += x * x;
        }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    return v;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

SeparableData make_separable(std::size_t m, std::size_t d, double geometric_margin, double radius,
                             Rng& rng) {
    if (m == 0 || d == 0) throw std::invalid_argument("make_separable: m and d must be positive");
    if (!(geometric_margin > 0.0) || !(radius > geometric_margin)) {
        throw std::invalid_argument("make_separable: need 0 < margin < radius");
    }
    const auto u = unit_vector(d, rng);
    std::vector<double> x;
    std::vector<int> y;
    x.reserve(m * d);
    y.reserve(m);
    while (y.size() < m) {
        auto dir = unit_vector(d, rng);
        const double r = radius * std::pow(uniform01(rng), 1.0 / static_cast<double>(d));
        for (double& v : dir) v *= r;
        const double s = dot(u, dir);
        if (std::abs(s) < geometric_margin) continue;
        x.insert(x.end(), dir.begin(), dir.end());
        y.push_back(s > 0.0 ? 1 : -1);
    }
    SeparableData out{Dataset(d, std::move(x), std::move(y)), Hypothesis{u},
                      (radius * radius) / (geometric_margin * geometric_margin)};
    for (double& w : out.w_star.weights) w /= geometric_margin;
    return out;
}

// --- gap construction --------------------------------------------------------

namespace {

void check_gap(const GapDistribution& dist) {
    if (!(dist.alpha > 0.0)) throw std::invalid_argument("gap: alpha must be positive");
    if (!(dist.epsilon >= 0.0 && dist.epsilon <= 1.0)) throw std::invalid_argument("gap: epsilon must be in [0,1]");
}

std::array<double, 2> gap_point(const GapDistribution& dist, int tag) {
    const double a = dist.alpha;
    switch (tag) {
        case kPlusZ1: return {a, 1.0};
        case kMinusZ1: return {-a, -1.0};
        case kPlusZ2: return {a, -2.0 * a};
        default: return {-a, 2.0 * a};
    }
}

int gap_label(int tag) { return tag == kPlusZ1 || tag == kPlusZ2 ? 1 : -1; }

bool gap_solved(const GapDistribution& dist, std::span<const double> w) {
    return gap_generalization_error(dist, w) == 0.0;
}

}  // namespace

TaggedDataset gap_sample(const GapDistribution& dist, std::size_t m, Rng& rng) {
    check_gap(dist);
    if (m == 0) throw std::invalid_argument("gap_sample: m must be positive");
    std::vector<double> x;
    std::vector<int> y, tags;
    x.reserve(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool positive = uniform01(rng) < 0.5;
        const bool rare = uniform01(rng) < dist.epsilon;
        const int tag = rare ? (positive ? kPlusZ2 : kMinusZ2) : (positive ? kPlusZ1 : kMinusZ1);
        const auto p = gap_point(dist, tag);
        x.insert(x.end(), p.begin(), p.end());
        y.push_back(gap_label(tag));
        tags.push_back(tag);
    }
    return {Dataset(2, std::move(x), std::move(y)), std::move(tags)};
}

TaggedDataset gap_support(const GapDistribution& dist) {
    check_gap(dist);
    std::vector<double> x;
    std::vector<int> y, tags;
    for (int tag = 0; tag < 4; ++tag) {
        const auto p = gap_point(dist, tag);
        x.insert(x.end(), p.begin(), p.end());
        y.push_back(gap_label(tag));
        tags.push_back(tag);
    }
    return {Dataset(2, std::move(x), std::move(y)), std::move(tags)};
}

double gap_generalization_error(const GapDistribution& dist, std::span<const double> w) {
    check_dimension(2, w.size(), "gap_generalization_error");
    // Each point and its negation share a label sign, so y<w,x> = <w,z>.
    const double a = dist.alpha;
    const bool z1_wrong = w[0] * a + w[1] <= 0.0;
    const bool z2_wrong = w[0] * a - 2.0 * a * w[1] <= 0.0;
    return (1.0 - dist.epsilon) * z1_wrong + dist.epsilon * z2_wrong;
}

std::size_t gap_sample_size(double epsilon, double delta) {
    if (!(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("gap_sample_size: need epsilon > 0 and delta in (0,1)");
    }
    return static_cast<std::size_t>(std::ceil(2.0 * std::log(4.0 / delta) / epsilon));
}

CouponCollectorReport gap_lemma1_check(double alpha, double epsilon, double delta, std::size_t trials, Rng& rng) {
    const GapDistribution dist{alpha, epsilon};
    check_gap(dist);
    if (trials == 0) throw std::invalid_argument("gap_lemma1_check: trials must be positive");
    CouponCollectorReport rep;
    rep.trials = trials;
    rep.degenerate = epsilon <= 0.0 || epsilon >= 1.0;
    rep.m = gap_sample_size(std::max(epsilon, std::numeric_limits<double>::min()), delta);
    rep.missing_bound = 4.0 * std::pow(1.0 - epsilon / 2.0, static_cast<double>(rep.m));

    const auto support = gap_support(dist);
    const std::uint64_t base = rng();
    long present = 0, erm_ok = 0;
    const auto count = static_cast<long>(trials);
#pragma omp parallel for schedule(static) reduction(+ : present, erm_ok)
    for (long t = 0; t < count; ++t) {
        Rng local = stream_rng(base, static_cast<std::uint64_t>(t));
        const auto sample = gap_sample(dist, rep.m, local);
        std::array<bool, 4> seen{};
        for (int tag : sample.tags) seen[static_cast<std::size_t>(tag)] = true;
        if (!(seen[0] && seen[1] && seen[2] && seen[3])) continue;
        ++present;
        // The sample's distinct points are the four support points; cycle the
        // Perceptron over them until it is consistent with the sample.
        OnlineLearner perceptron(LearnerKind::Perceptron, 2);
        for (int pass = 0; pass < 100000; ++pass) {
            std::size_t mistakes = 0;
            for (int tag = 0; tag < 4; ++tag) mistakes += perceptron.step(support.data[static_cast<std::size_t>(tag)]) > 0.0;
            if (mistakes == 0) break;
        }
        erm_ok += gap_solved(dist, perceptron.weights());
    }
    const double n = static_cast<double>(trials);
    rep.all_present_frequency = static_cast<double>(present) / n;
    rep.missing_frequency = 1.0 - rep.all_present_frequency;
    rep.sigma = std::sqrt(rep.missing_frequency * (1.0 - rep.missing_frequency) / n);
    rep.bound_respected = rep.missing_frequency <= rep.missing_bound + 3.0 * rep.sigma;
    rep.erm_zero_error_frequency = present > 0 ? static_cast<double>(erm_ok) / static_cast<double>(present) : 0.0;
    return rep;
}

GapRaceReport gap_race(double alpha, double epsilon, double budget_multiplier, std::size_t seeds,
                       Rng& rng, GapRaceOptions options) {
    const GapDistribution dist{alpha, epsilon};
    check_gap(dist);
    if (!(epsilon > 0.0)) throw std::invalid_argument("gap_race: epsilon must be positive");
    if (!(budget_multiplier > 0.0) || seeds == 0) throw std::invalid_argument("gap_race: invalid budget or seeds");
    if (!(options.sgd_rate > 0.0)) throw std::invalid_argument("gap_race: sgd rate must be positive");

    GapRaceReport rep;
    rep.dist = dist;
    rep.budget = static_cast<std::size_t>(std::ceil(budget_multiplier * (1.0 / epsilon + 1.0 / alpha)));
    const std::size_t m = options.train_size != 0 ? options.train_size : gap_sample_size(epsilon, options.delta);
    rep.rows.resize(seeds);

    const std::uint64_t base = rng();
    const auto count = static_cast<long>(seeds);
#pragma omp parallel for schedule(dynamic)
    for (long s = 0; s < count; ++s) {
        Rng local = stream_rng(base, static_cast<std::uint64_t>(s));
        auto& row = rep.rows[static_cast<std::size_t>(s)];
        row.seed = static_cast<std::size_t>(s);
        row.train_size = m;
        const auto sample = gap_sample(dist, m, local);
        row.rare_in_sample = static_cast<std::size_t>(
            std::count_if(sample.tags.begin(), sample.tags.end(), [](int t) { return t >= kPlusZ2; }));

        PPlayer sampler(m);
        OnlineLearner perceptron(LearnerKind::Perceptron, 2);
        for (std::size_t t = 1; t <= rep.budget; ++t) {
            const auto draw = sampler.pick(local);
            const double loss = perceptron.step(sample.data[draw.index]);
            sampler.observe(draw.index, draw.probability, loss);
            if (loss > 0.0 && gap_solved(dist, perceptron.weights())) {
                row.fol_iterations = t;
                break;
            }
        }

        LearnerParams sgd_params;
        sgd_params.base_rate = options.sgd_rate;
        OnlineLearner sgd(LearnerKind::OgdHinge, 2, sgd_params);
        for (std::size_t t = 1; t <= rep.budget; ++t) {
            sgd.step(sample.data[static_cast<std::size_t>(uniform_index(local, m))]);
            if (gap_solved(dist, sgd.weights())) {
                row.sgd_iterations = t;
                break;
            }
        }
        row.sgd_final_error = gap_generalization_error(dist, sgd.weights());
    }

    std::vector<double> fol_its, sgd_its;
    std::size_t fol_ok = 0, sgd_fail = 0;
    for (const auto& row : rep.rows) {
        fol_ok += row.fol_iterations.has_value();
        sgd_fail += !row.sgd_iterations.has_value();
        fol_its.push_back(static_cast<double>(row.fol_iterations.value_or(rep.budget)));
        sgd_its.push_back(static_cast<double>(row.sgd_iterations.value_or(rep.budget)));
    }
    rep.fol_success_fraction = static_cast<double>(fol_ok) / static_cast<double>(seeds);
    rep.sgd_failure_fraction = static_cast<double>(sgd_fail) / static_cast<double>(seeds);
    rep.fol_median_iterations = median(fol_its);
    rep.sgd_median_iterations = median(sgd_its);
    return rep;
}

// --- typical / rare mixture --------------------------------------------------

namespace {

void check_mixture_d(std::size_t d) {
    if (d == 0 || d > 10) throw std::invalid_argument("mixture: d must be in [1, 10]");
}

std::uint32_t full_mask(std::size_t d) { return (1u << d) - 1u; }

std::uint32_t features_to_mask(std::span<const double> x) {
    std::uint32_t mask = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] > 0.5) mask |= 1u << j;
    }
    return mask;
}

}  // namespace

std::vector<SupportPoint> mixture_typical_support(std::size_t d) {
    check_mixture_d(d);
    std::vector<SupportPoint> pts;
    const auto full = full_mask(d);
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
        const auto present = static_cast<std::size_t>(std::popcount(mask));
        if (mask == full) pts.push_back({mask, 1, 0.0});
        else if (present + 2 <= d) pts.push_back({mask, -1, 0.0});
    }
    for (auto& p : pts) p.probability = 1.0 / static_cast<double>(pts.size());
    return pts;
}

std::vector<SupportPoint> mixture_rare_support(std::size_t d) {
    check_mixture_d(d);
    std::vector<SupportPoint> pts;
    for (std::size_t j = 0; j < d; ++j) {
        pts.push_back({full_mask(d) & ~(1u << j), -1, 1.0 / static_cast<double>(d)});
    }
    return pts;
}

std::vector<double> mask_features(std::uint32_t mask, std::size_t d) {
    std::vector<double> x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = (mask >> j) & 1u ? 1.0 : 0.0;
    return x;
}

TaggedDataset mixture_sample(const MixtureDistribution& dist, std::size_t m, Rng& rng) {
    check_mixture_d(dist.d);
    if (m == 0) throw std::invalid_argument("mixture_sample: m must be positive");
    if (!(dist.lambda2 >= 0.0 && dist.lambda2 < 0.5)) {
        throw std::invalid_argument("mixture_sample: lambda2 must be in [0, 1/2)");
    }
    const auto typical = mixture_typical_support(dist.d);
    const auto rare = mixture_rare_support(dist.d);
    std::vector<double> x;
    std::vector<int> y, tags;
    x.reserve(m * dist.d);
    for (std::size_t i = 0; i < m; ++i) {
        const bool is_rare = uniform01(rng) < dist.lambda2;
        const auto& pool = is_rare ? rare : typical;
        const auto& p = pool[static_cast<std::size_t>(uniform_index(rng, pool.size()))];
        const auto f = mask_features(p.mask, dist.d);
        x.insert(x.end(), f.begin(), f.end());
        y.push_back(p.label);
        tags.push_back(is_rare ? kRare : kTypical);
    }
    return {Dataset(dist.d, std::move(x), std::move(y)), std::move(tags)};
}

int Conjunction::predict(std::span<const double> x) const {
    check_dimension(d, x.size(), "Conjunction::predict");
    return predict_mask(features_to_mask(x));
}

std::size_t Conjunction::literals() const { return static_cast<std::size_t>(std::popcount(mask)); }

double conjunction_error(const Conjunction& h, std::span<const SupportPoint> support) {
    double err = 0.0;
    for (const auto& p : support) {
        if (h.predict_mask(p.mask) != p.label) err += p.probability;
    }
    return err;
}

std::string_view to_string(TieBreak tb) { return tb == TieBreak::MostLiterals ? "most" : "fewest"; }

TieBreak parse_tie_break(std::string_view name) {
    if (name == "most") return TieBreak::MostLiterals;
    if (name == "fewest") return TieBreak::FewestLiterals;
    throw std::invalid_argument("unknown tie-break: " + std::string(name));
}

Conjunction erm_conjunction(const Dataset& ds, std::size_t d, TieBreak tie_break) {
    check_mixture_d(d);
    check_dimension(d, ds.dimension(), "erm_conjunction");
    std::vector<std::uint32_t> points(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) points[i] = features_to_mask(ds.features(i));

    Conjunction best{0, d};
    std::size_t best_err = std::numeric_limits<std::size_t>::max();
    for (std::uint32_t mask = 0; mask <= full_mask(d); ++mask) {
        const Conjunction h{mask, d};
        std::size_t err = 0;
        for (std::size_t i = 0; i < points.size(); ++i) err += h.predict_mask(points[i]) != ds.label(i);
        bool better = err < best_err;
        if (err == best_err) {
            better = tie_break == TieBreak::MostLiterals ? h.literals() > best.literals()
                                                         : h.literals() < best.literals();
        }
        if (better) {
            best = h;
            best_err = err;
        }
    }
    return best;
}

double min_wrong_rare_error(std::size_t d, double epsilon) {
    const auto typical = mixture_typical_support(d);
    const auto rare = mixture_rare_support(d);
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < full_mask(d); ++mask) {
        const Conjunction h{mask, d};
        if (conjunction_error(h, typical) <= epsilon) best = std::min(best, conjunction_error(h, rare));
    }
    return best;
}

MixtureReport mixture_erm_experiment(const MixtureDistribution& dist, std::span<const std::size_t> m_grid,
                                     double epsilon, double delta, std::size_t seeds, Rng& rng,
                                     TieBreak tie_break) {
    check_mixture_d(dist.d);
    if (m_grid.empty() || seeds == 0) throw std::invalid_argument("mixture experiment: empty grid or no seeds");
    if (std::find(m_grid.begin(), m_grid.end(), std::size_t{0}) != m_grid.end()) {
        throw std::invalid_argument("mixture experiment: grid sizes must be positive");
    }
    std::vector<std::size_t> grid(m_grid.begin(), m_grid.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    MixtureReport rep;
    rep.dist = dist;
    rep.epsilon = epsilon;
    rep.delta = delta;
    rep.tie_break = tie_break;
    rep.gap_constant = min_wrong_rare_error(dist.d, epsilon);
    rep.rows.resize(grid.size() * seeds);

    const auto typical = mixture_typical_support(dist.d);
    const auto rare = mixture_rare_support(dist.d);
    const std::uint64_t base = rng();
    const auto count = static_cast<long>(seeds);
#pragma omp parallel for schedule(dynamic)
    for (long s = 0; s < count; ++s) {
        Rng local = stream_rng(base, static_cast<std::uint64_t>(s));
        const auto sample = mixture_sample(dist, grid.back(), local);
        std::size_t rare_count = 0;
        std::size_t filled = 0;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            for (; filled < grid[g]; ++filled) rare_count += sample.tags[filled] == kRare;
            std::vector<std::size_t> prefix(grid[g]);
            std::iota(prefix.begin(), prefix.end(), std::size_t{0});
            const auto h = erm_conjunction(sample.data.select(prefix), dist.d, tie_break);
            auto& row = rep.rows[g * seeds + static_cast<std::size_t>(s)];
            row.m = grid[g];
            row.seed = static_cast<std::size_t>(s);
            row.rare_count = rare_count;
            row.erm_mask = h.mask;
            row.typical_error = conjunction_error(h, typical);
            row.rare_error = conjunction_error(h, rare);
            row.both_within_epsilon = row.typical_error <= epsilon && row.rare_error <= epsilon;
        }
    }

    for (std::size_t g = 0; g < grid.size(); ++g) {
        MixtureSummary sum;
        sum.m = grid[g];
        for (std::size_t s = 0; s < seeds; ++s) {
            const auto& row = rep.rows[g * seeds + s];
            sum.success_fraction += row.both_within_epsilon;
            sum.mean_rare_error += row.rare_error;
            sum.mean_typical_error += row.typical_error;
            sum.mean_rare_count += static_cast<double>(row.rare_count);
        }
        const double n = static_cast<double>(seeds);
        sum.success_fraction /= n;
        sum.mean_rare_error /= n;
        sum.mean_typical_error /= n;
        sum.mean_rare_count /= n;
        if (!rep.sample_size_reached && sum.success_fraction >= 1.0 - delta) rep.sample_size_reached = sum.m;
        rep.summary.push_back(sum);
    }
    return rep;
}

}  // namespace fol
