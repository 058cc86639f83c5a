#include "fol/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fol/detail/game_loop.hpp"

namespace fol {

std::vector<std::size_t> subsample_indices(std::size_t m, std::size_t n, Rng& rng) {
    if (m == 0) throw std::invalid_argument("subsample: source is empty");
    std::vector<std::size_t> idx(n);
    for (auto& i : idx) i = static_cast<std::size_t>(uniform_index(rng, m));
    return idx;
}

Dataset subsample_with_repetitions(const Dataset& ds, std::size_t n, Rng& rng) {
    if (n == 0) throw std::invalid_argument("subsample: n must be at least 1");
    const auto idx = subsample_indices(ds.size(), n, rng);
    return ds.select(idx);
}

SubsampleBound theorem3_bound(double k_outliers, double m2, double m, double n) {
    if (!(k_outliers >= 0.0 && m2 >= 0.0 && n >= 0.0 && m > 0.0)) {
        throw std::invalid_argument("theorem3_bound: counts must be non-negative and m positive");
    }
    SubsampleBound b;
    b.hypothesis_holds = m >= 10.0 * k_outliers;
    b.value = 0.01 + 0.99 * k_outliers * n / m + std::exp(-0.1 * n * m2 / m);
    return b;
}

namespace {

void check_bad_event_args(std::size_t m, std::size_t k, std::size_t m2) {
    if (m == 0) throw std::invalid_argument("monte_carlo_bad_event: m must be positive");
    if (k + m2 > m) throw std::invalid_argument("monte_carlo_bad_event: k + m2 must not exceed m");
}

bool bad_trial(std::size_t m, std::size_t k, std::size_t m2, std::size_t n, Rng& rng) {
    const double threshold = 0.5 * static_cast<double>(n) * static_cast<double>(m2) / static_cast<double>(m);
    std::size_t rare = 0;
    for (std::size_t d = 0; d < n; ++d) {
        const auto i = static_cast<std::size_t>(uniform_index(rng, m));
        if (i < k) return true;
        rare += i < k + m2;
    }
    return static_cast<double>(rare) <= threshold;
}

BadEventEstimate summarize(std::size_t trials, std::size_t bad) {
    BadEventEstimate e;
    e.trials = trials;
    e.bad = bad;
    if (trials > 0) {
        e.probability = static_cast<double>(bad) / static_cast<double>(trials);
        e.std_error = std::sqrt(e.probability * (1.0 - e.probability) / static_cast<double>(trials));
    }
    return e;
}

}  // namespace

namespace serial {

BadEventEstimate monte_carlo_bad_event(std::size_t m, std::size_t k_outliers, std::size_t m2,
                                       std::size_t n, std::size_t trials, Rng& rng) {
    check_bad_event_args(m, k_outliers, m2);
    const std::uint64_t base = rng();
    std::size_t bad = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng local = stream_rng(base, t);
        bad += bad_trial(m, k_outliers, m2, n, local);
    }
    return summarize(trials, bad);
}

}  // namespace serial

BadEventEstimate monte_carlo_bad_event(std::size_t m, std::size_t k_outliers, std::size_t m2,
                                       std::size_t n, std::size_t trials, Rng& rng) {
    check_bad_event_args(m, k_outliers, m2);
    const std::uint64_t base = rng();
    long bad = 0;
    const auto count = static_cast<long>(trials);
#pragma omp parallel for schedule(static) reduction(+ : bad)
    for (long t = 0; t < count; ++t) {
        Rng local = stream_rng(base, static_cast<std::uint64_t>(t));
        bad += bad_trial(m, k_outliers, m2, n, local);
    }
    return summarize(trials, static_cast<std::size_t>(bad));
}

std::string_view to_string(SlackNorm norm) { return norm == SlackNorm::L1 ? "l1" : "l2sq"; }

SlackNorm parse_slack_norm(std::string_view name) {
    if (name == "l1") return SlackNorm::L1;
    if (name == "l2sq" || name == "l2") return SlackNorm::L2Squared;
    throw std::invalid_argument("unknown slack norm: " + std::string(name));
}

namespace {

double clip01(double v) { return std::min(1.0, std::max(0.0, v)); }

// Sum_i clip(r_i - theta, 0, 1); non-increasing and piecewise linear in theta.
double shifted_mass(std::span<const double> r, double theta) {
    double s = 0.0;
    for (double v : r) s += clip01(v - theta);
    return s;
}

std::vector<double> project_l1(std::span<const double> r, double K) {
    std::vector<double> out(r.size());
    std::transform(r.begin(), r.end(), out.begin(), clip01);
    if (std::accumulate(out.begin(), out.end(), 0.0) <= K) return out;

    std::vector<double> breaks;
    breaks.reserve(2 * r.size());
    for (double v : r) {
        if (v > 0.0) breaks.push_back(v);
        if (v - 1.0 > 0.0) breaks.push_back(v - 1.0);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    // First breakpoint where the mass has dropped to K or below; the largest
    // breakpoint drives every coordinate to zero, so one always exists.
    std::size_t lo = 0, hi = breaks.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (shifted_mass(r, breaks[mid]) <= K) hi = mid;
        else lo = mid + 1;
    }
    const double right = breaks[lo];
    const double left = lo == 0 ? 0.0 : breaks[lo - 1];
    const double g_left = shifted_mass(r, left);
    const double g_right = shifted_mass(r, right);
    double theta = right;
    if (g_left > g_right) theta = left + (g_left - K) / (g_left - g_right) * (right - left);
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = clip01(r[i] - theta);
    return out;
}

double scaled_energy(std::span<const double> r, double s) {
    double e = 0.0;
    for (double v : r) {
        const double c = std::min(1.0, s * std::max(0.0, v));
        e += c * c;
    }
    return e;
}

std::vector<double> project_l2sq(std::span<const double> r, double K) {
    std::vector<double> out(r.size());
    std::transform(r.begin(), r.end(), out.begin(), clip01);
    double energy = 0.0;
    for (double v : out) energy += v * v;
    if (energy <= K) return out;

    // xi_i = min(s r_i^+, 1) for a scale s in (0,1); the energy is increasing
    // in s with breakpoints where s r_i = 1.
    std::vector<double> breaks{0.0};
    for (double v : r) {
        if (v > 1.0) breaks.push_back(1.0 / v);
    }
    breaks.push_back(1.0);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    std::size_t lo = 1, hi = breaks.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (scaled_energy(r, breaks[mid]) >= K) hi = mid;
        else lo = mid + 1;
    }
    // On [breaks[lo-1], breaks[lo]] the energy is A + s^2 B.
    const double probe = 0.5 * (breaks[lo - 1] + breaks[lo]);
    double A = 0.0, B = 0.0;
    for (double v : r) {
        const double vp = std::max(0.0, v);
        if (probe * vp >= 1.0) A += 1.0;
        else B += vp * vp;
    }
    double s = breaks[lo];
    if (B > 0.0 && K > A) s = std::min(breaks[lo], std::sqrt((K - A) / B));
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = std::min(1.0, s * std::max(0.0, r[i]));
    return out;
}

}  // namespace

std::vector<double> project_slack(std::span<const double> xi_raw, double K, SlackNorm norm) {
    if (!(K > 0.0) || !std::isfinite(K)) throw std::invalid_argument("project_slack: K must be positive");
    for (double v : xi_raw) {
        if (!std::isfinite(v)) throw std::invalid_argument("project_slack: non-finite input");
    }
    return norm == SlackNorm::L1 ? project_l1(xi_raw, K) : project_l2sq(xi_raw, K);
}

namespace {

class SlackFeedback {
public:
    SlackFeedback(SlackState& state, double rate, bool multiplicative)
        : state_(state), rate_(rate), multiplicative_(multiplicative), pinned_(state.budget == 0.0) {
        refresh();
    }

    double feed(std::size_t i, double loss) const {
        if (pinned_) return loss;
        const double xi = state_.xi[i];
        return multiplicative_ ? (1.0 - xi) * loss : clip01(loss - xi);
    }

    void after(std::size_t i, double loss) {
        if (pinned_) return;
        double step = 0.0;
        if (multiplicative_) step = rate_ * loss;
        else if (loss - state_.xi[i] > 0.0) step = rate_;  // clamp is active
        if (step == 0.0) return;

        const double old = state_.xi[i];
        const double updated = std::min(1.0, old + step);
        state_.xi[i] = updated;
        l1_ += updated - old;
        l2_ += updated * updated - old * old;
        const bool violated = state_.norm == SlackNorm::L1 ? l1_ > state_.budget : l2_ > state_.budget;
        if (violated) {
            state_.xi = project_slack(state_.xi, state_.budget, state_.norm);
            refresh();
        }
    }

private:
    void refresh() {
        l1_ = 0.0;
        l2_ = 0.0;
        for (double v : state_.xi) {
            l1_ += v;
            l2_ += v * v;
        }
    }

    SlackState& state_;
    double rate_;
    bool multiplicative_;
    bool pinned_;
    double l1_ = 0.0;
    double l2_ = 0.0;
};

}  // namespace

SlackResult fol_with_slack(const Dataset& ds, OnlineLearner& learner, const FolConfig& config,
                           SlackState slack, Rng& rng, SlackOptions options) {
    const std::size_t m = ds.size();
    if (!(slack.budget >= 0.0) || !std::isfinite(slack.budget)) {
        throw std::invalid_argument("fol_with_slack: budget must be non-negative");
    }
    if (slack.xi.empty()) slack.xi.assign(m, 0.0);
    check_dimension(m, slack.xi.size(), "fol_with_slack slack vector");
    if (slack.budget == 0.0) {
        std::fill(slack.xi.begin(), slack.xi.end(), 0.0);
    } else {
        slack.xi = project_slack(slack.xi, slack.budget, slack.norm);
    }
    const double rate = options.rate == 0.0 ? 1.0 / (2.0 * static_cast<double>(m)) : options.rate;
    if (!(rate > 0.0)) throw std::invalid_argument("fol_with_slack: slack rate must be positive");

    SlackFeedback feedback(slack, rate, options.multiplicative);
    SlackResult out{detail::play_game(ds, learner, config, rng, feedback), {}};
    out.slack = std::move(slack);
    return out;
}

}  // namespace fol
