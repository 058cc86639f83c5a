#include "fol/fol_driver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fol/detail/game_loop.hpp"

namespace fol {

std::string_view to_string(SnapshotPolicy policy) {
    return policy == SnapshotPolicy::PreSampled ? "presampled" : "storeall";
}

SnapshotPolicy parse_snapshot_policy(std::string_view name) {
    if (name == "presampled") return SnapshotPolicy::PreSampled;
    if (name == "storeall") return SnapshotPolicy::StoreAll;
    throw std::invalid_argument("unknown snapshot policy: " + std::string(name));
}

void FolConfig::validate(std::size_t m) const {
    if (m == 0) throw std::invalid_argument("FolConfig: dataset is empty");
    if (T == 0) throw std::invalid_argument("FolConfig: T must be at least 1");
    if (k == 0 || k > T) throw std::invalid_argument("FolConfig: k must satisfy 1 <= k <= T");
    if (!(eta >= 0.0) || !std::isfinite(eta)) throw std::invalid_argument("FolConfig: eta must be positive");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("FolConfig: gamma must be in (0,1]");
    if (theorem_mode) {
        if (gamma != 0.5) throw std::invalid_argument("FolConfig: theorem mode requires gamma = 1/2");
        const double expected = 1.0 / (2.0 * static_cast<double>(m));
        if (std::abs(resolved_eta(m) - expected) > 1e-15 * expected) {
            throw std::invalid_argument("FolConfig: theorem mode requires eta = 1/(2m)");
        }
    }
    if (audit && m > PPlayer::kMaxAuditSize) {
        throw std::invalid_argument("FolConfig: audit mode requires m <= 256");
    }
    if (snapshot_policy == SnapshotPolicy::StoreAll && T > 10'000'000) {
        throw std::invalid_argument("FolConfig: storeall is limited to T <= 1e7");
    }
}

TheoremParams theorem1_params(std::size_t m, double C_estimate, double epsilon, double delta,
                              TheoremConstants constants) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("theorem1_params: epsilon must be in (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("theorem1_params: delta must be in (0,1)");
    if (!(C_estimate >= 0.0)) throw std::invalid_argument("theorem1_params: C must be non-negative");
    if (m == 0) throw std::invalid_argument("theorem1_params: m must be positive");
    const double md = static_cast<double>(m);
    const double log_term = std::log(md / delta);
    const double t_learner = std::ceil(8.0 * C_estimate / epsilon);
    const double t_concentration = std::ceil(constants.c_T * md * log_term / (epsilon * epsilon));
    const double k = std::ceil(constants.c_k * log_term / epsilon);
    TheoremParams out;
    out.T = static_cast<std::size_t>(std::max(t_learner, t_concentration));
    out.k = std::max<std::size_t>(1, static_cast<std::size_t>(k));
    out.k = std::min(out.k, out.T);
    out.eta = 1.0 / (2.0 * md);
    return out;
}

double perceptron_mistake_bound(double radius, double geometric_margin) {
    if (!(geometric_margin > 0.0)) throw std::invalid_argument("margin must be positive");
    return (radius * radius) / (geometric_margin * geometric_margin);
}

double predict(const EnsembleHypothesis& ens, std::span<const double> x) { return ens.predict(x); }

bool same_metrics(const RunMetrics& a, const RunMetrics& b) {
    auto same_round = [](const RoundRecord& x, const RoundRecord& y) {
        return x.t == y.t && x.index == y.index && x.probability == y.probability && x.loss == y.loss;
    };
    auto same_stats = [](const std::optional<EnsembleStats>& x, const std::optional<EnsembleStats>& y) {
        if (x.has_value() != y.has_value()) return false;
        if (!x) return true;
        return x->size == y->size && x->lmax == y->lmax && x->lavg == y->lavg && x->mistakes == y->mistakes;
    };
    if (a.rounds.size() != b.rounds.size() || a.checkpoints.size() != b.checkpoints.size()) return false;
    for (std::size_t i = 0; i < a.rounds.size(); ++i) {
        if (!same_round(a.rounds[i], b.rounds[i])) return false;
    }
    for (std::size_t i = 0; i < a.checkpoints.size(); ++i) {
        const auto& x = a.checkpoints[i];
        const auto& y = b.checkpoints[i];
        if (x.step != y.step || x.epochs != y.epochs || x.current_lmax != y.current_lmax ||
            x.current_lavg != y.current_lavg || x.current_mistakes != y.current_mistakes ||
            !same_stats(x.ensemble, y.ensemble)) {
            return false;
        }
    }
    const auto& f = a.final;
    const auto& g = b.final;
    return f.rounds == g.rounds && f.epochs == g.epochs && f.ensemble_lmax == g.ensemble_lmax &&
           f.ensemble_lavg == g.ensemble_lavg && f.ensemble_mistakes == g.ensemble_mistakes &&
           f.last_lmax == g.last_lmax && f.last_lavg == g.last_lavg &&
           f.last_mistakes == g.last_mistakes && f.cumulative_loss == g.cumulative_loss &&
           f.rounds_to_consistency == g.rounds_to_consistency &&
           f.last_iterate_consistent_at == g.last_iterate_consistent_at;
}

namespace detail {

namespace {

EnsembleStats ensemble_stats(const Dataset& ds, LossKind kind, const EnsembleHypothesis& ens) {
    EnsembleStats s;
    s.size = ens.size();
    const auto losses = ensemble_loss_vector(kind, ens, ds);
    double sum = 0.0;
    for (double l : losses) {
        s.lmax = std::max(s.lmax, l);
        sum += l;
    }
    s.lavg = sum / static_cast<double>(losses.size());
    s.mistakes = training_mistakes(ens, ds);
    return s;
}

}  // namespace

Checkpoint make_checkpoint(const Dataset& ds, LossKind kind, std::size_t step,
                           const Hypothesis& current, const std::vector<Hypothesis>& members) {
    Checkpoint c;
    c.step = step;
    c.epochs = static_cast<double>(step) / static_cast<double>(ds.size());
    const auto losses = loss_vector(kind, current, ds);
    double sum = 0.0;
    for (double l : losses) {
        c.current_lmax = std::max(c.current_lmax, l);
        sum += l;
    }
    c.current_lavg = sum / static_cast<double>(losses.size());
    c.current_mistakes = training_mistakes(current, ds);
    if (!members.empty()) {
        c.ensemble = ensemble_stats(ds, kind, EnsembleHypothesis{members, EnsembleMode::Majority});
    }
    return c;
}

void finish_metrics(const Dataset& ds, LossKind kind, const Hypothesis& last, std::size_t rounds,
                    FolResult& result) {
    auto& f = result.metrics.final;
    const auto& cps = result.metrics.checkpoints;
    f.rounds = rounds;
    f.epochs = static_cast<double>(rounds) / static_cast<double>(ds.size());
    const auto final_cp = make_checkpoint(ds, kind, 0, last, {});
    f.last_lmax = final_cp.current_lmax;
    f.last_lavg = final_cp.current_lavg;
    f.last_mistakes = final_cp.current_mistakes;
    const auto stats = ensemble_stats(ds, kind, result.ensemble);
    f.ensemble_lmax = stats.lmax;
    f.ensemble_lavg = stats.lavg;
    f.ensemble_mistakes = stats.mistakes;
    for (const auto& c : cps) {
        if (!f.rounds_to_consistency && c.ensemble && c.ensemble->mistakes == 0) {
            f.rounds_to_consistency = c.step;
        }
        if (!f.last_iterate_consistent_at && c.current_mistakes == 0) {
            f.last_iterate_consistent_at = c.step;
        }
    }
    if (!f.rounds_to_consistency && f.ensemble_mistakes == 0) f.rounds_to_consistency = rounds;
    if (!f.last_iterate_consistent_at && f.last_mistakes == 0) f.last_iterate_consistent_at = rounds;
    if (result.ensemble.mode == EnsembleMode::Average) result.averaged = result.ensemble.mean();
}

}  // namespace detail

FolResult run(const Dataset& ds, OnlineLearner& learner, const FolConfig& config, Rng& rng) {
    detail::IdentityFeedback feedback;
    return detail::play_game(ds, learner, config, rng, feedback);
}

}  // namespace fol
