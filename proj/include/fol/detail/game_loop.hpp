#pragma once

// The round loop shared by the plain driver and the slack variant. The
// feedback policy maps the learner's loss to what the sampling player sees
// and gets a hook after every round.

#include <algorithm>
#include <chrono>
#include <cstddef>

#include "fol/fol_driver.hpp"
#include "fol/kernels.hpp"

namespace fol::detail {

struct IdentityFeedback {
    double feed(std::size_t, double loss) const { return loss; }
    void after(std::size_t, double) const {}
};

Checkpoint make_checkpoint(const Dataset& ds, LossKind kind, std::size_t step,
                           const Hypothesis& current, const std::vector<Hypothesis>& members);

void finish_metrics(const Dataset& ds, LossKind kind, const Hypothesis& last, std::size_t rounds,
                    FolResult& result);

template <class Feedback>
FolResult play_game(const Dataset& ds, OnlineLearner& learner, const FolConfig& config, Rng& rng,
                    Feedback& feedback) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t m = ds.size();
    config.validate(m);
    check_dimension(ds.dimension(), learner.dimension(), "fol::run");

    PPlayer player(m, PPlayer::Options{config.resolved_eta(m), config.gamma, config.theorem_mode,
                                       config.audit});
    FolResult result;
    result.ensemble.mode = config.output_mode;
    auto& metrics = result.metrics;

    const bool presampled = config.snapshot_policy == SnapshotPolicy::PreSampled;
    std::vector<std::size_t> planned;
    if (presampled) {
        planned.resize(config.k);
        for (auto& t : planned) t = 1 + static_cast<std::size_t>(uniform_index(rng, config.T));
        std::sort(planned.begin(), planned.end());
    }
    std::vector<Hypothesis> members;
    members.reserve(presampled ? config.k : config.T);
    std::size_t next_planned = 0;
    if (config.log_rounds) metrics.rounds.reserve(config.T);

    const LossKind kind = learner.loss_kind();
    double cumulative = 0.0;
    for (std::size_t t = 1; t <= config.T; ++t) {
        const auto draw = player.pick(rng);
        if (presampled) {
            while (next_planned < planned.size() && planned[next_planned] == t) {
                members.push_back(learner.snapshot());
                ++next_planned;
            }
        } else {
            members.push_back(learner.snapshot());
        }
        const double loss = learner.step(ds[draw.index]);
        const double fed = feedback.feed(draw.index, loss);
        player.observe(draw.index, draw.probability, fed);
        feedback.after(draw.index, loss);
        cumulative += loss;

        if (config.log_rounds) metrics.rounds.push_back({t, draw.index, draw.probability, loss});
        if (config.eval_every != 0 && t % config.eval_every == 0) {
            static const std::vector<Hypothesis> none;
            metrics.checkpoints.push_back(
                make_checkpoint(ds, kind, t, learner.snapshot(), presampled ? members : none));
        }
    }

    if (presampled) {
        result.snapshot_rounds = std::move(planned);
        result.ensemble.members = std::move(members);
    } else {
        result.snapshot_rounds.resize(config.k);
        result.ensemble.members.reserve(config.k);
        for (auto& t : result.snapshot_rounds) {
            t = 1 + static_cast<std::size_t>(uniform_index(rng, config.T));
            result.ensemble.members.push_back(members[t - 1]);
        }
    }
    metrics.final.cumulative_loss = cumulative;
    if (config.audit) metrics.regret = player.audit_regret();
    finish_metrics(ds, kind, learner.snapshot(), config.T, result);
    metrics.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace fol::detail
