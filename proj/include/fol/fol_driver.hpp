#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fol/core_types.hpp"
#include "fol/p_player.hpp"
#include "fol/rng.hpp"
#include "fol/w_player.hpp"

namespace fol {

enum class SnapshotPolicy {
    PreSampled,  // draw t_1..t_k from [T] before the run, keep only those weights
    StoreAll,    // keep every w_t, draw t_1..t_k afterwards
};

std::string_view to_string(SnapshotPolicy policy);
SnapshotPolicy parse_snapshot_policy(std::string_view name);

struct FolConfig {
    std::size_t T = 1;
    std::size_t k = 1;
    double eta = 0.0;  // 0 means 1/(2m)
    double gamma = 0.5;
    std::uint64_t seed = 0;
    SnapshotPolicy snapshot_policy = SnapshotPolicy::PreSampled;
    EnsembleMode output_mode = EnsembleMode::Majority;
    bool theorem_mode = false;
    std::size_t eval_every = 0;  // checkpoint period in rounds; 0 = final only
    bool log_rounds = false;
    bool audit = false;  // record q_t for the regret audit (m <= 256)

    double resolved_eta(std::size_t m) const {
        return eta == 0.0 ? 1.0 / (2.0 * static_cast<double>(m)) : eta;
    }
    // Throws std::invalid_argument on an inconsistent configuration.
    void validate(std::size_t m) const;
};

struct EnsembleStats {
    std::size_t size = 0;
    double lmax = 0.0;
    double lavg = 0.0;
    std::size_t mistakes = 0;
};

struct Checkpoint {
    std::size_t step = 0;
    double epochs = 0.0;
    double current_lmax = 0.0;
    double current_lavg = 0.0;
    std::size_t current_mistakes = 0;
    std::optional<EnsembleStats> ensemble;  // running ensemble, when one exists
};

struct FinalMetrics {
    std::size_t rounds = 0;
    double epochs = 0.0;
    double ensemble_lmax = 0.0;  // max_i (1/k) sum_j loss(w_{t_j}, x_i, y_i)
    double ensemble_lavg = 0.0;
    std::size_t ensemble_mistakes = 0;
    double last_lmax = 0.0;
    double last_lavg = 0.0;
    std::size_t last_mistakes = 0;
    double cumulative_loss = 0.0;  // realized sum_t loss(w_t, x_{i_t}, y_{i_t})
    std::optional<std::size_t> rounds_to_consistency;
    std::optional<std::size_t> last_iterate_consistent_at;
};

struct RunMetrics {
    std::vector<RoundRecord> rounds;
    std::vector<Checkpoint> checkpoints;
    FinalMetrics final;
    std::optional<RegretReport> regret;
    double wall_seconds = 0.0;  // informational; excluded from comparisons and files
};

// Equality over everything except wall-clock time.
bool same_metrics(const RunMetrics& a, const RunMetrics& b);

struct FolResult {
    EnsembleHypothesis ensemble;
    std::optional<Hypothesis> averaged;  // Average mode: (1/k) sum_j w_{t_j}
    std::vector<std::size_t> snapshot_rounds;  // t_1..t_k, 1-based
    RunMetrics metrics;
};

struct TheoremConstants {
    double c_T = 6.0 * 64.0;
    double c_k = 16.0;
};

struct TheoremParams {
    std::size_t T;
    std::size_t k;
    double eta;
};

// T = max(ceil(8C/eps), ceil(c_T m ln(m/delta) / eps^2)),
// k = ceil(c_k ln(m/delta) / eps), eta = 1/(2m).
// With the default c_T the second term is 6 m ln(m/delta) / (eps/8)^2.
TheoremParams theorem1_params(std::size_t m, double C_estimate, double epsilon, double delta,
                              TheoremConstants constants = {});

// Perceptron mistake bound ||w*||^2 max_i ||x_i||^2 for margin-1 separable data,
// expressed through a geometric margin and a radius.
double perceptron_mistake_bound(double radius, double geometric_margin);

FolResult run(const Dataset& ds, OnlineLearner& learner, const FolConfig& config, Rng& rng);

// Label for classification ensembles, real value for Average mode.
double predict(const EnsembleHypothesis& ens, std::span<const double> x);

}  // namespace fol
