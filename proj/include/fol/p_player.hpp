#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fol/rng.hpp"
#include "fol/sampler_tree.hpp"

namespace fol {

// One round as seen by the sampling player.
struct RoundRecord {
    std::size_t t;       // 1-based round number
    std::size_t index;   // i_t, 0-based
    double probability;  // p_{t, i_t}
    double loss;         // loss of w_t on example i_t, in [0,1]
};

// Result of checking the exponentiated-gradient regret inequality
//   sum_t <q_t - u, z_t>  <=  log(m)/eta + eta sum_t sum_i q_{t,i} z_{t,i}^2
// at every corner u = e_j, with z_t = -(loss_t / p_t) e_{i_t}.
struct RegretReport {
    std::size_t rounds = 0;
    double bound = 0.0;                // right-hand side
    std::vector<double> corner_lhs;    // left-hand side for u = e_j
    double max_violation = 0.0;        // max_j (lhs_j - bound); <= 0 when the inequality holds
    std::size_t worst_corner = 0;

    bool holds(double slack = 1e-9) const { return max_violation <= slack; }
};

// Exploration-mixed exponentiated-gradient sampler over the m training
// examples. p = gamma * uniform + (1 - gamma) * q, and an observed loss on
// i_t multiplies leaf i_t by exp(eta * loss / p_{i_t}), so harder examples
// gain mass.
class PPlayer {
public:
    struct Options {
        double eta = 0.0;     // 0 selects the default 1/(2m)
        double gamma = 0.5;
        bool theorem_mode = false;  // asserts gamma = 1/2, eta = 1/(2m)
        bool audit = false;         // keeps q_t snapshots; m <= kMaxAuditSize
    };

    static constexpr std::size_t kMaxAuditSize = 256;

    explicit PPlayer(std::size_t m) : PPlayer(m, Options{}) {}
    PPlayer(std::size_t m, Options options);

    std::size_t size() const { return tree_.size(); }
    double eta() const { return eta_; }
    double gamma() const { return gamma_; }
    const SamplerTree& tree() const { return tree_; }

    SamplerTree::Draw pick(Rng& rng) const { return tree_.sample(gamma_, rng); }

    // Throws when loss is outside [0,1] or p_it is below the exploration floor.
    void observe(std::size_t index, double p_it, double loss);

    // Audit data; empty unless constructed with audit = true.
    bool auditing() const { return audit_; }
    const std::vector<RoundRecord>& round_log() const { return log_; }
    const std::vector<std::vector<double>>& q_history() const { return q_history_; }

    RegretReport audit_regret() const;

private:
    SamplerTree tree_;
    double eta_;
    double gamma_;
    bool audit_;
    std::vector<RoundRecord> log_;
    std::vector<std::vector<double>> q_history_;
};

// Evaluates the regret inequality for a logged run. q_history[t] is the
// sampling distribution q in force during round t (before its update).
RegretReport audit_regret(std::span<const RoundRecord> rounds,
                          std::span<const std::vector<double>> q_history, std::size_t m,
                          double eta);

}  // namespace fol
