#include "fol/p_player.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fol {

PPlayer::PPlayer(std::size_t m, Options options)
    : tree_(m),
      eta_(options.eta == 0.0 ? 1.0 / (2.0 * static_cast<double>(m)) : options.eta),
      gamma_(options.gamma),
      audit_(options.audit) {
    if (!(eta_ > 0.0) || !std::isfinite(eta_)) throw std::invalid_argument("PPlayer: eta must be positive");
    if (!(gamma_ > 0.0 && gamma_ <= 1.0)) throw std::invalid_argument("PPlayer: gamma must be in (0,1]");
    if (options.theorem_mode) {
        const double expected_eta = 1.0 / (2.0 * static_cast<double>(m));
        if (gamma_ != 0.5 || std::abs(eta_ - expected_eta) > 1e-15 * expected_eta) {
            throw std::invalid_argument("PPlayer: theorem mode requires gamma = 1/2 and eta = 1/(2m)");
        }
    }
    if (audit_ && m > kMaxAuditSize) {
        throw std::invalid_argument("PPlayer: audit mode is limited to m <= " +
                                    std::to_string(kMaxAuditSize));
    }
}

void PPlayer::observe(std::size_t index, double p_it, double loss) {
    if (!(loss >= 0.0 && loss <= 1.0)) {
        throw std::invalid_argument("PPlayer::observe: loss must be in [0,1]");
    }
    const double floor = gamma_ / static_cast<double>(size());
    if (!(p_it >= floor * (1.0 - 1e-12))) {
        throw std::invalid_argument("PPlayer::observe: probability below the exploration floor");
    }
    if (audit_) {
        q_history_.push_back(tree_.distribution());
        log_.push_back({log_.size() + 1, index, p_it, loss});
    }
    if (loss > 0.0) tree_.update(index, std::exp(eta_ * loss / p_it));
}

RegretReport PPlayer::audit_regret() const {
    if (!audit_) throw std::logic_error("PPlayer::audit_regret: audit mode not enabled");
    return fol::audit_regret(log_, q_history_, size(), eta_);
}

namespace {

void check_size(std::size_t got, std::size_t m) {
    if (got != m) throw std::invalid_argument("audit_regret: q snapshot has the wrong length");
}

}  // namespace

RegretReport audit_regret(std::span<const RoundRecord> rounds,
                          std::span<const std::vector<double>> q_history, std::size_t m,
                          double eta) {
    if (rounds.size() != q_history.size()) {
        throw std::invalid_argument("audit_regret: one q snapshot per round is required");
    }
    if (!(eta > 0.0)) throw std::invalid_argument("audit_regret: eta must be positive");
    if (m == 0) throw std::invalid_argument("audit_regret: m must be positive");
    RegretReport report;
    report.rounds = rounds.size();

    // Only coordinate i_t of z_t is non-zero, so
    //   <q_t - e_j, z_t> = (q_{t,i_t} - [j == i_t]) * z
    //   sum_i q_{t,i} z_{t,i}^2 = q_{t,i_t} * z^2
    report.corner_lhs.assign(m, 0.0);
    double common = 0.0;  // sum_t q_{t,i_t} z_t
    double quadratic = 0.0;
    for (std::size_t t = 0; t < rounds.size(); ++t) {
        const auto& r = rounds[t];
        const double z = -r.loss / r.probability;
        check_size(q_history[t].size(), m);
        const double q_it = q_history[t].at(r.index);
        common += q_it * z;
        quadratic += q_it * z * z;
        report.corner_lhs[r.index] -= z;
    }
    report.bound = std::log(static_cast<double>(m)) / eta + eta * quadratic;
    report.max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
        report.corner_lhs[j] += common;
        const double v = report.corner_lhs[j] - report.bound;
        if (v > report.max_violation) {
            report.max_violation = v;
            report.worst_corner = j;
        }
    }
    return report;
}

}  // namespace fol
