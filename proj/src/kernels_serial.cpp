#include "fol/kernels.hpp"

namespace fol::serial {

void loss_vector(LossKind kind, const Hypothesis& h, const Dataset& ds, std::span<double> out) {
    check_dimension(h.dimension(), ds.dimension(), "loss_vector");
    check_dimension(ds.size(), out.size(), "loss_vector output");
    for (std::size_t i = 0; i < ds.size(); ++i) {
        out[i] = evaluate_loss_at_margin(kind, ds.label(i) * dot(h.weights, ds.features(i)));
    }
}

void ensemble_loss_vector(LossKind kind, std::span<const Hypothesis> members, const Dataset& ds,
                          std::span<double> out) {
    check_dimension(ds.size(), out.size(), "ensemble_loss_vector output");
    for (const auto& h : members) check_dimension(h.dimension(), ds.dimension(), "ensemble_loss_vector");
    const double k = static_cast<double>(members.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        double s = 0.0;
        for (const auto& h : members) {
            s += evaluate_loss_at_margin(kind, ds.label(i) * dot(h.weights, ds.features(i)));
        }
        out[i] = s / k;
    }
}

void vote_sums(std::span<const Hypothesis> members, const Dataset& ds, std::span<long> out) {
    check_dimension(ds.size(), out.size(), "vote_sums output");
    for (const auto& h : members) check_dimension(h.dimension(), ds.dimension(), "vote_sums");
    for (std::size_t i = 0; i < ds.size(); ++i) {
        long v = 0;
        for (const auto& h : members) {
            const double s = dot(h.weights, ds.features(i));
            v += (s > 0.0) - (s < 0.0);
        }
        out[i] = v;
    }
}

}  // namespace fol::serial
