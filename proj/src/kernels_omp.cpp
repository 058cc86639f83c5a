#include "fol/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fol {

namespace parallel {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void loss_vector(LossKind kind, const Hypothesis& h, const Dataset& ds, std::span<double> out) {
    check_dimension(h.dimension(), ds.dimension(), "loss_vector");
    check_dimension(ds.size(), out.size(), "loss_vector output");
    const auto m = static_cast<long>(ds.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < m; ++i) {
        const auto u = static_cast<std::size_t>(i);
        out[u] = evaluate_loss_at_margin(kind, ds.label(u) * dot(h.weights, ds.features(u)));
    }
}

void ensemble_loss_vector(LossKind kind, std::span<const Hypothesis> members, const Dataset& ds,
                          std::span<double> out) {
    check_dimension(ds.size(), out.size(), "ensemble_loss_vector output");
    for (const auto& h : members) check_dimension(h.dimension(), ds.dimension(), "ensemble_loss_vector");
    const double k = static_cast<double>(members.size());
    const auto m = static_cast<long>(ds.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < m; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const auto x = ds.features(u);
        const int y = ds.label(u);
        double s = 0.0;
        for (const auto& h : members) s += evaluate_loss_at_margin(kind, y * dot(h.weights, x));
        out[u] = s / k;
    }
}

void vote_sums(std::span<const Hypothesis> members, const Dataset& ds, std::span<long> out) {
    check_dimension(ds.size(), out.size(), "vote_sums output");
    for (const auto& h : members) check_dimension(h.dimension(), ds.dimension(), "vote_sums");
    const auto m = static_cast<long>(ds.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < m; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const auto x = ds.features(u);
        long v = 0;
        for (const auto& h : members) {
            const double s = dot(h.weights, x);
            v += (s > 0.0) - (s < 0.0);
        }
        out[u] = v;
    }
}

}  // namespace parallel

std::vector<double> loss_vector(LossKind kind, const Hypothesis& h, const Dataset& ds) {
    std::vector<double> out(ds.size());
    parallel::loss_vector(kind, h, ds, out);
    return out;
}

std::vector<double> ensemble_loss_vector(LossKind kind, const EnsembleHypothesis& ens,
                                         const Dataset& ds) {
    if (ens.members.empty()) throw std::invalid_argument("ensemble is empty");
    std::vector<double> out(ds.size());
    parallel::ensemble_loss_vector(kind, ens.members, ds, out);
    return out;
}

}  // namespace fol
