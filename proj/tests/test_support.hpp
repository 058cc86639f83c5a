#pragma once

// Helpers shared by the unit and acceptance tests. Nothing here calls into
// the code under test except to build inputs.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "fol/core_types.hpp"
#include "fol/rng.hpp"

namespace fol::testing {

inline Dataset random_dataset(std::size_t m, std::size_t d, Rng& rng, double scale = 2.0) {
    std::vector<double> x(m * d);
    std::vector<int> y(m);
    for (auto& v : x) v = scale * (2.0 * uniform01(rng) - 1.0);
    for (auto& l : y) l = uniform01(rng) < 0.5 ? -1 : 1;
    return Dataset(d, std::move(x), std::move(y));
}

inline Hypothesis random_hypothesis(std::size_t d, Rng& rng, double scale = 2.0) {
    Hypothesis h{std::vector<double>(d)};
    for (auto& w : h.weights) w = scale * (2.0 * uniform01(rng) - 1.0);
    return h;
}

inline std::vector<double> random_simplex(std::size_t m, Rng& rng) {
    std::vector<double> q(m);
    double s = 0.0;
    for (auto& v : q) {
        v = -std::log(1.0 - uniform01(rng));
        s += v;
    }
    for (auto& v : q) v /= s;
    return q;
}

// Upper 0.001 quantile of chi-square with df degrees of freedom
// (Wilson-Hilferty approximation).
inline double chi_square_critical_001(double df) {
    const double z = 3.090232306167813;
    const double a = 2.0 / (9.0 * df);
    return df * std::pow(1.0 - a + z * std::sqrt(a), 3.0);
}

inline double total_variation(std::span<const double> p, std::span<const double> q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

// Expected total variation of an N-draw empirical distribution from p, using
// the half-normal mean of each binomial cell.
inline double expected_empirical_tv(std::span<const double> p, double draws) {
    double s = 0.0;
    for (double v : p) s += std::sqrt(2.0 * v * (1.0 - v) / (M_PI * draws));
    return 0.5 * s;
}

}  // namespace fol::testing
