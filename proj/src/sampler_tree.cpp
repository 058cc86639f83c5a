#include "fol/sampler_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fol {

SamplerTree::SamplerTree(std::size_t m) : m_(m) {
    if (m == 0) throw std::invalid_argument("SamplerTree: m must be positive");
    while (leaves_ < m_) {
        leaves_ <<= 1;
        ++height_;
    }
    nodes_.assign(2 * leaves_, 0.0);
    std::fill_n(nodes_.begin() + static_cast<std::ptrdiff_t>(leaves_), m_, 1.0);
    rebuild_internal();
}

SamplerTree SamplerTree::from_weights(std::span<const double> weights) {
    SamplerTree tree(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
            throw std::invalid_argument("SamplerTree: weights must be finite and non-negative");
        }
        tree.nodes_[tree.leaves_ + i] = weights[i];
    }
    tree.rebuild_internal();
    if (!(tree.root() > 0.0)) throw std::invalid_argument("SamplerTree: all weights are zero");
    return tree;
}

void SamplerTree::rebuild_internal() {
    for (std::size_t v = leaves_ - 1; v >= 1; --v) nodes_[v] = nodes_[2 * v] + nodes_[2 * v + 1];
}

std::vector<double> SamplerTree::distribution() const {
    std::vector<double> q(m_);
    const double r = root();
    for (std::size_t i = 0; i < m_; ++i) q[i] = leaf(i) / r;
    return q;
}

SamplerTree::Draw SamplerTree::sample(double gamma, Rng& rng) const {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("SamplerTree: gamma must be in [0,1]");
    const double r = root();
    if (!(r > 0.0) || !std::isfinite(r)) throw std::runtime_error("SamplerTree: degenerate tree");

    std::size_t index;
    if (gamma > 0.0 && uniform01(rng) < gamma) {
        index = static_cast<std::size_t>(uniform_index(rng, m_));
        visits_ = 0;
    } else {
        std::size_t v = 1;
        visits_ = 1;
        double target = uniform01(rng) * r;
        while (v < leaves_) {
            const double left = nodes_[2 * v];
            const double right = nodes_[2 * v + 1];
            // Zero-valued children are never entered, whatever the rounding.
            if ((target < left && left > 0.0) || right <= 0.0) {
                v = 2 * v;
            } else {
                target = std::max(0.0, target - left);
                v = 2 * v + 1;
            }
            ++visits_;
        }
        index = v - leaves_;
    }
    const double p = gamma / static_cast<double>(m_) + (1.0 - gamma) * (leaf(index) / r);
    return {index, p};
}

void SamplerTree::update(std::size_t i, double f) {
    if (i >= m_) throw std::out_of_range("SamplerTree::update: index out of range");
    if (!(f > 0.0) || !std::isfinite(f)) {
        throw std::invalid_argument("SamplerTree::update: factor must be positive and finite");
    }
    std::size_t v = leaves_ + i;
    nodes_[v] *= f;
    visits_ = 1;
    // Each ancestor gains leaf*(f-1); recomputing it from the children gives the
    // same value and keeps node == left + right exact in floating point.
    while (v > 1) {
        v >>= 1;
        nodes_[v] = nodes_[2 * v] + nodes_[2 * v + 1];
        ++visits_;
    }
    const double r = root();
    if (r > kRootCeiling || r < kRootFloor) renormalize();
}

void SamplerTree::renormalize() {
    const double r = root();
    if (!(r > 0.0)) throw std::runtime_error("SamplerTree: degenerate tree");
    for (std::size_t i = 0; i < m_; ++i) nodes_[leaves_ + i] /= r;
    rebuild_internal();
}

double SamplerTree::max_sum_defect() const {
    const double scale = std::max(root(), 1e-300);
    double worst = 0.0;
    for (std::size_t v = 1; v < leaves_; ++v) {
        worst = std::max(worst, std::abs(nodes_[v] - (nodes_[2 * v] + nodes_[2 * v + 1])) / scale);
    }
    return worst;
}

}  // namespace fol
