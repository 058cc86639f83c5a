#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fol/rng.hpp"

namespace fol {

// Full binary tree over m weighted leaves, stored as an implicit array
// (node 1 is the root, node v has children 2v and 2v+1, leaves occupy
// [L, 2L) with L = 2^ceil(log2 m)). Every internal node holds the sum of
// its children, so sampling and leaf updates touch one root-to-leaf path.
//
// q_i = leaf_i / root is the distribution the tree represents. Leaves past
// m are padding and stay at zero.
class SamplerTree {
public:
    struct Draw {
        std::size_t index;   // in [0, m)
        double probability;  // gamma/m + (1-gamma) q_index
    };

    // All m live leaves set to 1.
    explicit SamplerTree(std::size_t m);

    // Live leaves set to the given non-negative weights (not all zero).
    static SamplerTree from_weights(std::span<const double> weights);

    std::size_t size() const { return m_; }
    std::size_t height() const { return height_; }
    std::size_t leaf_count() const { return leaves_; }

    double root() const { return nodes_[1]; }
    double leaf(std::size_t i) const { return nodes_[leaves_ + i]; }
    double q(std::size_t i) const { return leaf(i) / root(); }
    std::vector<double> distribution() const;
    std::span<const double> nodes() const { return nodes_; }

    // With probability gamma draws uniformly from [m]; otherwise descends from
    // the root choosing children proportionally to their values.
    Draw sample(double gamma, Rng& rng) const;

    // Multiplies leaf i by f > 0 and refreshes the ancestors on its path.
    // Rescales the whole tree when the root leaves [1e-100, 1e100].
    void update(std::size_t i, double f);

    // Divides every leaf by the root (q is unchanged) and rebuilds the sums.
    void renormalize();

    // Nodes touched by the most recent sample() or update() path walk.
    std::size_t last_visits() const { return visits_; }

    // Largest |node - (left + right)| / max(root, tiny) over internal nodes.
    double max_sum_defect() const;

    static constexpr double kRootCeiling = 1e100;
    static constexpr double kRootFloor = 1e-100;

private:
    SamplerTree() = default;
    void rebuild_internal();

    std::size_t m_ = 0;
    std::size_t height_ = 0;
    std::size_t leaves_ = 1;
    std::vector<double> nodes_;
    mutable std::size_t visits_ = 0;
};

}  // namespace fol
