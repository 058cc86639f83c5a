#pragma once

// Per-example evaluation kernels. The serial versions are the reference; the
// parallel versions split the example range across OpenMP threads and must
// produce identical output element for element. Reductions over the returned
// vectors are done serially by callers so results do not depend on the
// thread count.

#include <cstddef>
#include <span>
#include <vector>

#include "fol/core_types.hpp"

namespace fol {

namespace serial {

void loss_vector(LossKind kind, const Hypothesis& h, const Dataset& ds, std::span<double> out);
void ensemble_loss_vector(LossKind kind, std::span<const Hypothesis> members, const Dataset& ds,
                          std::span<double> out);
// Sum over members of sign(<w_j, x_i>) (zero inner products contribute 0).
void vote_sums(std::span<const Hypothesis> members, const Dataset& ds, std::span<long> out);

}  // namespace serial

namespace parallel {

void loss_vector(LossKind kind, const Hypothesis& h, const Dataset& ds, std::span<double> out);
void ensemble_loss_vector(LossKind kind, std::span<const Hypothesis> members, const Dataset& ds,
                          std::span<double> out);
void vote_sums(std::span<const Hypothesis> members, const Dataset& ds, std::span<long> out);

int max_threads();

}  // namespace parallel

// Convenience wrappers over the parallel kernels.
std::vector<double> loss_vector(LossKind kind, const Hypothesis& h, const Dataset& ds);
std::vector<double> ensemble_loss_vector(LossKind kind, const EnsembleHypothesis& ens,
                                         const Dataset& ds);

}  // namespace fol
