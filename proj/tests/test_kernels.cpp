#include <doctest.h>

#include <omp.h>

#include <vector>

#include "fol/kernels.hpp"
#include "test_support.hpp"

using namespace fol;

TEST_CASE("parallel kernels equal the serial reference element for element") {
    Rng rng(5);
    for (int threads : {1, 2, 3, 8}) {
        omp_set_num_threads(threads);
        for (std::size_t m : {1u, 7u, 64u, 1001u}) {
            const auto ds = testing::random_dataset(m, 6, rng);
            std::vector<Hypothesis> members;
            for (int j = 0; j < 5; ++j) members.push_back(testing::random_hypothesis(6, rng));
            for (auto kind : {LossKind::ZeroOne, LossKind::Hinge, LossKind::Logistic}) {
                std::vector<double> a(m), b(m);
                serial::loss_vector(kind, members[0], ds, a);
                parallel::loss_vector(kind, members[0], ds, b);
                CHECK(a == b);
                serial::ensemble_loss_vector(kind, members, ds, a);
                parallel::ensemble_loss_vector(kind, members, ds, b);
                CHECK(a == b);
            }
            std::vector<long> va(m), vb(m);
            serial::vote_sums(members, ds, va);
            parallel::vote_sums(members, ds, vb);
            CHECK(va == vb);
        }
    }
    omp_set_num_threads(parallel::max_threads());
}

TEST_CASE("loss_vector agrees with evaluate_loss") {
    Rng rng(9);
    const auto ds = testing::random_dataset(100, 3, rng);
    const auto h = testing::random_hypothesis(3, rng);
    const auto v = loss_vector(LossKind::Hinge, h, ds);
    for (std::size_t i = 0; i < ds.size(); ++i) CHECK(v[i] == evaluate_loss(LossKind::Hinge, h, ds[i]));
}
