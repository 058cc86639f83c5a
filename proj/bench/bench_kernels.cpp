// Serial reference vs OpenMP kernels. Run with --benchmark_filter to pick one.

#include <benchmark/benchmark.h>

#include <vector>

#include "fol/kernels.hpp"
#include "fol/robustness.hpp"
#include "test_support.hpp"

using namespace fol;

namespace {

struct Fixture {
    Dataset ds;
    std::vector<Hypothesis> members;

    Fixture(std::size_t m, std::size_t d, std::size_t k) {
        Rng rng(1);
        ds = testing::random_dataset(m, d, rng);
        for (std::size_t j = 0; j < k; ++j) members.push_back(testing::random_hypothesis(d, rng));
    }
};

const Fixture& fixture(std::size_t m) {
    static const Fixture small(2000, 20, 64), large(100000, 20, 64);
    return m <= 2000 ? small : large;
}

template <auto Kernel>
void BM_loss_vector(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    std::vector<double> out(f.ds.size());
    for (auto _ : state) {
        Kernel(LossKind::Hinge, f.members.front(), f.ds, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(f.ds.size()));
}

template <auto Kernel>
void BM_ensemble_loss_vector(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    std::vector<double> out(f.ds.size());
    for (auto _ : state) {
        Kernel(LossKind::Logistic, f.members, f.ds, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(f.ds.size() * f.members.size()));
}

template <auto Kernel>
void BM_vote_sums(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    std::vector<long> out(f.ds.size());
    for (auto _ : state) {
        Kernel(f.members, f.ds, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(f.ds.size() * f.members.size()));
}

template <auto Kernel>
void BM_bad_event(benchmark::State& state) {
    for (auto _ : state) {
        Rng rng(2);
        benchmark::DoNotOptimize(Kernel(100000, 5, 23026, 200, 2000, rng));
    }
}

}  // namespace

BENCHMARK(BM_loss_vector<serial::loss_vector>)->Arg(2000)->Arg(100000);
BENCHMARK(BM_loss_vector<parallel::loss_vector>)->Arg(2000)->Arg(100000);
BENCHMARK(BM_ensemble_loss_vector<serial::ensemble_loss_vector>)->Arg(2000)->Arg(100000);
BENCHMARK(BM_ensemble_loss_vector<parallel::ensemble_loss_vector>)->Arg(2000)->Arg(100000);
BENCHMARK(BM_vote_sums<serial::vote_sums>)->Arg(2000)->Arg(100000);
BENCHMARK(BM_vote_sums<parallel::vote_sums>)->Arg(2000)->Arg(100000);
BENCHMARK(BM_bad_event<serial::monte_carlo_bad_event>);
BENCHMARK(BM_bad_event<fol::monte_carlo_bad_event>);

BENCHMARK_MAIN();
