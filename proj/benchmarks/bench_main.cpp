#include <benchmark/benchmark.h>

#include <cmath>

#include "gflab/dynamics.hpp"
#include "gflab/eps_core.hpp"
#include "gflab/genfunc.hpp"
#include "gflab/profiles.hpp"
#include "gflab/quadrature.hpp"

namespace {

using namespace gflab;

void BM_MomentTanh(benchmark::State& state) {
    const HeavisideProfile k = preset_heaviside("tanh");
    const int n = int(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(moment(k, n));
    }
}
BENCHMARK(BM_MomentTanh)->Arg(2)->Arg(8);

void BM_PairHeaviside(benchmark::State& state) {
    const GenFunction h =
        GenFunction::power(GenFunction::heaviside_at(0.0, preset_heaviside("tanh")), 2);
    TestFunction phi;
    phi.center = 0.5;
    phi.width = 1.0;
    const double eps = std::pow(2.0, -double(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pair(h, phi, eps));
    }
}
BENCHMARK(BM_PairHeaviside)->Arg(4)->Arg(10);

void BM_ClassifyNumeric(benchmark::State& state) {
    const auto f = EpsRepresentative::from_function(
        [](double e) { return std::sqrt(e) * std::sin(1.0 / e) + e; });
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify(f));
    }
}
BENCHMARK(BM_ClassifyNumeric);

void BM_GodunovScalarStep(benchmark::State& state) {
    const int cells = int(state.range(0));
    std::vector<double> init(std::size_t(cells), 0.0);
    for (int i = 0; i < cells; ++i) init[std::size_t(i)] = i < cells / 2 ? 1.0 : 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(godunov_scalar(init, -1.0, 2.0, 0.9, 0.05));
    }
}
BENCHMARK(BM_GodunovScalarStep)->Arg(200)->Arg(800);

void BM_PreyPredator(benchmark::State& state) {
    PreyPredatorProblem prob;
    prob.eps = 0.2;
    prob.T = 4.0;
    prob.psi1 = preset_dirac("parabolic");
    prob.psi2 = preset_dirac("parabolic");
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_prey_predator(prob));
    }
}
BENCHMARK(BM_PreyPredator);

}  // namespace

BENCHMARK_MAIN();
