#include <benchmark/benchmark.h>

#include "tmoctl/balanced_truncation.hpp"
#include "tmoctl/controllers.hpp"
#include "tmoctl/frequency.hpp"
#include "tmoctl/hinf_norm.hpp"
#include "tmoctl/lyapunov.hpp"
#include "tmoctl/margins.hpp"
#include "tmoctl/plant.hpp"
#include "tmoctl/simulate.hpp"

using namespace tmoctl;

static void BM_FreqResponse(benchmark::State& state) {
    const PlantParams p = PlantParams::nominal();
    const RationalTF l = canonical_cfo() * plant_tf(p, 1.0);
    const auto grid = log_grid_n(1e-2, 1e3, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(freq_response(l, grid));
    }
}
BENCHMARK(BM_FreqResponse)->Arg(400)->Arg(2000);

static void BM_StabilityMargins(benchmark::State& state) {
    const PlantParams p = PlantParams::nominal();
    const RationalTF l = canonical_cfo() * plant_tf(p, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(stability_margins(l));
    }
}
BENCHMARK(BM_StabilityMargins);

static void BM_HinfNormHamiltonian(benchmark::State& state) {
    const RationalTF g{Polynomial{25.0}, Polynomial{25.0, 5.0, 1.0}};
    const StateSpaceModel sys = tf_to_ss(g * g * g);  // order 6
    for (auto _ : state) {
        benchmark::DoNotOptimize(hinf_norm(sys));
    }
}
BENCHMARK(BM_HinfNormHamiltonian);

static void BM_LyapunovSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Eigen::MatrixXd A = -Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i + 1 < n; ++i) A(i, i + 1) = 0.5;
    const Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(n, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lyap_solve(A, Q));
    }
}
BENCHMARK(BM_LyapunovSolve)->Arg(8)->Arg(16)->Arg(32);

static void BM_SensitivityPeak(benchmark::State& state) {
    const PlantParams p = PlantParams::nominal();
    const SensitivityYd s = sensitivity_yd(canonical_cfo(), p, p.tau_n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(s.peak());
    }
}
BENCHMARK(BM_SensitivityPeak);

static void BM_SimulateTrackingSecond(benchmark::State& state) {
    const PlantParams p = PlantParams::nominal();
    const ControllerSet set = make_controller_set();
    Scenario sc;
    sc.experiment = ExperimentKind::tracking;
    sc.ff_shift = FfShift::plus_tau_n;
    sc.horizon = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(sc, p, set));
    }
}
BENCHMARK(BM_SimulateTrackingSecond);

BENCHMARK_MAIN();
