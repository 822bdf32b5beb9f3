#include <benchmark/benchmark.h>

#include "hpr/collocation.hpp"
#include "hpr/integrators.hpp"
#include "hpr/runner.hpp"

using namespace hpr;

static void Rk4StepLorenz(benchmark::State& state) {
  const auto sys = make_benchmark("lorenz");
  Vector x{{20.0, 5.0, -5.0}};
  for (auto _ : state) {
    x = rk4_step(sys, x, 1e-4);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(Rk4StepLorenz);

static void ImplicitEulerStepRober(benchmark::State& state) {
  const auto sys = make_benchmark("rober");
  const Vector x{{0.9, 3e-5, 0.1}};
  for (auto _ : state) {
    auto y = implicit_euler_step(sys, x, 1e-4);
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(ImplicitEulerStepRober);

static void ImplicitEulerStepBurgers(benchmark::State& state) {
  const auto sys = make_benchmark("burgers");
  const Vector u = burgers_initial_condition("sine", 51);
  for (auto _ : state) {
    auto y = implicit_euler_step(sys, u, 1.0 / 500.0);
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(ImplicitEulerStepBurgers);

static void ResidualJacobian(benchmark::State& state) {
  const auto sys = make_benchmark(state.range(0) == 0 ? "sir" : "burgers");
  const int d = sys.dim();
  const auto basis = sample_basis(BasisSpec{}, 0.1, 1);
  const Vector x0 = Vector::Constant(d, 0.3);
  const WeightMatrix theta(Matrix::Constant(5, d, 0.01));
  for (auto _ : state) {
    auto j = residual_jacobian(basis, theta, x0, sys);
    benchmark::DoNotOptimize(j.data());
  }
}
BENCHMARK(ResidualJacobian)->Arg(0)->Arg(1);

static void BurgersJacobianApply(benchmark::State& state) {
  const auto sys = make_benchmark("burgers");
  const auto basis = sample_basis(BasisSpec{}, 0.02, 1);
  const Vector x0 = burgers_initial_condition("sine", 51);
  const WeightMatrix theta(Matrix::Constant(5, 51, 0.01));
  const Vector v = Vector::Ones(5 * 51);
  for (auto _ : state) {
    auto y = burgers_jacobian_apply(basis, theta, x0, *sys.burgers(), v);
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BurgersJacobianApply);

static void TrainCoarse(benchmark::State& state) {
  const auto sys = make_benchmark(state.range(0) == 0 ? "sir" : "rober");
  const auto basis = sample_basis(BasisSpec{}, state.range(0) == 0 ? 1.0 : 0.01, 1);
  const Vector x0 = state.range(0) == 0 ? Vector{{0.3, 0.5, 0.2}} : Vector{{1.0, 0.0, 0.0}};
  for (auto _ : state) {
    auto r = train_coarse(basis, x0, sys, WeightMatrix(5, 3));
    benchmark::DoNotOptimize(r.theta.values().data());
  }
}
BENCHMARK(TrainCoarse)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void TrainCoarseBurgers(benchmark::State& state) {
  const auto sys = make_benchmark("burgers");
  const auto basis = sample_basis(BasisSpec{}, 0.02, 1);
  const Vector u = burgers_initial_condition("sine", 51);
  for (auto _ : state) {
    auto r = train_coarse(basis, u, sys, WeightMatrix(5, 51));
    benchmark::DoNotOptimize(r.theta.values().data());
  }
}
BENCHMARK(TrainCoarseBurgers)->Unit(benchmark::kMillisecond)->Iterations(3);

static void PararealSir(benchmark::State& state) {
  const auto sys = make_benchmark("sir");
  const auto mesh = TimeMesh::uniform(0, 10, 10);
  for (auto _ : state) {
    auto r = parareal_solve(sys, Vector{{0.3, 0.5, 0.2}}, mesh, PararealConfig{});
    benchmark::DoNotOptimize(r.node_states.data());
  }
}
BENCHMARK(PararealSir)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
