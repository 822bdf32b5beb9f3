#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hpr/ode_system.hpp"
#include "support.hpp"

using namespace hpr;

TEST(Benchmarks, SirFieldAtPaperState) {
  const auto sys = make_benchmark("sir");
  const Vector f = sys.field(Vector{{0.3, 0.5, 0.2}});
  EXPECT_NEAR(f[0], -0.015, 1e-15);
  EXPECT_NEAR(f[1], -0.035, 1e-15);
  EXPECT_NEAR(f[2], 0.05, 1e-15);
}

TEST(Benchmarks, SirJacobianEntry) {
  const auto sys = make_benchmark("sir");
  const Matrix j = eval_jacobian(sys, Vector{{0.3, 0.5, 0.2}});
  EXPECT_DOUBLE_EQ(j(0, 0), -0.05);
}

TEST(Benchmarks, LorenzOriginIsEquilibrium) {
  const auto sys = make_benchmark("lorenz");
  EXPECT_EQ(sys.field(Vector::Zero(3)), Vector::Zero(3));
}

TEST(Benchmarks, DefaultParameters) {
  EXPECT_EQ(benchmark_defaults("rober").at("k2"), 3e7);
  EXPECT_EQ(benchmark_defaults("lorenz").at("b"), 8.0 / 3.0);
  EXPECT_EQ(benchmark_defaults("arenstorf").at("a"), 0.12277471);
  EXPECT_EQ(benchmark_defaults("brusselator").at("B"), 3.0);
  EXPECT_EQ(make_benchmark("burgers").dim(), 51);
}

TEST(Benchmarks, UnknownNameAndBadOverride) {
  EXPECT_THROW((void)make_benchmark("vanderpol"), InvalidArgument);
  EXPECT_THROW((void)make_benchmark("sir", {{"delta", 1.0}}), InvalidArgument);
  EXPECT_THROW((void)make_benchmark("sir", {{"beta", NAN}}), InvalidArgument);
}

TEST(Benchmarks, OverrideChangesField) {
  const auto sys = make_benchmark("sir", {{"beta", 0.2}});
  EXPECT_NEAR(sys.field(Vector{{0.3, 0.5, 0.2}})[0], -0.03, 1e-15);
}

TEST(Benchmarks, ConservativeFieldsSumToZero) {
  std::mt19937_64 rng(7);
  for (const char* id : {"sir", "rober"}) {
    const auto sys = make_benchmark(id);
    for (int k = 0; k < 20; ++k) {
      const Vector f = sys.field(test::probe_state(id, 3, rng));
      EXPECT_NEAR(f.sum(), 0.0, 1e-9 * (1.0 + f.cwiseAbs().maxCoeff())) << id;
    }
  }
}

TEST(Benchmarks, AnalyticJacobianMatchesFiniteDifferences) {
  std::mt19937_64 rng(11);
  for (const auto& id : benchmark_ids()) {
    const auto sys = make_benchmark(id);
    for (int k = 0; k < 20; ++k) {
      const Vector x = test::probe_state(id, sys.dim(), rng);
      const Matrix fd = test::fd_jacobian([&](const Vector& z) { return sys.field(z); }, x);
      EXPECT_LE(test::rel_error(eval_jacobian(sys, x), fd), 1e-6) << id;
    }
  }
}

TEST(Benchmarks, LinearSystemJacobianIsConstant) {
  Matrix a(2, 2);
  a << 1, 2, -3, 4;
  const auto sys = make_linear_system(a);
  EXPECT_EQ(eval_jacobian(sys, Vector{{5.0, -1.0}}), a);
  EXPECT_EQ(eval_jacobian(sys, Vector{{0.0, 0.0}}), a);
}

TEST(Benchmarks, InputValidation) {
  const auto sys = make_benchmark("lorenz");
  EXPECT_THROW((void)sys.field(Vector::Zero(2)), InvalidArgument);
  EXPECT_THROW((void)eval_jacobian(sys, Vector{{NAN, 0.0, 0.0}}), NumericalFailure);
}

TEST(Burgers, ZeroStateHasZeroField) {
  const auto sys = burgers_semidiscretize(51, 1.0 / 50.0);
  EXPECT_EQ(sys.field(Vector::Zero(51)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Burgers, HandStencilInviscid) {
  const auto sys = burgers_semidiscretize(5, 0.0);
  const Vector f = sys.field(Vector{{0.0, 1.0, 2.0, 1.0, 0.0}});
  EXPECT_DOUBLE_EQ(f[2], 0.0);
  // -u_1 (u_2 - u_0) / (2 dx) with dx = 0.25
  EXPECT_DOUBLE_EQ(f[1], -4.0);
  EXPECT_DOUBLE_EQ(f[0], 0.0);
  EXPECT_DOUBLE_EQ(f[4], 0.0);
}

TEST(Burgers, StencilRows) {
  const auto sys = make_benchmark("burgers");
  const auto* disc = sys.burgers();
  ASSERT_NE(disc, nullptr);
  std::mt19937_64 rng(3);
  const Vector u = test::uniform_vector(rng, 51, -1.0, 1.0);
  const Vector d1u = disc->d1 * u;
  const Vector d2u = disc->d2 * u;
  for (int i = 1; i < 50; ++i) {
    EXPECT_NEAR(d1u[i], (u[i + 1] - u[i - 1]) / (2 * disc->dx), 1e-12);
    EXPECT_NEAR(d2u[i], (u[i + 1] - 2 * u[i] + u[i - 1]) / (disc->dx * disc->dx), 1e-9);
  }
  const Vector f = sys.field(u);
  EXPECT_EQ(f[0], 0.0);
  EXPECT_EQ(f[50], 0.0);
}

TEST(Burgers, JacobianAtSineProfile) {
  const auto sys = make_benchmark("burgers");
  const Vector grid = sys.burgers()->grid();
  const Vector u = (2.0 * std::numbers::pi * grid.array()).sin().matrix();
  const Matrix fd = test::fd_jacobian([&](const Vector& z) { return sys.field(z); }, u);
  EXPECT_LE(test::rel_error(eval_jacobian(sys, u), fd), 1e-6);
}

TEST(Burgers, RejectsTinyGrid) {
  EXPECT_THROW((void)burgers_semidiscretize(2, 0.1), InvalidArgument);
}
