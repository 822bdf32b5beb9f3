#include <gtest/gtest.h>

#include <cmath>

#include "hpr/integrators.hpp"
#include "support.hpp"

using namespace hpr;

namespace {

OdeSystem scalar_linear(double lambda) {
  return make_linear_system(Matrix::Constant(1, 1, lambda));
}

}  // namespace

TEST(Rk4, TaylorPolynomialOnGrowth) {
  const Vector y = rk4_step(scalar_linear(1.0), Vector::Constant(1, 1.0), 0.1);
  EXPECT_NEAR(y[0], 1.1051708333333333, 1e-15);
}

TEST(Rk4, ZeroFieldKeepsState) {
  const auto sys = make_constant_system(Vector::Zero(2));
  const Vector x{{0.25, -3.0}};
  EXPECT_EQ(rk4_step(sys, x, 0.7), x);
}

TEST(Rk4, StepHalvingOrderOnLorenz) {
  const auto sys = make_benchmark("lorenz");
  const Vector x{{1.0, 2.0, 20.0}};
  auto defect = [&](double h) {
    return (rk4_step(sys, x, h) - rk4_step(sys, rk4_step(sys, x, h / 2), h / 2)).norm();
  };
  const double ratio = defect(1e-2) / defect(5e-3);
  EXPECT_GT(ratio, 12.0);
  EXPECT_LT(ratio, 40.0);
}

TEST(Rk4, OverflowReportsStage) {
  const auto sys = make_linear_system(Matrix::Constant(1, 1, 1e300));
  try {
    (void)rk4_step(sys, Vector::Constant(1, 1e10), 1e10);
    FAIL() << "expected StepFailure";
  } catch (const StepFailure& e) {
    EXPECT_GE(e.stage(), 1);
    EXPECT_LE(e.stage(), 4);
  }
}

TEST(ImplicitEuler, ScalarDecay) {
  const Vector y = implicit_euler_step(scalar_linear(-1.0), Vector::Constant(1, 1.0), 0.1);
  EXPECT_NEAR(y[0], 0.9090909090909091, 1e-15);
}

TEST(ImplicitEuler, ZeroFieldKeepsState) {
  const auto sys = make_constant_system(Vector::Zero(3));
  const Vector x{{1.0, 2.0, 3.0}};
  EXPECT_EQ(implicit_euler_step(sys, x, 0.5), x);
}

TEST(ImplicitEuler, RoberResidual) {
  const auto sys = make_benchmark("rober");
  const Vector x{{1.0, 0.0, 0.0}};
  const double h = 1e-4;
  const Vector y = implicit_euler_step(sys, x, h);
  EXPECT_LE((y - x - h * sys.field(y)).norm(), 1e-12);
}

TEST(ImplicitEuler, NonconvergenceIsReported) {
  const auto sys = make_benchmark("lorenz");
  try {
    (void)implicit_euler_step(sys, Vector{{1.0, 1.0, 1.0}}, 10.0, NewtonOptions{1e-12, 1});
    FAIL() << "expected NewtonNonconvergence";
  } catch (const NewtonNonconvergence& e) {
    EXPECT_GT(e.residual_norm(), 0.0);
  }
}

TEST(FinePropagate, OneStepEqualsSingleStep) {
  const auto sys = make_benchmark("lorenz");
  const Vector x{{1.0, 2.0, 3.0}};
  EXPECT_EQ(fine_propagate(sys, x, 0.01, FineMethod{FineKind::rk4, 0.01, {}}),
            rk4_step(sys, x, 0.01));
  const auto rober = make_benchmark("rober");
  const Vector r{{1.0, 0.0, 0.0}};
  EXPECT_EQ(fine_propagate(rober, r, 1e-4, FineMethod{FineKind::implicit_euler, 1e-4, {}}),
            implicit_euler_step(rober, r, 1e-4));
}

TEST(FinePropagate, ExponentialDecay) {
  const Vector y =
      fine_propagate(scalar_linear(-1.0), Vector::Constant(1, 1.0), 1.0, {FineKind::rk4, 0.01, {}});
  EXPECT_NEAR(y[0], std::exp(-1.0), 1e-9);
}

TEST(FinePropagate, SirConservesSum) {
  const auto sys = make_benchmark("sir");
  const Vector x{{0.3, 0.5, 0.2}};
  const Vector y = fine_propagate(sys, x, 1.0, {FineKind::rk4, 1e-2, {}});
  EXPECT_LE(std::abs(y.sum() - x.sum()), 1e-13);
}

TEST(FinePropagate, RejectsNonIntegerStepCount) {
  EXPECT_THROW((void)fine_step_count(1.0, 0.3), InvalidArgument);
  EXPECT_EQ(fine_step_count(1.0, 0.1), 10);
  EXPECT_EQ(fine_step_count(10.0 / 250.0, 10.0 / 14500.0), 58);
}

TEST(FinePropagate, Deterministic) {
  const auto sys = make_benchmark("arenstorf");
  const Vector x{{0.994, 0.0, 0.0, kArenstorfV2}};
  const FineMethod m{FineKind::rk4, 17.0 / 80000.0, {}};
  EXPECT_EQ(fine_propagate(sys, x, 17.0 / 125.0, m), fine_propagate(sys, x, 17.0 / 125.0, m));
}

TEST(SerialSolve, SingleIntervalMatchesPropagate) {
  const auto sys = make_benchmark("sir");
  const Vector x{{0.3, 0.5, 0.2}};
  const FineMethod m{FineKind::rk4, 1e-2, {}};
  const auto nodes = serial_solve(sys, x, TimeMesh::uniform(0.0, 2.0, 1), m);
  ASSERT_EQ(nodes.size(), 2u);
  EXPECT_EQ(nodes[1], fine_propagate(sys, x, 2.0, m));
}

TEST(SerialSolve, ExponentialDecayOverTenIntervals) {
  const auto nodes = serial_solve(scalar_linear(-1.0), Vector::Constant(1, 1.0),
                                  TimeMesh::uniform(0.0, 1.0, 10), {FineKind::rk4, 1e-3, {}});
  EXPECT_NEAR(nodes.back()[0], std::exp(-1.0), 1e-10);
}

TEST(SerialSolve, RoberPaperMeshConservesSum) {
  const auto sys = make_benchmark("rober");
  const auto mesh = TimeMesh::blocks(0.0, {{1.0, 100}, {100.0, 33}});
  const auto nodes =
      serial_solve(sys, Vector{{1.0, 0.0, 0.0}}, mesh, {FineKind::implicit_euler, 1e-4, {}});
  for (const auto& x : nodes) EXPECT_NEAR(x.sum(), 1.0, 1e-10);
}

TEST(FineMethod, Validation) {
  EXPECT_THROW((FineMethod{FineKind::rk4, 0.0, {}}.validate()), InvalidArgument);
  EXPECT_THROW((FineMethod{FineKind::rk4, 0.1, {0.0, 5}}.validate()), InvalidArgument);
  EXPECT_THROW((FineMethod{FineKind::rk4, 0.1, {1e-12, 0}}.validate()), InvalidArgument);
  EXPECT_EQ(fine_kind_from_string("implicit-euler"), FineKind::implicit_euler);
}
