#include <gtest/gtest.h>

#include "hpr/levenberg_marquardt.hpp"
#include "support.hpp"

using namespace hpr;

TEST(LevenbergMarquardt, LinearLeastSquares) {
  std::mt19937_64 rng(4);
  const Matrix a = test::uniform_vector(rng, 24, -1, 1).reshaped(8, 3);
  const Vector b = test::uniform_vector(rng, 8, -1, 1);
  const Vector want = (a.transpose() * a).ldlt().solve(a.transpose() * b);
  const auto result = levenberg_marquardt([&](const Vector& x) -> Vector { return a * x - b; },
                                          [&](const Vector&) { return a; }, Vector::Zero(3));
  EXPECT_LE((result.x - want).norm(), 1e-10);
  EXPECT_LE(result.report.iterations, 5);
}

TEST(LevenbergMarquardt, ZeroResidualStart) {
  const Vector x0{{1.0, 2.0}};
  const auto result = levenberg_marquardt([](const Vector& x) -> Vector { return x - x; },
                                          [](const Vector&) { return Matrix::Identity(2, 2); }, x0);
  EXPECT_EQ(result.x, x0);
  EXPECT_EQ(result.report.iterations, 0);
  EXPECT_EQ(result.report.termination, LmTermination::residual_tol);
}

TEST(LevenbergMarquardt, Rosenbrock) {
  auto residual = [](const Vector& x) -> Vector {
    return Vector{{1.0 - x[0], 10.0 * (x[1] - x[0] * x[0])}};
  };
  auto jacobian = [](const Vector& x) -> Matrix {
    Matrix j(2, 2);
    j << -1.0, 0.0, -20.0 * x[0], 10.0;
    return j;
  };
  const auto result = levenberg_marquardt(residual, jacobian, Vector{{-1.2, 1.0}});
  EXPECT_LE((result.x - Vector{{1.0, 1.0}}).norm(), 1e-8);
  const auto& costs = result.report.accepted_costs;
  for (std::size_t k = 1; k < costs.size(); ++k) EXPECT_LT(costs[k], costs[k - 1]);
  EXPECT_EQ(result.report.accepted + result.report.rejected, result.report.iterations);
}

TEST(LevenbergMarquardt, MatrixFreeMatchesDense) {
  std::mt19937_64 rng(8);
  const Matrix a = test::uniform_vector(rng, 60, -1, 1).reshaped(12, 5);
  const Vector b = test::uniform_vector(rng, 12, -1, 1);
  auto residual = [&](const Vector& x) -> Vector { return a * x - b; };
  auto op = [&](const Vector&) {
    JacobianOperator j;
    j.apply = [&](const Vector& v) -> Vector { return a * v; };
    j.apply_transpose = [&](const Vector& w) -> Vector { return a.transpose() * w; };
    j.column_norms_sq = a.colwise().squaredNorm().transpose();
    return j;
  };
  const auto dense = levenberg_marquardt(residual, [&](const Vector&) { return a; },
                                         Vector::Zero(5));
  const auto free = levenberg_marquardt_matrix_free(residual, op, Vector::Zero(5));
  EXPECT_LE((dense.x - free.x).norm(), 1e-9);
}

TEST(LevenbergMarquardt, NonFiniteStartThrows) {
  EXPECT_THROW((void)levenberg_marquardt(
                   [](const Vector&) -> Vector { return Vector::Constant(1, NAN); },
                   [](const Vector&) { return Matrix::Identity(1, 1); }, Vector::Zero(1)),
               NumericalFailure);
}

TEST(LevenbergMarquardt, MaxIterTermination) {
  LmOptions opts;
  opts.max_iter = 2;
  auto residual = [](const Vector& x) -> Vector { return Vector{{std::exp(x[0]) - 2.0}}; };
  auto jacobian = [](const Vector& x) { return Matrix::Constant(1, 1, std::exp(x[0])); };
  const auto result = levenberg_marquardt(residual, jacobian, Vector::Constant(1, 5.0), opts);
  EXPECT_EQ(result.report.iterations, 2);
  EXPECT_EQ(result.report.termination, LmTermination::max_iter);
  EXPECT_LE(result.report.final_cost, result.report.initial_cost);
}

TEST(LmOptions, Validation) {
  LmOptions opts;
  opts.lambda_min = 1.0;
  EXPECT_THROW(opts.validate(), InvalidArgument);
  opts = LmOptions{};
  opts.lambda_increase = 1.0;
  EXPECT_THROW(opts.validate(), InvalidArgument);
  EXPECT_NO_THROW(LmOptions{}.validate());
}

TEST(ConjugateGradient, SolvesSpdSystem) {
  Matrix a(3, 3);
  a << 4, 1, 0, 1, 3, 1, 0, 1, 2;
  const Vector rhs{{1, 2, 3}};
  Vector x = Vector::Zero(3);
  const int it = conjugate_gradient([&](const Vector& v) -> Vector { return a * v; }, rhs,
                                    [](const Vector& v) { return v; }, x, 1e-14, 30);
  EXPECT_LE(it, 30);
  EXPECT_LE((a * x - rhs).norm(), 1e-12);
}
