#include <gtest/gtest.h>

#include "hpr/collocation.hpp"
#include "support.hpp"

using namespace hpr;

namespace {

WeightMatrix random_theta(std::mt19937_64& rng, int hidden, int dim, double scale) {
  return WeightMatrix(test::uniform_vector(rng, hidden * dim, -scale, scale).reshaped(hidden, dim));
}

Matrix fd_residual_jacobian(const RpnnBasis& basis, const WeightMatrix& theta, const Vector& x0,
                            const OdeSystem& sys) {
  const int h = theta.hidden();
  const int d = theta.dim();
  auto f = [&](const Vector& v) -> Vector {
    return residual(basis, WeightMatrix::from_vec(v, h, d), x0, sys).reshaped();
  };
  return test::fd_jacobian(f, theta.vec());
}

}  // namespace

TEST(Residual, ZeroFieldZeroWeights) {
  const auto basis = sample_basis(BasisSpec{}, 0.5, 1);
  const auto sys = make_constant_system(Vector::Zero(2));
  EXPECT_EQ(residual(basis, WeightMatrix(5, 2), Vector::Ones(2), sys), Matrix::Zero(5, 2));
}

TEST(Residual, ConstantFieldRows) {
  const auto basis = sample_basis(BasisSpec{}, 0.5, 1);
  const Vector c{{1.5, -2.0}};
  const Matrix g = residual(basis, WeightMatrix(5, 2), Vector::Zero(2), make_constant_system(c));
  for (int r = 0; r < 5; ++r) EXPECT_EQ(g.row(r), -c.transpose());
}

TEST(Residual, ScalarGrowthDirectFormula) {
  const auto basis = sample_basis(BasisSpec{}, 0.5, 2);
  std::mt19937_64 rng(3);
  const auto theta = random_theta(rng, 5, 1, 1.0);
  const double x0 = 0.7;
  const Matrix g = residual(basis, theta, Vector::Constant(1, x0),
                            make_linear_system(Matrix::Identity(1, 1)));
  const Vector hp = basis.feat_hprime() * theta.values();
  const Vector shift = basis.feat_shift() * theta.values();
  for (int c = 0; c < 5; ++c) EXPECT_NEAR(g(c, 0), hp[c] - (x0 + shift[c]), 1e-14);
}

TEST(ResidualJacobian, ConstantFieldIsKroneckerOfHprime) {
  const auto basis = sample_basis(BasisSpec{}, 0.5, 1);
  const Matrix j = residual_jacobian(basis, WeightMatrix(5, 3), Vector::Zero(3),
                                     make_constant_system(Vector::Ones(3)));
  Matrix want = Matrix::Zero(15, 15);
  for (int k = 0; k < 3; ++k) want.block(5 * k, 5 * k, 5, 5) = basis.feat_hprime();
  EXPECT_EQ(j, want);
}

TEST(ResidualJacobian, MatchesFiniteDifferencesOnBenchmarks) {
  std::mt19937_64 rng(17);
  for (const auto& id : benchmark_ids()) {
    const auto sys = id == "burgers" ? make_benchmark(id, {{"grid_size", 11.0}}) : make_benchmark(id);
    const auto basis = sample_basis(BasisSpec{}, 0.1, 5);
    const Vector x0 = test::probe_state(id, sys.dim(), rng);
    const auto theta = random_theta(rng, 5, sys.dim(), 0.05);
    EXPECT_LE(test::rel_error(residual_jacobian(basis, theta, x0, sys),
                              fd_residual_jacobian(basis, theta, x0, sys)),
              1e-6)
        << id;
  }
}

TEST(ResidualJacobian, ColumnNormsAndBlocks) {
  std::mt19937_64 rng(5);
  const auto sys = make_benchmark("lorenz");
  const auto basis = sample_basis(BasisSpec{}, 0.2, 8);
  const auto theta = random_theta(rng, 5, 3, 0.5);
  const Vector x0{{1.0, -2.0, 15.0}};
  const Matrix j = residual_jacobian(basis, theta, x0, sys);
  const Matrix jtj = j.transpose() * j;
  const Vector norms = residual_jacobian_column_norms(basis, theta, x0, sys);
  EXPECT_LE((norms - jtj.diagonal()).norm(), 1e-12 * jtj.diagonal().norm());
  const auto blocks = residual_jacobian_diagonal_blocks(basis, theta, x0, sys);
  ASSERT_EQ(blocks.size(), 3u);
  for (int k = 0; k < 3; ++k) {
    EXPECT_LE((blocks[k] - jtj.block(5 * k, 5 * k, 5, 5)).norm(), 1e-12 * jtj.norm());
  }
}

TEST(BurgersOperator, MatchesDenseAssembly) {
  const auto sys = make_benchmark("burgers", {{"grid_size", 11.0}});
  const auto& disc = *sys.burgers();
  const auto basis = sample_basis(BasisSpec{}, 0.02, 3);
  std::mt19937_64 rng(6);
  const Vector x0 = test::uniform_vector(rng, 11, -1, 1);
  const auto theta = random_theta(rng, 5, 11, 0.1);
  const Matrix j = residual_jacobian(basis, theta, x0, sys);
  const Vector v = test::uniform_vector(rng, 55, -1, 1);
  const Vector w = test::uniform_vector(rng, 55, -1, 1);
  EXPECT_LE((burgers_jacobian_apply(basis, theta, x0, disc, v) - j * v).norm(), 1e-12 * (j * v).norm() + 1e-12);
  EXPECT_LE((burgers_jacobian_apply_transpose(basis, theta, x0, disc, w) - j.transpose() * w).norm(),
            1e-12 * (j.transpose() * w).norm() + 1e-12);
  EXPECT_EQ(burgers_jacobian_apply(basis, theta, x0, disc, Vector::Zero(55)).norm(), 0.0);
}

TEST(BurgersOperator, AdjointIdentity) {
  const auto sys = make_benchmark("burgers");
  const auto& disc = *sys.burgers();
  const auto basis = sample_basis(BasisSpec{}, 0.02, 4);
  std::mt19937_64 rng(9);
  const Vector x0 = test::uniform_vector(rng, 51, -1, 1);
  const auto theta = random_theta(rng, 5, 51, 0.1);
  const Vector v = test::uniform_vector(rng, 255, -1, 1);
  const Vector w = test::uniform_vector(rng, 255, -1, 1);
  const double lhs = burgers_jacobian_apply(basis, theta, x0, disc, v).dot(w);
  const double rhs = v.dot(burgers_jacobian_apply_transpose(basis, theta, x0, disc, w));
  EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs)));
}

TEST(TrainCoarse, ZeroFieldAtOnce) {
  const auto basis = sample_basis(BasisSpec{}, 0.5, 1);
  const auto r = train_coarse(basis, Vector::Ones(2), make_constant_system(Vector::Zero(2)),
                              WeightMatrix(5, 2));
  EXPECT_EQ(r.report.iterations, 0);
  EXPECT_EQ(r.theta.values(), Matrix::Zero(5, 2));
}

TEST(TrainCoarse, ScalarDecayReachesSmallEpsilon) {
  const auto basis = sample_basis(BasisSpec{}, 0.5, 12);
  const auto sys = make_linear_system(-Matrix::Identity(1, 1));
  const auto r = train_coarse(basis, Vector::Ones(1), sys, WeightMatrix(5, 1));
  EXPECT_LE(r.report.epsilon, 1e-8);
  EXPECT_GE(r.report.final_cost, 0.0);
  const auto again = train_coarse(basis, Vector::Ones(1), sys, r.theta);
  EXPECT_LE(again.report.iterations, 1);
}

TEST(TrainCoarse, BurgersUsesOperatorPath) {
  const auto sys = make_benchmark("burgers", {{"grid_size", 11.0}});
  const auto basis = sample_basis(BasisSpec{}, 0.02, 2);
  const Vector x0 = (Vector::LinSpaced(11, 0, 1).array() * 3.14159).sin().matrix();
  TrainOptions opts;
  opts.lm.max_iter = 10;
  const auto r = train_coarse(basis, x0, sys, WeightMatrix(5, 11), opts);
  EXPECT_TRUE(r.report.matrix_free);
  EXPECT_GT(r.report.cg_iterations, 0);
  EXPECT_LT(r.report.final_cost, r.report.initial_cost);
}

TEST(MaxRowNorm, Definition) {
  Matrix g(2, 2);
  g << 3, 4, 1, 1;
  EXPECT_DOUBLE_EQ(max_row_norm(g), 5.0);
}
