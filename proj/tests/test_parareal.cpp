#include <gtest/gtest.h>

#include <cmath>

#include "hpr/error_estimates.hpp"
#include "hpr/parareal.hpp"
#include "support.hpp"

using namespace hpr;

namespace {

PararealConfig sir_config() {
  PararealConfig cfg;
  cfg.fine = FineMethod{FineKind::rk4, 1e-2, {}};
  cfg.seed = 3;
  return cfg;
}

}  // namespace

TEST(CorrectionStep, Arithmetic) {
  EXPECT_EQ(correction_step(Vector::Constant(1, 1), Vector::Constant(1, 2), Vector::Constant(1, 3))[0],
            0.0);
  const Vector xf{{0.1, 0.7}};
  const Vector xs{{1e8, -3.0}};
  EXPECT_EQ(correction_step(xf, xs, xs), xf);
  EXPECT_EQ(correction_step(Vector{{1, 0}}, Vector{{0, 1}}, Vector{{1, 1}}), Vector::Zero(2));
  EXPECT_THROW((void)correction_step(Vector::Zero(2), Vector::Zero(3), Vector::Zero(2)),
               InvalidArgument);
}

TEST(StoppingError, MaxNotSum) {
  std::vector<Vector> a(3, Vector::Zero(2));
  EXPECT_EQ(stopping_error(a, a), 0.0);
  auto b = a;
  b[1] = Vector{{3, 4}};
  EXPECT_EQ(stopping_error(b, a), 5.0);
  b[2] = Vector{{0, 1}};
  EXPECT_EQ(stopping_error(b, a), 5.0);
  // node 0 is never counted
  b = a;
  b[0] = Vector{{9, 9}};
  EXPECT_EQ(stopping_error(b, a), 0.0);
}

TEST(BuildBases, OnePerDistinctLength) {
  const auto mesh = TimeMesh::blocks(0.0, {{1.0, 4}, {10.0, 3}});
  const auto bases = build_bases(mesh, BasisSpec{}, 1);
  ASSERT_EQ(bases.size(), 7u);
  EXPECT_EQ(bases[0], bases[3]);
  EXPECT_EQ(bases[4], bases[6]);
  EXPECT_NE(bases[3], bases[4]);
  EXPECT_DOUBLE_EQ(bases[5]->dt(), 3.0);
}

TEST(ZerothIterate, ZeroField) {
  const auto sys = make_constant_system(Vector::Zero(2));
  const auto mesh = TimeMesh::uniform(0, 1, 4);
  const Vector x0{{1.0, 2.0}};
  const auto z = zeroth_iterate(sys, x0, mesh, build_bases(mesh, BasisSpec{}, 0));
  for (const auto& x : z.nodes) EXPECT_EQ(x, x0);
  for (const auto& w : z.weights) EXPECT_EQ(w.values(), Matrix::Zero(5, 2));
}

TEST(ZerothIterate, CacheEqualsCoarseNodesAndWithinBound) {
  const auto sys = make_linear_system(-Matrix::Identity(1, 1));
  const auto mesh = TimeMesh::uniform(0, 1, 4);
  const auto bases = build_bases(mesh, BasisSpec{}, 2);
  const auto z = zeroth_iterate(sys, Vector::Ones(1), mesh, bases);
  ASSERT_EQ(z.nodes.size(), 5u);
  double accumulated = 0.0;
  for (int n = 0; n < 4; ++n) {
    EXPECT_EQ(z.coarse[n + 1], z.nodes[n + 1]);
    const auto grid = make_collocation_grid(NodeKind::uniform, 5, 0.25);
    const auto cert = quadrature_certificate(*bases[n], z.weights[n], z.nodes[n], sys, grid, -1.0);
    // errors from earlier intervals contract under x' = -x
    accumulated = accumulated * std::exp(-0.25) + cert.total;
    EXPECT_LE(std::abs(z.nodes[n + 1][0] - std::exp(-0.25 * (n + 1))), accumulated);
  }
}

TEST(PararealSolve, SingleIntervalIsFineSolution) {
  const auto sys = make_benchmark("sir");
  const Vector x0{{0.3, 0.5, 0.2}};
  auto cfg = sir_config();
  cfg.max_it = 1;
  const auto r = parareal_solve(sys, x0, TimeMesh::uniform(0, 1, 1), cfg);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(r.node_states[1], fine_propagate(sys, x0, 1.0, cfg.fine));
}

TEST(PararealSolve, SirConvergesQuickly) {
  const auto sys = make_benchmark("sir");
  const Vector x0{{0.3, 0.5, 0.2}};
  const auto mesh = TimeMesh::uniform(0, 10, 10);
  const auto r = parareal_solve(sys, x0, mesh, sir_config());
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.iterations, 10);
  EXPECT_EQ(r.node_states[0], x0);
  EXPECT_EQ(static_cast<int>(r.error_history.size()), r.iterations);
  const auto serial = serial_solve(sys, x0, mesh, sir_config().fine);
  for (std::size_t n = 0; n < serial.size(); ++n) {
    EXPECT_LE((r.node_states[n] - serial[n]).norm(), 1e-3);
  }
}

TEST(PararealSolve, FineFailureCarriesLocation) {
  const auto sys = make_benchmark("lorenz");
  PararealConfig cfg;
  cfg.fine = FineMethod{FineKind::implicit_euler, 0.5, NewtonOptions{1e-14, 1}};
  try {
    (void)parareal_solve(sys, Vector{{1.0, 1.0, 1.0}}, TimeMesh::uniform(0, 2, 2), cfg);
    FAIL() << "expected SolveFailure";
  } catch (const SolveFailure& e) {
    EXPECT_EQ(e.iteration(), 1);
    EXPECT_EQ(e.interval(), 0);
  }
}

TEST(PararealSolve, RejectsIndivisibleFineStep) {
  auto cfg = sir_config();
  cfg.fine.step = 0.3;
  EXPECT_THROW((void)parareal_solve(make_benchmark("sir"), Vector{{0.3, 0.5, 0.2}},
                                    TimeMesh::uniform(0, 1, 1), cfg),
               InvalidArgument);
}

TEST(EvaluatePiecewise, NodesAndBounds) {
  const auto sys = make_benchmark("sir");
  const auto mesh = TimeMesh::uniform(0, 4, 4);
  const auto r = parareal_solve(sys, Vector{{0.3, 0.5, 0.2}}, mesh, sir_config());
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(evaluate_piecewise(r, mesh.node(n)), r.node_states[n]);
  EXPECT_THROW((void)evaluate_piecewise(r, -0.1), InvalidArgument);
  EXPECT_THROW((void)evaluate_piecewise(r, 4.1), InvalidArgument);
}

TEST(EvaluatePiecewise, ZeroFieldIsConstant) {
  const auto sys = make_constant_system(Vector::Zero(1));
  const auto r = parareal_solve(sys, Vector::Constant(1, 2.0), TimeMesh::uniform(0, 1, 2),
                                sir_config());
  for (double t : {0.0, 0.1, 0.5, 0.77, 1.0}) EXPECT_EQ(evaluate_piecewise(r, t)[0], 2.0);
}

TEST(EvaluatePiecewise, DecayWithinCertificate) {
  const auto sys = make_linear_system(-Matrix::Identity(1, 1));
  const auto mesh = TimeMesh::uniform(0, 1, 4);
  auto cfg = sir_config();
  cfg.fine.step = 1e-3;
  cfg.tol = 1e-12;
  const auto r = parareal_solve(sys, Vector::Ones(1), mesh, cfg);
  const auto grid = make_collocation_grid(NodeKind::uniform, 5, 0.25);
  double bound = 0.0;
  for (int n = 0; n < 4; ++n) {
    const auto cert =
        quadrature_certificate(*r.bases[n], r.weights[n], r.node_states[n], sys, grid, -1.0);
    const double node_err = std::abs(r.node_states[n][0] - std::exp(-mesh.node(n)));
    bound = std::max(bound, node_err + cert.total);
  }
  double worst = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double t = k / 1000.0;
    worst = std::max(worst, std::abs(evaluate_piecewise(r, t)[0] - std::exp(-t)));
  }
  EXPECT_LE(worst, bound);
}

TEST(PararealConfig, Validation) {
  PararealConfig cfg;
  cfg.tol = 0.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = PararealConfig{};
  cfg.max_it = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}
