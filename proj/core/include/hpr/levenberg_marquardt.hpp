/**
 * @file levenberg_marquardt.hpp
 * @brief Levenberg-Marquardt for small nonlinear least-squares problems,
 *        with a dense-Jacobian and a matrix-free (CG) step solver.
 */
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hpr/types.hpp"

namespace hpr {

/**
 * @brief Damping schedule and stopping rules.
 *
 * Steps solve (J^T J + lambda D) delta = -J^T r with D = diag(J^T J)
 * (entries below 1e-14 replaced by 1). Accepted steps divide lambda by
 * lambda_decrease, rejected ones multiply it by lambda_increase. Once lambda
 * falls below lambda_min the dense path takes an undamped step; a rejection
 * there restarts at lambda_min. The matrix-free path never damps below
 * lambda_min.
 */
struct LmOptions {
  int max_iter = 100;
  double residual_tol = 1e-10;  ///< on |r|_2
  double step_tol = 1e-12;      ///< on |delta|_2
  double lambda_init = 1e-3;
  double lambda_increase = 10.0;
  double lambda_decrease = 10.0;
  double lambda_min = 1e-12;
  double lambda_max = 1e10;

  void validate() const;
};

struct CgOptions {
  double tol = 1e-12;        ///< relative residual of the damped normal equations
  int max_iter_factor = 10;  ///< iteration cap is factor * unknowns
};

enum class LmTermination { residual_tol, step_tol, max_iter };

[[nodiscard]] const char* to_string(LmTermination reason);

struct LmReport {
  int iterations = 0;  ///< trial steps, accepted or rejected
  int accepted = 0;
  int rejected = 0;
  double initial_cost = 0.0;  ///< |r|^2 at the starting point
  double final_cost = 0.0;
  LmTermination termination = LmTermination::max_iter;
  /// Cost at the start and after every accepted step; strictly decreasing.
  std::vector<double> accepted_costs;
  long cg_iterations = 0;
};

struct LmResult {
  Vector x;
  LmReport report;
};

using ResidualFn = std::function<Vector(const Vector&)>;
using DenseJacobianFn = std::function<Matrix(const Vector&)>;

/**
 * @brief Jacobian available only through products, plus its squared column norms.
 *
 * diagonal_blocks, when given, are equal-sized diagonal blocks of J^T J; CG
 * is then block-Jacobi preconditioned instead of Jacobi preconditioned.
 */
struct JacobianOperator {
  std::function<Vector(const Vector&)> apply;
  std::function<Vector(const Vector&)> apply_transpose;
  Vector column_norms_sq;
  std::vector<Matrix> diagonal_blocks;
};
using JacobianOperatorFn = std::function<JacobianOperator(const Vector&)>;

/**
 * @brief Dense LM. The damped step is computed from the equivalent
 *        augmented least-squares problem [J; sqrt(lambda D)] delta = [-r; 0].
 *
 * Throws NumericalFailure if the step solve keeps failing up to lambda_max.
 */
[[nodiscard]] LmResult levenberg_marquardt(const ResidualFn& residual, const DenseJacobianFn& jacobian,
                                           Vector x, const LmOptions& options = {});

/// Matrix-free LM; damped normal equations solved by preconditioned CG.
[[nodiscard]] LmResult levenberg_marquardt_matrix_free(const ResidualFn& residual,
                                                       const JacobianOperatorFn& jacobian, Vector x,
                                                       const LmOptions& options = {},
                                                       const CgOptions& cg = {});

using LinearOp = std::function<Vector(const Vector&)>;

/**
 * @brief Preconditioned conjugate gradients for an SPD operator.
 * @param precondition applies the inverse preconditioner.
 * @return iterations performed; x holds the final iterate.
 */
int conjugate_gradient(const LinearOp& op, const Vector& rhs, const LinearOp& precondition,
                       Vector& x, double rel_tol, int max_iter);

}  // namespace hpr
