/**
 * @file collocation.hpp
 * @brief Collocation residual of the network ansatz, its Jacobian with respect
 *        to vec(theta), and the coarse trainer built on Levenberg-Marquardt.
 *
 * With X = 1 x0^T + (H - H0) theta the network states at the nodes,
 *
 *   G(theta) = H' theta - F(X)                     (C x d, F applied rowwise)
 *   J = I_d (x) H' - dvecF/dvecX (I_d (x) (H - H0))  (Cd x Hd)
 *
 * Rows of J follow vec(G) and columns follow vec(theta), both column-stacked.
 */
#pragma once

#include <string>
#include <vector>

#include "hpr/levenberg_marquardt.hpp"
#include "hpr/ode_system.hpp"
#include "hpr/rpnn.hpp"
#include "hpr/types.hpp"

namespace hpr {

/// Network states at the collocation nodes, one row per node.
[[nodiscard]] Matrix collocation_states(const RpnnBasis& basis, const WeightMatrix& theta,
                                        const Vector& x0);

[[nodiscard]] Matrix residual(const RpnnBasis& basis, const WeightMatrix& theta, const Vector& x0,
                              const OdeSystem& system);

[[nodiscard]] Matrix residual_jacobian(const RpnnBasis& basis, const WeightMatrix& theta,
                                       const Vector& x0, const OdeSystem& system);

/// Squared column norms of residual_jacobian, without assembling it.
[[nodiscard]] Vector residual_jacobian_column_norms(const RpnnBasis& basis,
                                                    const WeightMatrix& theta, const Vector& x0,
                                                    const OdeSystem& system);

/// Diagonal H x H blocks of J^T J, one per state component.
[[nodiscard]] std::vector<Matrix> residual_jacobian_diagonal_blocks(const RpnnBasis& basis,
                                                                   const WeightMatrix& theta,
                                                                   const Vector& x0,
                                                                   const OdeSystem& system);

/// J v for the Burgers field, never forming J.
[[nodiscard]] Vector burgers_jacobian_apply(const RpnnBasis& basis, const WeightMatrix& theta,
                                            const Vector& x0, const BurgersDiscretization& disc,
                                            const Vector& v);

/// J^T w for the Burgers field.
[[nodiscard]] Vector burgers_jacobian_apply_transpose(const RpnnBasis& basis,
                                                      const WeightMatrix& theta, const Vector& x0,
                                                      const BurgersDiscretization& disc,
                                                      const Vector& w);

struct TrainReport {
  int iterations = 0;
  double initial_cost = 0.0;
  double final_cost = 0.0;  ///< |G|_F^2
  double epsilon = 0.0;     ///< max_c |G(c, :)|_2
  int accepted = 0;
  int rejected = 0;
  LmTermination termination = LmTermination::max_iter;
  bool matrix_free = false;
  long cg_iterations = 0;
  /// True when the previous weights were kept because x0 did not change.
  bool reused = false;
  std::vector<double> accepted_costs;
};

struct TrainOptions {
  LmOptions lm{};
  CgOptions cg{};
  /// Use the operator form with CG for Burgers systems.
  bool matrix_free_burgers = true;
};

struct TrainResult {
  WeightMatrix theta;
  TrainReport report;
};

/**
 * @brief Minimizes |G(theta)|_F^2 from theta_init.
 *
 * LM failures are rethrown as TrainingFailure.
 */
[[nodiscard]] TrainResult train_coarse(const RpnnBasis& basis, const Vector& x0,
                                       const OdeSystem& system, const WeightMatrix& theta_init,
                                       const TrainOptions& options = {});

/// Max row norm of a residual matrix.
[[nodiscard]] double max_row_norm(const Matrix& g);

}  // namespace hpr
