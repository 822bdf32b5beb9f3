#include "hpr/collocation.hpp"

#include <Eigen/SparseCore>

#include <cmath>
#include <limits>
#include <memory>
#include <vector>

namespace hpr {

namespace {

void check_shapes(const RpnnBasis& basis, const WeightMatrix& theta, const Vector& x0,
                  const OdeSystem& system) {
  if (theta.hidden() != basis.hidden() || theta.dim() != system.dim() ||
      x0.size() != system.dim()) {
    throw InvalidArgument("collocation: theta, x0 and system dimensions are inconsistent");
  }
}

Matrix residual_unchecked(const RpnnBasis& basis, const WeightMatrix& theta, const Vector& x0,
                          const OdeSystem& system) {
  const Matrix states = collocation_states(basis, theta, x0);
  Matrix g = basis.feat_hprime() * theta.values();
  for (Eigen::Index c = 0; c < states.rows(); ++c) {
    g.row(c) -= system.field_unchecked(states.row(c).transpose()).transpose();
  }
  return g;
}

std::vector<Matrix> node_jacobians(const Matrix& states, const OdeSystem& system) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(states.rows()));
  for (Eigen::Index c = 0; c < states.rows(); ++c) {
    out.push_back(system.jacobian_unchecked(states.row(c).transpose()));
  }
  return out;
}

using SparseMatrix = Eigen::SparseMatrix<double>;

struct BurgersStencils {
  explicit BurgersStencils(const BurgersDiscretization& disc)
      : d1(disc.d1.sparseView()), d2(disc.d2.sparseView()), viscosity(disc.viscosity) {
    d1t = d1.transpose();
    d2t = d2.transpose();
  }
  SparseMatrix d1, d2, d1t, d2t;
  double viscosity;
};

struct BurgersLinearization {
  Matrix states;    // X, C x d
  Matrix gradient;  // X D1^T
};

BurgersLinearization linearize_burgers(const RpnnBasis& basis, const WeightMatrix& theta,
                                       const Vector& x0, const BurgersStencils& ops) {
  BurgersLinearization lin;
  lin.states = collocation_states(basis, theta, x0);
  lin.gradient = lin.states * ops.d1t;
  return lin;
}

Vector apply_burgers(const RpnnBasis& basis, const BurgersStencils& ops,
                     const BurgersLinearization& lin, const Vector& v) {
  const int hidden = basis.hidden();
  const auto dim = lin.states.cols();
  const Eigen::Map<const Matrix> vm(v.data(), hidden, dim);
  const Matrix dx = basis.feat_shift() * vm;
  const Matrix df = -dx.cwiseProduct(lin.gradient) - lin.states.cwiseProduct(dx * ops.d1t) +
                    ops.viscosity * (dx * ops.d2t);
  const Matrix out = basis.feat_hprime() * vm - df;
  return Eigen::Map<const Vector>(out.data(), out.size());
}

Vector apply_burgers_transpose(const RpnnBasis& basis, const BurgersStencils& ops,
                               const BurgersLinearization& lin, const Vector& w) {
  const auto count = static_cast<Eigen::Index>(basis.collocation());
  const auto dim = lin.states.cols();
  const Eigen::Map<const Matrix> wm(w.data(), count, dim);
  const Matrix xw = lin.states.cwiseProduct(wm);
  const Matrix adj = -wm.cwiseProduct(lin.gradient) - xw * ops.d1 + ops.viscosity * (wm * ops.d2);
  const Matrix out = basis.feat_hprime().transpose() * wm - basis.feat_shift().transpose() * adj;
  return Eigen::Map<const Vector>(out.data(), out.size());
}

void check_burgers(const RpnnBasis& basis, const WeightMatrix& theta, const Vector& x0,
                   const BurgersDiscretization& disc, Eigen::Index vec_len, Eigen::Index expected) {
  const auto d = static_cast<Eigen::Index>(disc.grid_size);
  if (theta.hidden() != basis.hidden() || theta.dim() != d || x0.size() != d) {
    throw InvalidArgument("burgers_jacobian_apply: theta and x0 must match the grid");
  }
  if (vec_len != expected) {
    throw InvalidArgument("burgers_jacobian_apply: vector length mismatch");
  }
}

}  // namespace

Matrix collocation_states(const RpnnBasis& basis, const WeightMatrix& theta, const Vector& x0) {
  if (theta.hidden() != basis.hidden() || theta.dim() != x0.size()) {
    throw InvalidArgument("collocation_states: theta shape does not match basis and state");
  }
  Matrix states = basis.feat_shift() * theta.values();
  states.rowwise() += x0.transpose();
  return states;
}

Matrix residual(const RpnnBasis& basis, const WeightMatrix& theta, const Vector& x0,
                const OdeSystem& system) {
  check_shapes(basis, theta, x0, system);
  Matrix g = residual_unchecked(basis, theta, x0, system);
  if (!g.allFinite()) {
    throw NumericalFailure("residual: non-finite field evaluation");
  }
  return g;
}

Matrix residual_jacobian(const RpnnBasis& basis, const WeightMatrix& theta, const Vector& x0,
                         const OdeSystem& system) {
  check_shapes(basis, theta, x0, system);
  const int count = basis.collocation();
  const int hidden = basis.hidden();
  const int dim = system.dim();
  const Matrix& hp = basis.feat_hprime();
  const Matrix& shift = basis.feat_shift();
  const auto jacs = node_jacobians(collocation_states(basis, theta, x0), system);

  Matrix jac = Matrix::Zero(static_cast<Eigen::Index>(count) * dim,
                            static_cast<Eigen::Index>(hidden) * dim);
  for (int j = 0; j < dim; ++j) {
    jac.block(j * count, j * hidden, count, hidden) = hp;
  }
  for (int c = 0; c < count; ++c) {
    const Matrix& df = jacs[static_cast<std::size_t>(c)];
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < dim; ++k) {
        const double djk = df(j, k);
        if (djk == 0.0) continue;
        jac.block(j * count + c, k * hidden, 1, hidden) -= djk * shift.row(c);
      }
    }
  }
  return jac;
}

std::vector<Matrix> residual_jacobian_diagonal_blocks(const RpnnBasis& basis,
                                                      const WeightMatrix& theta, const Vector& x0,
                                                      const OdeSystem& system) {
  check_shapes(basis, theta, x0, system);
  const int count = basis.collocation();
  const int hidden = basis.hidden();
  const int dim = system.dim();
  const Matrix& hp = basis.feat_hprime();
  const Matrix& shift = basis.feat_shift();
  const auto jacs = node_jacobians(collocation_states(basis, theta, x0), system);

  // Block k: sum_c (H'_c - DF_kk S_c)(...)^T + (|DF(:, k)|^2 - DF_kk^2) S_c S_c^T
  std::vector<Matrix> blocks(static_cast<std::size_t>(dim), Matrix::Zero(hidden, hidden));
  for (int c = 0; c < count; ++c) {
    const Matrix& df = jacs[static_cast<std::size_t>(c)];
    const Vector col_sq = df.colwise().squaredNorm().transpose();
    const Vector a = hp.row(c).transpose();
    const Vector s = shift.row(c).transpose();
    for (int k = 0; k < dim; ++k) {
      const double dkk = df(k, k);
      const Vector own = a - dkk * s;
      blocks[k].noalias() += own * own.transpose();
      blocks[k].noalias() += (col_sq[k] - dkk * dkk) * (s * s.transpose());
    }
  }
  return blocks;
}

Vector residual_jacobian_column_norms(const RpnnBasis& basis, const WeightMatrix& theta,
                                      const Vector& x0, const OdeSystem& system) {
  const auto blocks = residual_jacobian_diagonal_blocks(basis, theta, x0, system);
  const int hidden = basis.hidden();
  Vector norms(static_cast<Eigen::Index>(hidden) * system.dim());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    norms.segment(static_cast<Eigen::Index>(k) * hidden, hidden) = blocks[k].diagonal();
  }
  return norms.cwiseMax(0.0);
}

Vector burgers_jacobian_apply(const RpnnBasis& basis, const WeightMatrix& theta, const Vector& x0,
                              const BurgersDiscretization& disc, const Vector& v) {
  check_burgers(basis, theta, x0, disc, v.size(),
                static_cast<Eigen::Index>(basis.hidden()) * disc.grid_size);
  const BurgersStencils ops(disc);
  return apply_burgers(basis, ops, linearize_burgers(basis, theta, x0, ops), v);
}

Vector burgers_jacobian_apply_transpose(const RpnnBasis& basis, const WeightMatrix& theta,
                                        const Vector& x0, const BurgersDiscretization& disc,
                                        const Vector& w) {
  check_burgers(basis, theta, x0, disc, w.size(),
                static_cast<Eigen::Index>(basis.collocation()) * disc.grid_size);
  const BurgersStencils ops(disc);
  return apply_burgers_transpose(basis, ops, linearize_burgers(basis, theta, x0, ops), w);
}

double max_row_norm(const Matrix& g) {
  return g.rows() == 0 ? 0.0 : g.rowwise().norm().maxCoeff();
}

TrainResult train_coarse(const RpnnBasis& basis, const Vector& x0, const OdeSystem& system,
                         const WeightMatrix& theta_init, const TrainOptions& options) {
  check_shapes(basis, theta_init, x0, system);
  const int hidden = basis.hidden();
  const int dim = system.dim();
  auto unvec = [hidden, dim](const Vector& v) { return WeightMatrix::from_vec(v, hidden, dim); };

  auto residual_fn = [&](const Vector& v) -> Vector {
    const Matrix g = residual_unchecked(basis, unvec(v), x0, system);
    return Eigen::Map<const Vector>(g.data(), g.size());
  };

  const BurgersDiscretization* disc = system.burgers();
  const bool matrix_free = options.matrix_free_burgers && disc != nullptr;

  LmResult lm;
  try {
    if (matrix_free) {
      const auto ops = std::make_shared<const BurgersStencils>(*disc);
      auto op_fn = [&](const Vector& v) {
        const WeightMatrix theta = unvec(v);
        auto lin = std::make_shared<const BurgersLinearization>(
            linearize_burgers(basis, theta, x0, *ops));
        JacobianOperator op;
        op.apply = [&basis, ops, lin](const Vector& u) {
          return apply_burgers(basis, *ops, *lin, u);
        };
        op.apply_transpose = [&basis, ops, lin](const Vector& w) {
          return apply_burgers_transpose(basis, *ops, *lin, w);
        };
        op.diagonal_blocks = residual_jacobian_diagonal_blocks(basis, theta, x0, system);
        op.column_norms_sq.resize(static_cast<Eigen::Index>(hidden) * dim);
        for (int k = 0; k < dim; ++k) {
          op.column_norms_sq.segment(static_cast<Eigen::Index>(k) * hidden, hidden) =
              op.diagonal_blocks[k].diagonal().cwiseMax(0.0);
        }
        return op;
      };
      lm = levenberg_marquardt_matrix_free(residual_fn, op_fn, theta_init.vec(), options.lm,
                                           options.cg);
    } else {
      auto jac_fn = [&](const Vector& v) {
        return residual_jacobian(basis, unvec(v), x0, system);
      };
      lm = levenberg_marquardt(residual_fn, jac_fn, theta_init.vec(), options.lm);
    }
  } catch (const InvalidArgument&) {
    throw;
  } catch (const Error& e) {
    throw TrainingFailure(std::string("train_coarse: ") + e.what());
  }

  TrainResult result;
  result.theta = unvec(lm.x);
  const Matrix g = residual_unchecked(basis, result.theta, x0, system);
  TrainReport& rep = result.report;
  rep.iterations = lm.report.iterations;
  rep.initial_cost = lm.report.initial_cost;
  rep.final_cost = lm.report.final_cost;
  rep.epsilon = max_row_norm(g);
  rep.accepted = lm.report.accepted;
  rep.rejected = lm.report.rejected;
  rep.termination = lm.report.termination;
  rep.matrix_free = matrix_free;
  rep.cg_iterations = lm.report.cg_iterations;
  rep.accepted_costs = std::move(lm.report.accepted_costs);
  return result;
}

}  // namespace hpr
