#include "hpr/levenberg_marquardt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace hpr {

void LmOptions::validate() const {
  if (max_iter < 0) throw InvalidArgument("LmOptions: max_iter must be non-negative");
  if (!(residual_tol > 0.0) || !(step_tol > 0.0)) {
    throw InvalidArgument("LmOptions: tolerances must be positive");
  }
  if (!(lambda_increase > 1.0) || !(lambda_decrease > 1.0)) {
    throw InvalidArgument("LmOptions: lambda factors must exceed 1");
  }
  if (!(lambda_min > 0.0) || !(lambda_min < lambda_init) || !(lambda_init < lambda_max)) {
    throw InvalidArgument("LmOptions: need 0 < lambda_min < lambda_init < lambda_max");
  }
}

const char* to_string(LmTermination reason) {
  switch (reason) {
    case LmTermination::residual_tol:
      return "residual_tol";
    case LmTermination::step_tol:
      return "step_tol";
    case LmTermination::max_iter:
      return "max_iter";
  }
  return "unknown";
}

namespace {

constexpr double kMinScale = 1e-14;
constexpr double kCostTie = 16.0 * std::numeric_limits<double>::epsilon();

Vector marquardt_scaling(Vector column_norms_sq) {
  for (Eigen::Index i = 0; i < column_norms_sq.size(); ++i) {
    if (!(column_norms_sq[i] >= kMinScale)) {
      column_norms_sq[i] = 1.0;
    }
  }
  return column_norms_sq;
}

class DenseStep {
 public:
  DenseStep(Matrix jac, const Vector& r) : jac_(std::move(jac)), neg_r_(-r) {
    scale_ = marquardt_scaling(jac_.colwise().squaredNorm().transpose());
  }

  std::optional<Vector> solve(double lambda, long& /*cg_iterations*/) const {
    const auto m = jac_.rows();
    const auto n = jac_.cols();
    Matrix aug(m + n, n);
    aug.topRows(m) = jac_;
    aug.bottomRows(n) = (lambda * scale_).cwiseSqrt().asDiagonal();
    Vector rhs = Vector::Zero(m + n);
    rhs.head(m) = neg_r_;
    Eigen::ColPivHouseholderQR<Matrix> qr(aug);
    Vector delta = qr.solve(rhs);
    if (!delta.allFinite()) {
      return std::nullopt;
    }
    return delta;
  }

 private:
  Matrix jac_;
  Vector neg_r_;
  Vector scale_;
};

class OperatorStep {
 public:
  OperatorStep(JacobianOperator op, const Vector& r, const CgOptions& cg, double lambda_floor)
      : op_(std::move(op)), cg_(cg), lambda_floor_(lambda_floor) {
    scale_ = marquardt_scaling(op_.column_norms_sq);
    rhs_ = -op_.apply_transpose(r);
  }

  std::optional<Vector> solve(double lambda, long& cg_iterations) const {
    const auto n = rhs_.size();
    // CG keeps the floor so the normal operator stays definite.
    const Vector damping = std::max(lambda, lambda_floor_) * scale_;
    auto normal = [this, &damping](const Vector& v) -> Vector {
      return op_.apply_transpose(op_.apply(v)) + damping.cwiseProduct(v);
    };
    LinearOp precondition;
    std::vector<Eigen::LDLT<Matrix>> factors;
    Vector inv_diag;
    if (!op_.diagonal_blocks.empty()) {
      const auto size = op_.diagonal_blocks.front().rows();
      for (std::size_t k = 0; k < op_.diagonal_blocks.size(); ++k) {
        Matrix block = op_.diagonal_blocks[k];
        block.diagonal() += damping.segment(static_cast<Eigen::Index>(k) * size, size);
        factors.emplace_back(block);
      }
      precondition = [&factors, size](const Vector& v) {
        Vector out(v.size());
        for (std::size_t k = 0; k < factors.size(); ++k) {
          const auto off = static_cast<Eigen::Index>(k) * size;
          out.segment(off, size) = factors[k].solve(v.segment(off, size));
        }
        return out;
      };
    } else {
      inv_diag = (op_.column_norms_sq + damping).cwiseMax(kMinScale).cwiseInverse();
      precondition = [&inv_diag](const Vector& v) -> Vector { return inv_diag.cwiseProduct(v); };
    }
    Vector delta = Vector::Zero(n);
    cg_iterations += conjugate_gradient(normal, rhs_, precondition, delta, cg_.tol,
                                        cg_.max_iter_factor * static_cast<int>(n));
    if (!delta.allFinite()) {
      return std::nullopt;
    }
    return delta;
  }

 private:
  JacobianOperator op_;
  CgOptions cg_;
  double lambda_floor_;
  Vector scale_;
  Vector rhs_;
};

template <class Linearize>
LmResult run_lm(const ResidualFn& residual, const Linearize& linearize, Vector x,
                const LmOptions& options) {
  options.validate();
  LmResult result;
  LmReport& report = result.report;

  Vector r = residual(x);
  double cost = r.squaredNorm();
  if (!std::isfinite(cost)) {
    throw NumericalFailure("levenberg_marquardt: non-finite residual at the starting point");
  }
  report.initial_cost = cost;
  report.accepted_costs.push_back(cost);

  auto finish = [&](LmTermination reason) {
    report.termination = reason;
    report.final_cost = cost;
    result.x = std::move(x);
    return result;
  };

  if (std::sqrt(cost) <= options.residual_tol) {
    return finish(LmTermination::residual_tol);
  }

  double lambda = options.lambda_init;
  auto step = linearize(x, r);
  while (report.iterations < options.max_iter) {
    ++report.iterations;
    const auto delta = step.solve(lambda, report.cg_iterations);
    if (!delta) {
      lambda = lambda == 0.0 ? options.lambda_min : lambda * options.lambda_increase;
      if (lambda > options.lambda_max) {
        throw NumericalFailure("levenberg_marquardt: step solve failed up to lambda_max");
      }
      ++report.rejected;
      continue;
    }
    const double step_norm = delta->norm();
    Vector trial = x + *delta;
    Vector trial_r = residual(trial);
    const double trial_cost = trial_r.squaredNorm();
    if (std::isfinite(trial_cost) && trial_cost < cost) {
      ++report.accepted;
      x = std::move(trial);
      r = std::move(trial_r);
      cost = trial_cost;
      report.accepted_costs.push_back(cost);
      // Below the floor the next trial is a plain Gauss-Newton step.
      lambda /= options.lambda_decrease;
      if (lambda < options.lambda_min) lambda = 0.0;
      if (std::sqrt(cost) <= options.residual_tol) {
        return finish(LmTermination::residual_tol);
      }
      if (step_norm <= options.step_tol) {
        return finish(LmTermination::step_tol);
      }
      step = linearize(x, r);
    } else {
      ++report.rejected;
      // No decrease from a negligible step, a tie in cost, or saturated damping:
      // stationary to working precision.
      const bool tie = std::isfinite(trial_cost) && trial_cost - cost <= kCostTie * cost;
      if (step_norm <= options.step_tol || tie) {
        return finish(LmTermination::step_tol);
      }
      lambda = lambda == 0.0 ? options.lambda_min : lambda * options.lambda_increase;
      if (lambda > options.lambda_max) {
        return finish(LmTermination::step_tol);
      }
    }
  }
  return finish(LmTermination::max_iter);
}

}  // namespace

int conjugate_gradient(const LinearOp& op, const Vector& rhs, const LinearOp& precondition,
                       Vector& x, double rel_tol, int max_iter) {
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) {
    x.setZero();
    return 0;
  }
  Vector res = rhs - op(x);
  Vector z = precondition(res);
  Vector p = z;
  double rz = res.dot(z);
  int it = 0;
  while (it < max_iter && res.norm() > rel_tol * rhs_norm) {
    const Vector q = op(p);
    const double pq = p.dot(q);
    if (!(pq > 0.0)) {
      break;
    }
    const double alpha = rz / pq;
    x += alpha * p;
    res -= alpha * q;
    z = precondition(res);
    const double rz_next = res.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
    ++it;
  }
  return it;
}

LmResult levenberg_marquardt(const ResidualFn& residual, const DenseJacobianFn& jacobian, Vector x,
                             const LmOptions& options) {
  auto linearize = [&jacobian](const Vector& at, const Vector& r) {
    return DenseStep(jacobian(at), r);
  };
  return run_lm(residual, linearize, std::move(x), options);
}

LmResult levenberg_marquardt_matrix_free(const ResidualFn& residual,
                                         const JacobianOperatorFn& jacobian, Vector x,
                                         const LmOptions& options, const CgOptions& cg) {
  auto linearize = [&jacobian, &cg, &options](const Vector& at, const Vector& r) {
    return OperatorStep(jacobian(at), r, cg, options.lambda_min);
  };
  return run_lm(residual, linearize, std::move(x), options);
}

}  // namespace hpr
