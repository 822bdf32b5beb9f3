#include "hpr/integrators.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hpr {

void FineMethod::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw InvalidArgument("FineMethod: step must be positive and finite");
  }
  if (!(newton.tol > 0.0)) {
    throw InvalidArgument("FineMethod: newton.tol must be positive");
  }
  if (newton.max_iter < 1) {
    throw InvalidArgument("FineMethod: newton.max_iter must be at least 1");
  }
}

const char* to_string(FineKind kind) {
  switch (kind) {
    case FineKind::rk4:
      return "rk4";
    case FineKind::implicit_euler:
      return "implicit-euler";
  }
  return "unknown";
}

FineKind fine_kind_from_string(const std::string& name) {
  if (name == "rk4") return FineKind::rk4;
  if (name == "implicit-euler" || name == "ie") return FineKind::implicit_euler;
  throw InvalidArgument("unknown fine method '" + name + "'");
}

namespace {

void check_stage(const Vector& k, int stage) {
  if (!k.allFinite()) {
    throw StepFailure("rk4_step: non-finite value in stage " + std::to_string(stage), stage);
  }
}

}  // namespace

Vector rk4_step(const OdeSystem& system, const Vector& x, double h) {
  if (!(h > 0.0)) {
    throw InvalidArgument("rk4_step: step must be positive");
  }
  if (x.size() != system.dim() || !x.allFinite()) {
    throw InvalidArgument("rk4_step: state must be finite with length dim");
  }
  const Vector k1 = system.field_unchecked(x);
  check_stage(k1, 1);
  const Vector k2 = system.field_unchecked(x + (0.5 * h) * k1);
  check_stage(k2, 2);
  const Vector k3 = system.field_unchecked(x + (0.5 * h) * k2);
  check_stage(k3, 3);
  const Vector k4 = system.field_unchecked(x + h * k3);
  check_stage(k4, 4);
  Vector next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  check_stage(next, 5);
  return next;
}

Vector implicit_euler_step(const OdeSystem& system, const Vector& x, double h,
                           const NewtonOptions& newton) {
  if (!(h > 0.0)) {
    throw InvalidArgument("implicit_euler_step: step must be positive");
  }
  if (x.size() != system.dim() || !x.allFinite()) {
    throw InvalidArgument("implicit_euler_step: state must be finite with length dim");
  }
  const double threshold = newton.tol * (1.0 + x.norm());
  Vector y = x;
  double residual_norm = std::numeric_limits<double>::infinity();
  for (int it = 0;; ++it) {
    const Vector residual = y - x - h * system.field_unchecked(y);
    residual_norm = residual.norm();
    if (!std::isfinite(residual_norm)) {
      throw NumericalFailure("implicit_euler_step: non-finite Newton residual");
    }
    if (residual_norm <= threshold) {
      return y;
    }
    if (it == newton.max_iter) {
      break;
    }
    Matrix jac = -h * system.jacobian_unchecked(y);
    jac.diagonal().array() += 1.0;
    Eigen::PartialPivLU<Matrix> lu(jac);
    const Vector delta = lu.solve(-residual);
    if (!delta.allFinite()) {
      throw NumericalFailure("implicit_euler_step: singular Newton matrix");
    }
    y += delta;
  }
  throw NewtonNonconvergence("implicit_euler_step: Newton did not converge in " +
                                 std::to_string(newton.max_iter) + " iterations (residual " +
                                 std::to_string(residual_norm) + ")",
                             residual_norm);
}

long fine_step_count(double length, double step) {
  if (!(length > 0.0) || !(step > 0.0)) {
    throw InvalidArgument("fine_step_count: length and step must be positive");
  }
  const double q = length / step;
  const double m = std::round(q);
  // Tolerates the few-ulp error of (T/N) / (T/K) style ratios.
  const double ulp = std::nextafter(q, std::numeric_limits<double>::infinity()) - q;
  if (m < 1.0 || std::abs(q - m) > 16.0 * ulp) {
    throw InvalidArgument("fine_step_count: interval length " + std::to_string(length) +
                          " is not an integer multiple of the fine step " + std::to_string(step));
  }
  return static_cast<long>(m);
}

Vector fine_propagate(const OdeSystem& system, const Vector& x, double length,
                      const FineMethod& method) {
  method.validate();
  const long steps = fine_step_count(length, method.step);
  Vector state = x;
  if (method.kind == FineKind::rk4) {
    for (long s = 0; s < steps; ++s) {
      state = rk4_step(system, state, method.step);
    }
  } else {
    for (long s = 0; s < steps; ++s) {
      state = implicit_euler_step(system, state, method.step, method.newton);
    }
  }
  return state;
}

std::vector<Vector> serial_solve(const OdeSystem& system, const Vector& x0, const TimeMesh& mesh,
                                 const FineMethod& method) {
  std::vector<Vector> nodes;
  nodes.reserve(static_cast<std::size_t>(mesh.intervals()) + 1);
  nodes.push_back(x0);
  for (int n = 0; n < mesh.intervals(); ++n) {
    try {
      nodes.push_back(fine_propagate(system, nodes.back(), mesh.length(n), method));
    } catch (const InvalidArgument&) {
      throw;
    } catch (const Error& e) {
      throw SolveFailure(std::string("serial_solve: interval ") + std::to_string(n) + ": " + e.what(),
                         -1, n);
    }
  }
  return nodes;
}

}  // namespace hpr
