/**
 * @file integrators.hpp
 * @brief Fixed-step fine integrators (classical RK4, implicit Euler with Newton)
 *        and their composition into the fine propagator over a subinterval.
 */
#pragma once

#include <vector>

#include "hpr/mesh.hpp"
#include "hpr/ode_system.hpp"
#include "hpr/types.hpp"

namespace hpr {

enum class FineKind { rk4, implicit_euler };

struct NewtonOptions {
  double tol = 1e-12;
  int max_iter = 50;
};

/** @brief Fine one-step method and its step size. */
struct FineMethod {
  FineKind kind = FineKind::rk4;
  double step = 1e-2;
  NewtonOptions newton{};

  void validate() const;
};

[[nodiscard]] const char* to_string(FineKind kind);
[[nodiscard]] FineKind fine_kind_from_string(const std::string& name);

/// One classical RK4 step. Throws StepFailure carrying the 1-based stage index on overflow.
[[nodiscard]] Vector rk4_step(const OdeSystem& system, const Vector& x, double h);

/**
 * @brief One implicit Euler step, y = x + h F(y).
 *
 * Plain Newton on R(y) = y - x - h F(y) with the exact Jacobian I - h DF(y),
 * starting from y = x, until |R(y)| <= tol (1 + |x|). Throws
 * NewtonNonconvergence otherwise.
 */
[[nodiscard]] Vector implicit_euler_step(const OdeSystem& system, const Vector& x, double h,
                                         const NewtonOptions& newton = {});

/// Number of fine steps covering `length`; throws when length / step is not an integer.
[[nodiscard]] long fine_step_count(double length, double step);

/// M composed fine steps over an interval of the given length.
[[nodiscard]] Vector fine_propagate(const OdeSystem& system, const Vector& x, double length,
                                    const FineMethod& method);

/// Sequential fine solve; returns the state at every mesh node (node 0 is x0).
[[nodiscard]] std::vector<Vector> serial_solve(const OdeSystem& system, const Vector& x0,
                                               const TimeMesh& mesh, const FineMethod& method);

}  // namespace hpr
