/**
 * @file ode_system.hpp
 * @brief Autonomous ODE right-hand sides x' = F(x) with analytic Jacobians,
 *        and the six benchmark systems used by the experiment runner.
 */
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hpr/types.hpp"

namespace hpr {

/**
 * @brief Centered finite-difference operators for viscous Burgers on [0, 1].
 *
 * First and last rows of d1 and d2 are zero so that the Dirichlet boundary
 * entries of the state have zero time derivative.
 */
struct BurgersDiscretization {
  int grid_size = 51;
  double viscosity = 1.0 / 50.0;
  double dx = 1.0 / 50.0;
  Matrix d1;
  Matrix d2;

  /// Grid coordinates x_i = i dx.
  [[nodiscard]] Vector grid() const;
};

using FieldFn = std::function<Vector(const Vector&)>;
using JacobianFn = std::function<Matrix(const Vector&)>;

/**
 * @brief Immutable description of an autonomous ODE system.
 *
 * Safe to share between threads; evaluation does not mutate state.
 */
class OdeSystem {
 public:
  OdeSystem(std::string name, int dim, FieldFn field, JacobianFn jacobian,
            std::map<std::string, double> params = {},
            std::vector<std::string> component_names = {});

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] const std::map<std::string, double>& params() const noexcept { return params_; }
  [[nodiscard]] const std::vector<std::string>& component_names() const noexcept {
    return component_names_;
  }

  /// F(x). Throws InvalidArgument on wrong length and NumericalFailure on non-finite input.
  [[nodiscard]] Vector field(const Vector& x) const;
  /// Unchecked F(x), for inner loops that already validated shapes.
  [[nodiscard]] Vector field_unchecked(const Vector& x) const { return field_(x); }
  /// DF(x), d x d.
  [[nodiscard]] Matrix jacobian(const Vector& x) const;
  [[nodiscard]] Matrix jacobian_unchecked(const Vector& x) const { return jacobian_(x); }

  /// Set when the system is a Burgers semi-discretization; enables the matrix-free trainer.
  [[nodiscard]] const BurgersDiscretization* burgers() const noexcept { return burgers_.get(); }
  void attach_burgers(std::shared_ptr<const BurgersDiscretization> disc) { burgers_ = std::move(disc); }

 private:
  std::string name_;
  int dim_;
  FieldFn field_;
  JacobianFn jacobian_;
  std::map<std::string, double> params_;
  std::vector<std::string> component_names_;
  std::shared_ptr<const BurgersDiscretization> burgers_;
};

/// Analytic Jacobian with input validation (length and finiteness).
[[nodiscard]] Matrix eval_jacobian(const OdeSystem& system, const Vector& x);

/// Linear system F(x) = A x; mostly useful for tests and certificates.
[[nodiscard]] OdeSystem make_linear_system(const Matrix& a, std::string name = "linear");

/// Constant field F(x) = c.
[[nodiscard]] OdeSystem make_constant_system(const Vector& c, std::string name = "constant");

/// Stable benchmark identifiers accepted by make_benchmark.
[[nodiscard]] const std::vector<std::string>& benchmark_ids();

/// Default parameter set of a benchmark (names are the config-schema keys).
[[nodiscard]] std::map<std::string, double> benchmark_defaults(std::string_view id);

/**
 * @brief Builds one of sir, rober, lorenz, arenstorf, brusselator, burgers.
 *
 * Overrides must name existing parameters and be finite. For burgers the
 * keys are "nu" and "grid_size".
 */
[[nodiscard]] OdeSystem make_benchmark(std::string_view id,
                                       const std::map<std::string, double>& overrides = {});

/// Semi-discretized viscous Burgers, u' = -u (D1 u) + nu D2 u, boundary rows zero.
[[nodiscard]] OdeSystem burgers_semidiscretize(int grid_size, double viscosity);

/// Initial velocity of the Arenstorf orbit, kept at full literal precision.
inline constexpr double kArenstorfV2 = -2.00158510637908252240537862224;

}  // namespace hpr
