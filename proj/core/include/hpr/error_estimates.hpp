/**
 * @file error_estimates.hpp
 * @brief A-posteriori error certificates for a trained network on one interval.
 */
#pragma once

#include <vector>

#include "hpr/ode_system.hpp"
#include "hpr/quadrature.hpp"
#include "hpr/rpnn.hpp"
#include "hpr/types.hpp"

namespace hpr {

/**
 * @brief Bound on sup_t |x(t) - N(t)| over one interval.
 *
 * eps_term = delta * epsilon * rho_sum is rigorous given M. quad_term is an
 * estimate: kappa_bar comes from finite differences of the sampled defect.
 */
struct Certificate {
  double epsilon = 0.0;    ///< max_c |d(t_c)|_2
  double delta = 1.0;      ///< exp(M dt)
  double log_norm = 0.0;   ///< M
  double rho_sum = 0.0;    ///< sum_c |rho_c|
  double kappa = 0.0;      ///< (1/p!) int_0^1 prod_c |s - s_c| ds
  double defect_derivative = 0.0;  ///< estimated max |d^(p)|
  double kappa_bar = 0.0;  ///< kappa * defect_derivative
  double eps_term = 0.0;
  double quad_term = 0.0;
  double total = 0.0;
  int order = 0;
  double dt = 0.0;
};

/// d(t) = N'(t) - F(N(t)).
[[nodiscard]] Vector defect(const RpnnBasis& basis, const WeightMatrix& theta, const Vector& x0,
                            const OdeSystem& system, double t);

/// Largest eigenvalue of (A + A^T) / 2.
[[nodiscard]] double log_norm_2(const Matrix& a);

/// max over samples of log_norm_2(DF(z)); a lower estimate of the max over the region.
[[nodiscard]] double field_log_norm_bound(const OdeSystem& system, const std::vector<Vector>& states);

/// eps (e^{Mt} - 1) / M, with the series eps t (1 + Mt/2 + (Mt)^2/6) when |Mt| < 1e-8.
[[nodiscard]] double defect_error_bound(double eps, double m, double t);

/// exp(M dt).
[[nodiscard]] double sensitivity_bound(double m, double dt);

/// (1/p!) int_0^1 prod_c |s - s_c| ds for nodes scaled to [0, 1].
[[nodiscard]] double interpolation_constant(const std::vector<double>& unit_nodes, int order);

/// Number of defect samples used for the derivative estimate.
inline constexpr int kCertificateSamples = 201;

[[nodiscard]] Certificate quadrature_certificate(const RpnnBasis& basis, const WeightMatrix& theta,
                                                 const Vector& x0, const OdeSystem& system,
                                                 const CollocationGrid& grid, double m);

}  // namespace hpr
