#include "hpr/error_estimates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace hpr {

Vector defect(const RpnnBasis& basis, const WeightMatrix& theta, const Vector& x0,
              const OdeSystem& system, double t) {
  if (!(t >= 0.0 && t <= basis.dt())) {
    throw InvalidArgument("defect: t outside [0, dt]");
  }
  Vector d = eval_network_derivative(basis, theta, t) -
             system.field_unchecked(eval_network(basis, theta, x0, t));
  if (!d.allFinite()) {
    throw NumericalFailure("defect: non-finite evaluation");
  }
  return d;
}

double log_norm_2(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw InvalidArgument("log_norm_2: matrix must be square and nonempty");
  }
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw NumericalFailure("log_norm_2: eigensolver failed");
  }
  return eig.eigenvalues().maxCoeff();
}

double field_log_norm_bound(const OdeSystem& system, const std::vector<Vector>& states) {
  if (states.empty()) {
    throw InvalidArgument("field_log_norm_bound: empty sample set");
  }
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& z : states) {
    m = std::max(m, log_norm_2(system.jacobian(z)));
  }
  return m;
}

double defect_error_bound(double eps, double m, double t) {
  const double mt = m * t;
  if (std::abs(mt) < 1e-8) {
    return eps * t * (1.0 + mt / 2.0 + mt * mt / 6.0);
  }
  return eps * std::expm1(mt) / m;
}

double sensitivity_bound(double m, double dt) { return std::exp(m * dt); }

double interpolation_constant(const std::vector<double>& unit_nodes, int order) {
  // Between consecutive breakpoints the product has one sign, so |prod| is a
  // polynomial of degree C there and 5-point Gauss-Legendre is exact for C <= 9.
  static constexpr std::array<double, 5> x = {0.0, -0.5384693101056831, 0.5384693101056831,
                                              -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> w = {0.5688888888888889, 0.4786286704993665,
                                              0.4786286704993665, 0.2369268850561891,
                                              0.2369268850561891};
  std::vector<double> breaks = {0.0};
  for (double s : unit_nodes) {
    if (s > breaks.back() && s < 1.0) breaks.push_back(s);
  }
  breaks.push_back(1.0);
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
    const double half = 0.5 * (breaks[i + 1] - breaks[i]);
    for (std::size_t q = 0; q < x.size(); ++q) {
      const double s = mid + half * x[q];
      double prod = 1.0;
      for (double sc : unit_nodes) prod *= std::abs(s - sc);
      integral += half * w[q] * prod;
    }
  }
  return integral / std::tgamma(order + 1.0);
}

Certificate quadrature_certificate(const RpnnBasis& basis, const WeightMatrix& theta,
                                   const Vector& x0, const OdeSystem& system,
                                   const CollocationGrid& grid, double m) {
  if (grid.nodes.size() != basis.nodes().size() || std::abs(grid.dt - basis.dt()) > 1e-12 * grid.dt) {
    throw InvalidArgument("quadrature_certificate: grid does not match the basis");
  }
  Certificate cert;
  cert.dt = grid.dt;
  cert.order = grid.order;
  cert.log_norm = m;
  cert.delta = sensitivity_bound(m, grid.dt);
  for (std::size_t c = 0; c < grid.nodes.size(); ++c) {
    cert.epsilon = std::max(cert.epsilon, defect(basis, theta, x0, system, grid.nodes[c]).norm());
    cert.rho_sum += std::abs(grid.weights[c]);
  }
  cert.eps_term = cert.delta * cert.epsilon * cert.rho_sum;

  std::vector<double> unit_nodes;
  for (double t : grid.nodes) unit_nodes.push_back(t / grid.dt);
  cert.kappa = interpolation_constant(unit_nodes, cert.order);

  // p-th forward differences over p + 1 consecutive samples, i.e. central
  // differences about each stencil midpoint; stencils never leave [0, dt].
  const int p = cert.order;
  const int samples = kCertificateSamples;
  const double h = grid.dt / (samples - 1);
  std::vector<Vector> d;
  d.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = i == samples - 1 ? grid.dt : i * h;
    d.push_back(defect(basis, theta, x0, system, t));
  }
  std::vector<double> binom(static_cast<std::size_t>(p) + 1, 1.0);
  for (int k = 1; k <= p; ++k) binom[k] = binom[k - 1] * (p - k + 1) / k;
  const double scale = std::pow(h, -p);
  for (int i = 0; i + p < samples; ++i) {
    Vector diff = Vector::Zero(x0.size());
    for (int k = 0; k <= p; ++k) {
      const double coeff = ((p - k) % 2 == 0 ? 1.0 : -1.0) * binom[k];
      diff += coeff * d[i + k];
    }
    cert.defect_derivative = std::max(cert.defect_derivative, diff.norm() * scale);
  }
  cert.kappa_bar = cert.kappa * cert.defect_derivative;
  cert.quad_term = cert.delta * cert.kappa_bar * std::pow(grid.dt, p + 1);
  cert.total = cert.eps_term + cert.quad_term;
  return cert;
}

}  // namespace hpr
