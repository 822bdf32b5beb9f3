#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "hpr/ode_system.hpp"
#include "hpr/types.hpp"

namespace hpr::test {

inline Vector uniform_vector(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

/// Central differences of f at x, one column per coordinate.
inline Matrix fd_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x,
                          double rel_step = 1e-6) {
  const Vector f0 = f(x);
  Matrix jac(f0.size(), x.size());
  const double h = rel_step * (1.0 + x.norm());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    Vector xp = x;
    Vector xm = x;
    xp[k] += h;
    xm[k] -= h;
    jac.col(k) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return jac;
}

inline double rel_error(const Matrix& got, const Matrix& want) {
  const double scale = std::max(want.norm(), 1e-300);
  return (got - want).norm() / scale;
}

/// A state in a box where the benchmark's dynamics are meaningful.
inline Vector probe_state(const std::string& id, int dim, std::mt19937_64& rng) {
  if (id == "sir" || id == "rober") return uniform_vector(rng, dim, 0.0, 1.0);
  if (id == "lorenz") return uniform_vector(rng, dim, -20.0, 20.0);
  if (id == "arenstorf") {
    Vector x = uniform_vector(rng, dim, -1.0, 1.0);
    x[0] = 0.4 + 0.3 * x[0];
    return x;
  }
  if (id == "brusselator") return uniform_vector(rng, dim, 0.1, 4.0);
  return uniform_vector(rng, dim, -1.0, 1.0);
}

}  // namespace hpr::test
