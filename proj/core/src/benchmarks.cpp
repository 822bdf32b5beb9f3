#include <cmath>
#include <memory>
#include <string>

#include "hpr/ode_system.hpp"

namespace hpr {

namespace {

using Params = std::map<std::string, double>;

Params merge_overrides(std::string_view id, Params defaults, const Params& overrides) {
  for (const auto& [key, value] : overrides) {
    auto it = defaults.find(key);
    if (it == defaults.end()) {
      throw InvalidArgument("benchmark '" + std::string(id) + "' has no parameter '" + key + "'");
    }
    if (!std::isfinite(value)) {
      throw InvalidArgument("benchmark '" + std::string(id) + "': parameter '" + key +
                            "' must be finite");
    }
    it->second = value;
  }
  return defaults;
}

OdeSystem make_sir(Params p) {
  const double beta = p.at("beta");
  const double gamma = p.at("gamma");
  auto field = [beta, gamma](const Vector& x) -> Vector {
    Vector f(3);
    const double infection = beta * x[0] * x[1];
    f[0] = -infection;
    f[1] = infection - gamma * x[1];
    f[2] = gamma * x[1];
    return f;
  };
  auto jac = [beta, gamma](const Vector& x) -> Matrix {
    Matrix j = Matrix::Zero(3, 3);
    j(0, 0) = -beta * x[1];
    j(0, 1) = -beta * x[0];
    j(1, 0) = beta * x[1];
    j(1, 1) = beta * x[0] - gamma;
    j(2, 1) = gamma;
    return j;
  };
  return OdeSystem("sir", 3, field, jac, std::move(p), {"S", "I", "R"});
}

OdeSystem make_rober(Params p) {
  const double k1 = p.at("k1");
  const double k2 = p.at("k2");
  const double k3 = p.at("k3");
  auto field = [k1, k2, k3](const Vector& x) -> Vector {
    Vector f(3);
    f[0] = -k1 * x[0] + k3 * x[1] * x[2];
    f[1] = k1 * x[0] - k2 * x[1] * x[1] - k3 * x[1] * x[2];
    f[2] = k2 * x[1] * x[1];
    return f;
  };
  auto jac = [k1, k2, k3](const Vector& x) -> Matrix {
    Matrix j(3, 3);
    j << -k1, k3 * x[2], k3 * x[1],
         k1, -2.0 * k2 * x[1] - k3 * x[2], -k3 * x[1],
         0.0, 2.0 * k2 * x[1], 0.0;
    return j;
  };
  return OdeSystem("rober", 3, field, jac, std::move(p), {"x1", "x2", "x3"});
}

OdeSystem make_lorenz(Params p) {
  const double sigma = p.at("sigma");
  const double r = p.at("r");
  const double b = p.at("b");
  auto field = [sigma, r, b](const Vector& x) -> Vector {
    Vector f(3);
    f[0] = sigma * (x[1] - x[0]);
    f[1] = -x[0] * x[2] + r * x[0] - x[1];
    f[2] = x[0] * x[1] - b * x[2];
    return f;
  };
  auto jac = [sigma, r, b](const Vector& x) -> Matrix {
    Matrix j(3, 3);
    j << -sigma, sigma, 0.0,
         r - x[2], -1.0, -x[0],
         x[1], x[0], -b;
    return j;
  };
  return OdeSystem("lorenz", 3, field, jac, std::move(p), {"x1", "x2", "x3"});
}

// State ordering (x1, x2, v1, v2) with v = x'.
OdeSystem make_arenstorf(Params p) {
  const double a = p.at("a");
  const double b = p.at("b");
  auto field = [a, b](const Vector& s) -> Vector {
    const double x1 = s[0], x2 = s[1], v1 = s[2], v2 = s[3];
    const double r1sq = (x1 + a) * (x1 + a) + x2 * x2;
    const double r2sq = (x1 - b) * (x1 - b) + x2 * x2;
    const double d1 = r1sq * std::sqrt(r1sq);
    const double d2 = r2sq * std::sqrt(r2sq);
    Vector f(4);
    f[0] = v1;
    f[1] = v2;
    f[2] = x1 + 2.0 * v2 - b * (x1 + a) / d1 - a * (x1 - b) / d2;
    f[3] = x2 - 2.0 * v1 - b * x2 / d1 - a * x2 / d2;
    return f;
  };
  auto jac = [a, b](const Vector& s) -> Matrix {
    const double x1 = s[0], x2 = s[1];
    const double r1sq = (x1 + a) * (x1 + a) + x2 * x2;
    const double r2sq = (x1 - b) * (x1 - b) + x2 * x2;
    const double inv_r1_3 = 1.0 / (r1sq * std::sqrt(r1sq));
    const double inv_r2_3 = 1.0 / (r2sq * std::sqrt(r2sq));
    const double inv_r1_5 = inv_r1_3 / r1sq;
    const double inv_r2_5 = inv_r2_3 / r2sq;
    const double p1 = x1 + a;
    const double p2 = x1 - b;
    Matrix j = Matrix::Zero(4, 4);
    j(0, 2) = 1.0;
    j(1, 3) = 1.0;
    j(2, 0) = 1.0 - b * (inv_r1_3 - 3.0 * p1 * p1 * inv_r1_5) - a * (inv_r2_3 - 3.0 * p2 * p2 * inv_r2_5);
    j(2, 1) = 3.0 * b * p1 * x2 * inv_r1_5 + 3.0 * a * p2 * x2 * inv_r2_5;
    j(2, 3) = 2.0;
    j(3, 0) = j(2, 1);
    j(3, 1) = 1.0 - b * (inv_r1_3 - 3.0 * x2 * x2 * inv_r1_5) - a * (inv_r2_3 - 3.0 * x2 * x2 * inv_r2_5);
    j(3, 2) = -2.0;
    return j;
  };
  return OdeSystem("arenstorf", 4, field, jac, std::move(p), {"x1", "x2", "v1", "v2"});
}

OdeSystem make_brusselator(Params p) {
  const double big_a = p.at("A");
  const double big_b = p.at("B");
  auto field = [big_a, big_b](const Vector& x) -> Vector {
    Vector f(2);
    const double x1sq_x2 = x[0] * x[0] * x[1];
    f[0] = big_a + x1sq_x2 - (big_b + 1.0) * x[0];
    f[1] = big_b * x[0] - x1sq_x2;
    return f;
  };
  auto jac = [big_b](const Vector& x) -> Matrix {
    Matrix j(2, 2);
    j << 2.0 * x[0] * x[1] - (big_b + 1.0), x[0] * x[0],
         big_b - 2.0 * x[0] * x[1], -x[0] * x[0];
    return j;
  };
  return OdeSystem("brusselator", 2, field, jac, std::move(p), {"x1", "x2"});
}

}  // namespace

const std::vector<std::string>& benchmark_ids() {
  static const std::vector<std::string> ids = {"sir",       "rober",       "lorenz",
                                               "arenstorf", "brusselator", "burgers"};
  return ids;
}

std::map<std::string, double> benchmark_defaults(std::string_view id) {
  if (id == "sir") return {{"beta", 0.1}, {"gamma", 0.1}};
  if (id == "rober") return {{"k1", 0.04}, {"k2", 3.0e7}, {"k3", 1.0e4}};
  if (id == "lorenz") return {{"sigma", 10.0}, {"r", 28.0}, {"b", 8.0 / 3.0}};
  if (id == "arenstorf") return {{"a", 0.12277471}, {"b", 1.0 - 0.12277471}};
  if (id == "brusselator") return {{"A", 1.0}, {"B", 3.0}};
  if (id == "burgers") return {{"nu", 1.0 / 50.0}, {"grid_size", 51.0}};
  throw InvalidArgument("unknown benchmark '" + std::string(id) + "'");
}

OdeSystem make_benchmark(std::string_view id, const std::map<std::string, double>& overrides) {
  auto params = merge_overrides(id, benchmark_defaults(id), overrides);
  if (id == "sir") return make_sir(std::move(params));
  if (id == "rober") return make_rober(std::move(params));
  if (id == "lorenz") return make_lorenz(std::move(params));
  if (id == "arenstorf") {
    // b follows a unless given explicitly.
    if (overrides.contains("a") && !overrides.contains("b")) {
      params["b"] = 1.0 - params["a"];
    }
    return make_arenstorf(std::move(params));
  }
  if (id == "brusselator") return make_brusselator(std::move(params));
  // burgers
  const double n = params.at("grid_size");
  if (n != std::floor(n)) {
    throw InvalidArgument("burgers: grid_size must be an integer");
  }
  return burgers_semidiscretize(static_cast<int>(n), params.at("nu"));
}

OdeSystem burgers_semidiscretize(int grid_size, double viscosity) {
  if (grid_size < 3) {
    throw InvalidArgument("burgers_semidiscretize: grid_size must be at least 3");
  }
  if (!(viscosity >= 0.0) || !std::isfinite(viscosity)) {
    throw InvalidArgument("burgers_semidiscretize: viscosity must be finite and non-negative");
  }
  auto disc = std::make_shared<BurgersDiscretization>();
  disc->grid_size = grid_size;
  disc->viscosity = viscosity;
  disc->dx = 1.0 / (grid_size - 1);
  disc->d1 = Matrix::Zero(grid_size, grid_size);
  disc->d2 = Matrix::Zero(grid_size, grid_size);
  const double inv_2dx = 1.0 / (2.0 * disc->dx);
  const double inv_dx2 = 1.0 / (disc->dx * disc->dx);
  for (int i = 1; i + 1 < grid_size; ++i) {
    disc->d1(i, i - 1) = -inv_2dx;
    disc->d1(i, i + 1) = inv_2dx;
    disc->d2(i, i - 1) = inv_dx2;
    disc->d2(i, i) = -2.0 * inv_dx2;
    disc->d2(i, i + 1) = inv_dx2;
  }

  std::shared_ptr<const BurgersDiscretization> shared = disc;
  auto field = [shared](const Vector& u) -> Vector {
    return -u.cwiseProduct(shared->d1 * u) + shared->viscosity * (shared->d2 * u);
  };
  auto jac = [shared](const Vector& u) -> Matrix {
    Matrix j = shared->viscosity * shared->d2;
    j -= u.asDiagonal() * shared->d1;
    j.diagonal() -= shared->d1 * u;
    return j;
  };
  std::vector<std::string> names;
  names.reserve(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    names.push_back("u" + std::to_string(i));
  }
  OdeSystem system("burgers", grid_size, field, jac,
                   {{"nu", viscosity}, {"grid_size", static_cast<double>(grid_size)}},
                   std::move(names));
  system.attach_burgers(std::move(shared));
  return system;
}

}  // namespace hpr
