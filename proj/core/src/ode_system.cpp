#include "hpr/ode_system.hpp"

#include <utility>

namespace hpr {

Vector BurgersDiscretization::grid() const {
  Vector x(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    x[i] = i * dx;
  }
  return x;
}

OdeSystem::OdeSystem(std::string name, int dim, FieldFn field, JacobianFn jacobian,
                     std::map<std::string, double> params,
                     std::vector<std::string> component_names)
    : name_(std::move(name)),
      dim_(dim),
      field_(std::move(field)),
      jacobian_(std::move(jacobian)),
      params_(std::move(params)),
      component_names_(std::move(component_names)) {
  if (dim_ <= 0) {
    throw InvalidArgument("OdeSystem: dimension must be positive");
  }
  if (!field_ || !jacobian_) {
    throw InvalidArgument("OdeSystem: field and jacobian must be set");
  }
  if (component_names_.empty()) {
    for (int i = 0; i < dim_; ++i) {
      component_names_.push_back("x" + std::to_string(i + 1));
    }
  } else if (static_cast<int>(component_names_.size()) != dim_) {
    throw InvalidArgument("OdeSystem: component name count differs from dimension");
  }
}

namespace {

void check_state(const OdeSystem& system, const Vector& x, const char* who) {
  if (x.size() != system.dim()) {
    throw InvalidArgument(std::string(who) + ": state length " + std::to_string(x.size()) +
                          " differs from dimension " + std::to_string(system.dim()));
  }
  if (!x.allFinite()) {
    throw NumericalFailure(std::string(who) + ": non-finite state");
  }
}

}  // namespace

Vector OdeSystem::field(const Vector& x) const {
  check_state(*this, x, "field");
  return field_(x);
}

Matrix OdeSystem::jacobian(const Vector& x) const {
  check_state(*this, x, "jacobian");
  return jacobian_(x);
}

Matrix eval_jacobian(const OdeSystem& system, const Vector& x) { return system.jacobian(x); }

OdeSystem make_linear_system(const Matrix& a, std::string name) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw InvalidArgument("make_linear_system: matrix must be square and nonempty");
  }
  return OdeSystem(
      std::move(name), static_cast<int>(a.rows()),
      [a](const Vector& x) -> Vector { return a * x; },
      [a](const Vector&) -> Matrix { return a; });
}

OdeSystem make_constant_system(const Vector& c, std::string name) {
  if (c.size() == 0) {
    throw InvalidArgument("make_constant_system: empty vector");
  }
  const auto d = c.size();
  return OdeSystem(
      std::move(name), static_cast<int>(d), [c](const Vector&) -> Vector { return c; },
      [d](const Vector&) -> Matrix { return Matrix::Zero(d, d); });
}

}  // namespace hpr
