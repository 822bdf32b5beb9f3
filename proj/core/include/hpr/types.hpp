/**
 * @file types.hpp
 * @brief Shared numeric aliases and the exception hierarchy used across the library.
 */
#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace hpr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/** @brief Base class for every error raised by the library. */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** @brief Precondition violation: bad shape, bad parameter, unknown name. */
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/** @brief Non-finite values or a failed linear solve inside a numerical kernel. */
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/** @brief An explicit stage produced a non-finite value. */
class StepFailure : public NumericalFailure {
 public:
  StepFailure(const std::string& what, int stage)
      : NumericalFailure(what), stage_(stage) {}
  [[nodiscard]] int stage() const noexcept { return stage_; }

 private:
  int stage_;
};

/** @brief Newton iteration of an implicit step did not meet its tolerance. */
class NewtonNonconvergence : public NumericalFailure {
 public:
  NewtonNonconvergence(const std::string& what, double residual_norm)
      : NumericalFailure(what), residual_norm_(residual_norm) {}
  [[nodiscard]] double residual_norm() const noexcept { return residual_norm_; }

 private:
  double residual_norm_;
};

/** @brief Coarse training failed; carries Parareal context when known. */
class TrainingFailure : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/**
 * @brief Error raised inside a Parareal run, tagged with where it happened.
 *
 * iteration 0 is the zeroth coarse sweep.
 */
class SolveFailure : public NumericalFailure {
 public:
  SolveFailure(const std::string& what, int iteration, int interval)
      : NumericalFailure(what), iteration_(iteration), interval_(interval) {}
  [[nodiscard]] int iteration() const noexcept { return iteration_; }
  [[nodiscard]] int interval() const noexcept { return interval_; }

 private:
  int iteration_;
  int interval_;
};

[[nodiscard]] inline bool all_finite(const Eigen::Ref<const Matrix>& m) {
  return m.allFinite();
}

}  // namespace hpr
