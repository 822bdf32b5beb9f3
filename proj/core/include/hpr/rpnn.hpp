/**
 * @file rpnn.hpp
 * @brief Random projection network ansatz N(t) = x0 + theta^T (tanh(a t + b) - tanh(b)).
 *
 * Only the outer layer theta (H x d) is trained. The inner weights a, b are
 * drawn once from U(lower, upper) and frozen; the feature matrices at the
 * collocation nodes are precomputed:
 *
 *   H  (c, h) = tanh(a_h t_c + b_h)
 *   H' (c, h) = tanh'(a_h t_c + b_h) a_h
 *   H0 (c, h) = tanh(b_h)
 */
#pragma once

#include <cstdint>
#include <vector>

#include "hpr/quadrature.hpp"
#include "hpr/types.hpp"

namespace hpr {

/// Inner-layer sampling parameters.
struct BasisSpec {
  int hidden = 5;
  int collocation = 5;
  NodeKind node_kind = NodeKind::uniform;
  double lower = -1.0;
  double upper = 1.0;
};

/// Conditioning limit on H' (after rescaling time to [0, 1]) before a redraw.
inline constexpr double kMaxFeatureCondition = 1e12;
/// Number of draws attempted before sample_basis gives up.
inline constexpr int kMaxBasisDraws = 10;

/// splitmix64 finalizer; used to derive per-interval and per-attempt seeds.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

class RpnnBasis {
 public:
  /// Builds a basis from explicit inner weights (used by tests and deserialization).
  RpnnBasis(Vector a, Vector b, std::vector<double> nodes, double dt,
            NodeKind node_kind = NodeKind::uniform);

  [[nodiscard]] int hidden() const noexcept { return static_cast<int>(a_.size()); }
  [[nodiscard]] int collocation() const noexcept { return static_cast<int>(nodes_.size()); }
  [[nodiscard]] double dt() const noexcept { return dt_; }
  [[nodiscard]] NodeKind node_kind() const noexcept { return node_kind_; }
  [[nodiscard]] const Vector& a() const noexcept { return a_; }
  [[nodiscard]] const Vector& b() const noexcept { return b_; }
  [[nodiscard]] const Vector& sigma_b() const noexcept { return sigma_b_; }
  [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] const Matrix& feat_h() const noexcept { return feat_h_; }
  [[nodiscard]] const Matrix& feat_hprime() const noexcept { return feat_hprime_; }
  [[nodiscard]] const Matrix& feat_h0() const noexcept { return feat_h0_; }
  /// H - H0, the map from theta to the displacement of the ansatz at the nodes.
  [[nodiscard]] const Matrix& feat_shift() const noexcept { return feat_shift_; }

  /// 2-norm condition number of H' (infinite when singular).
  [[nodiscard]] double condition() const noexcept { return condition_; }
  /// Smallest singular value of H'.
  [[nodiscard]] double min_singular_value() const noexcept { return min_singular_; }
  /// Condition of H' with the dt^{C-1} small-interval scaling removed.
  [[nodiscard]] double scaled_condition() const noexcept;

  /// Redraws needed before the accepted draw (0 when the first draw was accepted).
  [[nodiscard]] int resamples() const noexcept { return resamples_; }
  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  /// True when every node lies strictly inside (0, dt).
  [[nodiscard]] bool nodes_interior() const noexcept;
  /// False when t lies outside [0, dt] (evaluation still proceeds).
  [[nodiscard]] bool in_domain(double t) const noexcept { return t >= 0.0 && t <= dt_; }

  /// tanh(a t + b) - tanh(b).
  [[nodiscard]] Vector features(double t) const;
  /// tanh'(a t + b) .* a.
  [[nodiscard]] Vector feature_derivatives(double t) const;

 private:
  friend RpnnBasis sample_basis(const BasisSpec&, double, std::uint64_t);

  Vector a_;
  Vector b_;
  Vector sigma_b_;
  std::vector<double> nodes_;
  double dt_;
  NodeKind node_kind_;
  Matrix feat_h_;
  Matrix feat_hprime_;
  Matrix feat_h0_;
  Matrix feat_shift_;
  double condition_ = 0.0;
  double min_singular_ = 0.0;
  int resamples_ = 0;
  std::uint64_t seed_ = 0;
};

/**
 * @brief Trainable outer layer theta in R^{H x d}.
 *
 * vec() stacks columns, matching the column ordering of residual_jacobian.
 */
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(int hidden, int dim) : values_(Matrix::Zero(hidden, dim)) {}
  explicit WeightMatrix(Matrix values) : values_(std::move(values)) {}

  [[nodiscard]] static WeightMatrix from_vec(const Vector& v, int hidden, int dim);

  [[nodiscard]] int hidden() const noexcept { return static_cast<int>(values_.rows()); }
  [[nodiscard]] int dim() const noexcept { return static_cast<int>(values_.cols()); }
  [[nodiscard]] const Matrix& values() const noexcept { return values_; }
  [[nodiscard]] Matrix& values() noexcept { return values_; }
  [[nodiscard]] Vector vec() const;

 private:
  Matrix values_;
};

/**
 * @brief Draws a, b ~ U(lower, upper) and precomputes the features at the
 *        collocation nodes of the requested kind.
 *
 * A draw whose scaled condition exceeds kMaxFeatureCondition is redrawn with
 * a derived seed, up to kMaxBasisDraws draws in total.
 */
[[nodiscard]] RpnnBasis sample_basis(const BasisSpec& spec, double dt, std::uint64_t seed);

/// N(t) = x0 + theta^T (tanh(a t + b) - tanh(b)); N(0) == x0 exactly.
[[nodiscard]] Vector eval_network(const RpnnBasis& basis, const WeightMatrix& theta,
                                  const Vector& x0, double t);

/// N'(t) = theta^T (tanh'(a t + b) .* a).
[[nodiscard]] Vector eval_network_derivative(const RpnnBasis& basis, const WeightMatrix& theta,
                                             double t);

/**
 * @brief Right endpoint of the admissible step interval of the fixed-point
 *        existence result: 1 / (|H'^{-1}|_2 Lip(F) sqrt(C) |a|_2).
 *
 * Advisory only: the benchmark fields have no global Lipschitz constant, so
 * callers pass a local estimate. Returns +inf when lipschitz is 0.
 */
[[nodiscard]] double admissible_step_bound(const RpnnBasis& basis, double lipschitz);

}  // namespace hpr
