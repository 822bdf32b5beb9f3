#include "hpr/rpnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hpr {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RpnnBasis::RpnnBasis(Vector a, Vector b, std::vector<double> nodes, double dt, NodeKind node_kind)
    : a_(std::move(a)), b_(std::move(b)), nodes_(std::move(nodes)), dt_(dt), node_kind_(node_kind) {
  if (a_.size() == 0 || a_.size() != b_.size()) {
    throw InvalidArgument("RpnnBasis: a and b must be nonempty and of equal length");
  }
  if (nodes_.empty()) {
    throw InvalidArgument("RpnnBasis: no collocation nodes");
  }
  if (!(dt_ > 0.0)) {
    throw InvalidArgument("RpnnBasis: dt must be positive");
  }
  const auto hidden = a_.size();
  const auto count = static_cast<Eigen::Index>(nodes_.size());
  sigma_b_ = b_.array().tanh().matrix();
  feat_h_.resize(count, hidden);
  feat_hprime_.resize(count, hidden);
  for (Eigen::Index c = 0; c < count; ++c) {
    const auto pre = (a_.array() * nodes_[c] + b_.array()).eval();
    const auto th = pre.tanh().eval();
    feat_h_.row(c) = th.matrix().transpose();
    feat_hprime_.row(c) = ((1.0 - th.square()) * a_.array()).matrix().transpose();
  }
  feat_h0_ = Vector::Ones(count) * sigma_b_.transpose();
  feat_shift_ = feat_h_ - feat_h0_;

  Eigen::JacobiSVD<Matrix> svd(feat_hprime_);
  const auto& sv = svd.singularValues();
  min_singular_ = sv.size() > 0 ? sv[sv.size() - 1] : 0.0;
  condition_ = (min_singular_ > 0.0) ? sv[0] / min_singular_ : std::numeric_limits<double>::infinity();
}

double RpnnBasis::scaled_condition() const noexcept {
  const double scale = std::min(1.0, dt_);
  return condition_ * std::pow(scale, collocation() - 1);
}

bool RpnnBasis::nodes_interior() const noexcept {
  return std::all_of(nodes_.begin(), nodes_.end(), [this](double t) { return t > 0.0 && t < dt_; });
}

Vector RpnnBasis::features(double t) const {
  return ((a_.array() * t + b_.array()).tanh() - sigma_b_.array()).matrix();
}

Vector RpnnBasis::feature_derivatives(double t) const {
  const auto th = (a_.array() * t + b_.array()).tanh();
  return ((1.0 - th.square()) * a_.array()).matrix();
}

WeightMatrix WeightMatrix::from_vec(const Vector& v, int hidden, int dim) {
  if (v.size() != static_cast<Eigen::Index>(hidden) * dim) {
    throw InvalidArgument("WeightMatrix::from_vec: length differs from hidden * dim");
  }
  return WeightMatrix(Eigen::Map<const Matrix>(v.data(), hidden, dim));
}

Vector WeightMatrix::vec() const {
  return Eigen::Map<const Vector>(values_.data(), values_.size());
}

RpnnBasis sample_basis(const BasisSpec& spec, double dt, std::uint64_t seed) {
  if (spec.hidden < 1 || spec.hidden != spec.collocation) {
    throw InvalidArgument("sample_basis: requires hidden == collocation >= 1");
  }
  if (!(spec.lower < spec.upper)) {
    throw InvalidArgument("sample_basis: lower bound must be below upper bound");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidArgument("sample_basis: dt must be positive");
  }
  const auto nodes = collocation_nodes(spec.node_kind, spec.collocation, dt);
  double worst = 0.0;
  for (int attempt = 0; attempt < kMaxBasisDraws; ++attempt) {
    const std::uint64_t draw_seed = attempt == 0 ? seed : derive_seed(seed, 1000003ULL + attempt);
    std::mt19937_64 rng(draw_seed);
    std::uniform_real_distribution<double> dist(spec.lower, spec.upper);
    Vector a(spec.hidden);
    Vector b(spec.hidden);
    for (int h = 0; h < spec.hidden; ++h) a[h] = dist(rng);
    for (int h = 0; h < spec.hidden; ++h) b[h] = dist(rng);
    RpnnBasis basis(std::move(a), std::move(b), nodes, dt, spec.node_kind);
    const double cond = basis.scaled_condition();
    if (std::isfinite(cond) && cond <= kMaxFeatureCondition) {
      basis.resamples_ = attempt;
      basis.seed_ = draw_seed;
      return basis;
    }
    worst = std::max(worst, cond);
  }
  throw NumericalFailure("sample_basis: all " + std::to_string(kMaxBasisDraws) +
                         " draws ill-conditioned (worst scaled condition " + std::to_string(worst) +
                         ")");
}

Vector eval_network(const RpnnBasis& basis, const WeightMatrix& theta, const Vector& x0, double t) {
  if (theta.hidden() != basis.hidden() || theta.dim() != x0.size()) {
    throw InvalidArgument("eval_network: theta shape does not match basis and state");
  }
  return x0 + theta.values().transpose() * basis.features(t);
}

Vector eval_network_derivative(const RpnnBasis& basis, const WeightMatrix& theta, double t) {
  if (theta.hidden() != basis.hidden()) {
    throw InvalidArgument("eval_network_derivative: theta shape does not match basis");
  }
  return theta.values().transpose() * basis.feature_derivatives(t);
}

double admissible_step_bound(const RpnnBasis& basis, double lipschitz) {
  if (!(lipschitz >= 0.0)) {
    throw InvalidArgument("admissible_step_bound: Lipschitz estimate must be non-negative");
  }
  if (basis.hidden() != basis.collocation()) {
    throw InvalidArgument("admissible_step_bound: requires a square H'");
  }
  if (!(basis.min_singular_value() > 0.0)) {
    throw NumericalFailure("admissible_step_bound: H' is singular");
  }
  if (lipschitz == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return basis.min_singular_value() /
         (lipschitz * std::sqrt(static_cast<double>(basis.collocation())) * basis.a().norm());
}

}  // namespace hpr
