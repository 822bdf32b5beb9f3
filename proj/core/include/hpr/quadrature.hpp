/**
 * @file quadrature.hpp
 * @brief Collocation nodes on [0, dt] and the interpolatory quadrature weights they induce.
 */
#pragma once

#include <string>
#include <vector>

#include "hpr/types.hpp"

namespace hpr {

enum class NodeKind { uniform, lobatto };

[[nodiscard]] const char* to_string(NodeKind kind);
[[nodiscard]] NodeKind node_kind_from_string(const std::string& name);

/// Largest node count for which the moment system is solved.
inline constexpr int kMaxCollocationPoints = 9;

/**
 * @brief Collocation nodes on [0, dt] with quadrature weights exact on
 *        polynomials of degree < order.
 */
struct CollocationGrid {
  NodeKind kind = NodeKind::uniform;
  double dt = 1.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

/**
 * @brief C collocation times in [0, dt].
 *
 * uniform: equispaced with both endpoints (the midpoint when C = 1).
 * lobatto: Gauss-Lobatto points, i.e. the endpoints plus the roots of P'_{C-1}.
 */
[[nodiscard]] std::vector<double> collocation_nodes(NodeKind kind, int count, double dt);

/**
 * @brief Weights rho with sum_c rho_c t_c^k = dt^{k+1} / (k+1) for k < C.
 *
 * Solved on nodes rescaled to [0, 1]. Throws InvalidArgument for
 * non-increasing nodes or more than kMaxCollocationPoints nodes.
 */
[[nodiscard]] std::vector<double> quadrature_weights(const std::vector<double>& nodes, double dt);

[[nodiscard]] CollocationGrid make_collocation_grid(NodeKind kind, int count, double dt);

}  // namespace hpr
