#include "hpr/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace hpr {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::uniform:
      return "uniform";
    case NodeKind::lobatto:
      return "lobatto";
  }
  return "unknown";
}

NodeKind node_kind_from_string(const std::string& name) {
  if (name == "uniform") return NodeKind::uniform;
  if (name == "lobatto") return NodeKind::lobatto;
  throw InvalidArgument("unknown collocation node kind '" + name + "'");
}

namespace {

struct LegendreValues {
  double p;       // P_n(x)
  double dp;      // P_n'(x)
  double d2p;     // P_n''(x)
};

// Three-term recurrence; valid for |x| < 1.
LegendreValues legendre(int n, double x) {
  double p_prev = 1.0;
  double p = x;
  if (n == 0) {
    return {1.0, 0.0, 0.0};
  }
  for (int k = 2; k <= n; ++k) {
    const double p_next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
    p_prev = p;
    p = p_next;
  }
  const double one_minus_x2 = 1.0 - x * x;
  const double dp = n * (p_prev - x * p) / one_minus_x2;
  const double d2p = (2.0 * x * dp - n * (n + 1.0) * p) / one_minus_x2;
  return {p, dp, d2p};
}

// Interior Gauss-Lobatto points on (-1, 1): roots of P'_{n}, n = count - 1.
std::vector<double> lobatto_interior(int count) {
  const int n = count - 1;
  std::vector<double> roots;
  for (int k = 1; k < n; ++k) {
    double x = -std::cos(std::numbers::pi * k / n);
    for (int it = 0; it < 100; ++it) {
      const auto v = legendre(n, x);
      const double step = v.dp / v.d2p;
      x -= step;
      if (std::abs(step) <= 1e-16) {
        break;
      }
    }
    roots.push_back(x);
  }
  return roots;
}

}  // namespace

std::vector<double> collocation_nodes(NodeKind kind, int count, double dt) {
  if (count < 1) {
    throw InvalidArgument("collocation_nodes: need at least one node");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidArgument("collocation_nodes: dt must be positive");
  }
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(count));
  if (kind == NodeKind::uniform) {
    if (count == 1) {
      nodes.push_back(0.5 * dt);
      return nodes;
    }
    for (int c = 0; c < count; ++c) {
      nodes.push_back(c == count - 1 ? dt : c * dt / (count - 1));
    }
    return nodes;
  }
  if (count < 2) {
    throw InvalidArgument("collocation_nodes: Lobatto rule needs at least two nodes");
  }
  nodes.push_back(0.0);
  for (double x : lobatto_interior(count)) {
    nodes.push_back(0.5 * (x + 1.0) * dt);
  }
  nodes.push_back(dt);
  return nodes;
}

std::vector<double> quadrature_weights(const std::vector<double>& nodes, double dt) {
  const int count = static_cast<int>(nodes.size());
  if (count < 1) {
    throw InvalidArgument("quadrature_weights: no nodes");
  }
  if (count > kMaxCollocationPoints) {
    throw InvalidArgument("quadrature_weights: more than " +
                          std::to_string(kMaxCollocationPoints) +
                          " nodes makes the moment system too ill-conditioned");
  }
  if (!(dt > 0.0)) {
    throw InvalidArgument("quadrature_weights: dt must be positive");
  }
  for (int c = 0; c < count; ++c) {
    if (nodes[c] < 0.0 || nodes[c] > dt || (c > 0 && !(nodes[c] > nodes[c - 1]))) {
      throw InvalidArgument("quadrature_weights: nodes must be strictly increasing in [0, dt]");
    }
  }
  // Moment system on [0, 1]: V(k, c) = s_c^k, rhs_k = 1 / (k + 1).
  Matrix moments(count, count);
  Vector rhs(count);
  for (int c = 0; c < count; ++c) {
    const double s = nodes[c] / dt;
    double power = 1.0;
    for (int k = 0; k < count; ++k) {
      moments(k, c) = power;
      power *= s;
    }
  }
  for (int k = 0; k < count; ++k) {
    rhs[k] = 1.0 / (k + 1.0);
  }
  Eigen::FullPivLU<Matrix> lu(moments);
  if (!lu.isInvertible()) {
    throw InvalidArgument("quadrature_weights: singular moment system");
  }
  const Vector unit = lu.solve(rhs);
  std::vector<double> weights(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) {
    weights[c] = unit[c] * dt;
  }
  return weights;
}

CollocationGrid make_collocation_grid(NodeKind kind, int count, double dt) {
  CollocationGrid grid;
  grid.kind = kind;
  grid.dt = dt;
  grid.nodes = collocation_nodes(kind, count, dt);
  grid.weights = quadrature_weights(grid.nodes, dt);
  grid.order = count;
  return grid;
}

}  // namespace hpr
