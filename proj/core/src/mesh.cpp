#include "hpr/mesh.hpp"

#include <cmath>
#include <string>

#include "hpr/types.hpp"

namespace hpr {

TimeMesh::TimeMesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() >= 2) {
    lengths_.reserve(nodes_.size() - 1);
    for (std::size_t n = 0; n + 1 < nodes_.size(); ++n) {
      lengths_.push_back(nodes_[n + 1] - nodes_[n]);
    }
  }
  validate();
}

TimeMesh::TimeMesh(std::vector<double> nodes, std::vector<double> lengths)
    : nodes_(std::move(nodes)), lengths_(std::move(lengths)) {
  validate();
}

void TimeMesh::validate() const {
  if (nodes_.size() < 2) {
    throw InvalidArgument("TimeMesh: at least one interval is required");
  }
  if (lengths_.size() + 1 != nodes_.size()) {
    throw InvalidArgument("TimeMesh: need exactly one length per interval");
  }
  for (std::size_t n = 0; n < lengths_.size(); ++n) {
    if (!std::isfinite(nodes_[n]) || !std::isfinite(nodes_[n + 1]) || !(nodes_[n + 1] > nodes_[n])) {
      throw InvalidArgument("TimeMesh: nodes must be finite and strictly increasing (at index " +
                            std::to_string(n) + ")");
    }
    if (!(lengths_[n] > 0.0)) {
      throw InvalidArgument("TimeMesh: interval lengths must be positive");
    }
    const double diff = nodes_[n + 1] - nodes_[n];
    if (std::abs(diff - lengths_[n]) > 1e-9 * std::max(1.0, std::abs(diff))) {
      throw InvalidArgument("TimeMesh: length of interval " + std::to_string(n) +
                            " inconsistent with node spacing");
    }
  }
}

TimeMesh TimeMesh::uniform(double t_begin, double t_end, int intervals) {
  return blocks(t_begin, {{t_end, intervals}});
}

TimeMesh TimeMesh::blocks(double t_begin, const std::vector<Block>& blocks) {
  if (blocks.empty()) {
    throw InvalidArgument("TimeMesh::blocks: no blocks given");
  }
  std::vector<double> nodes{t_begin};
  std::vector<double> lengths;
  double start = t_begin;
  for (const auto& block : blocks) {
    if (block.intervals < 1 || !(block.end > start)) {
      throw InvalidArgument("TimeMesh::blocks: each block needs intervals >= 1 and end > start");
    }
    const double h = (block.end - start) / block.intervals;
    for (int k = 1; k <= block.intervals; ++k) {
      nodes.push_back(k == block.intervals ? block.end : start + k * h);
      lengths.push_back(h);
    }
    start = block.end;
  }
  return TimeMesh(std::move(nodes), std::move(lengths));
}

}  // namespace hpr
