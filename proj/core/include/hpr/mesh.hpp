/**
 * @file mesh.hpp
 * @brief Coarse time mesh t_0 < t_1 < ... < t_N with per-interval lengths.
 */
#pragma once

#include <cstddef>
#include <vector>

namespace hpr {

/**
 * @brief Ordered coarse nodes, possibly nonuniform.
 *
 * Interval lengths are stored alongside the node times so that a uniform block
 * built from (T, N) has bitwise-equal lengths T/N rather than differences of
 * rounded node times.
 */
class TimeMesh {
 public:
  /// Lengths default to successive node differences.
  explicit TimeMesh(std::vector<double> nodes);
  TimeMesh(std::vector<double> nodes, std::vector<double> lengths);

  /// N intervals of length (t_end - t_begin) / N.
  [[nodiscard]] static TimeMesh uniform(double t_begin, double t_end, int intervals);

  struct Block {
    double end;
    int intervals;
  };
  /// Concatenated uniform blocks starting at t_begin, e.g. {{1, 100}, {100, 33}}.
  [[nodiscard]] static TimeMesh blocks(double t_begin, const std::vector<Block>& blocks);

  [[nodiscard]] int intervals() const noexcept { return static_cast<int>(lengths_.size()); }
  [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] const std::vector<double>& lengths() const noexcept { return lengths_; }
  [[nodiscard]] double node(int n) const { return nodes_.at(static_cast<std::size_t>(n)); }
  [[nodiscard]] double length(int n) const { return lengths_.at(static_cast<std::size_t>(n)); }
  [[nodiscard]] double begin() const noexcept { return nodes_.front(); }
  [[nodiscard]] double end() const noexcept { return nodes_.back(); }

 private:
  void validate() const;

  std::vector<double> nodes_;
  std::vector<double> lengths_;
};

}  // namespace hpr
