/**
 * @file runner.hpp
 * @brief Experiment configuration, the end-to-end runner and its artifacts.
 *
 * A run writes nodes.csv, dense.csv, errors.csv, reference.csv, compare.csv,
 * timings.json and meta.json into the output directory.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hpr/error_estimates.hpp"
#include "hpr/integrators.hpp"
#include "hpr/mesh.hpp"
#include "hpr/parareal.hpp"
#include "hpr/rpnn.hpp"

namespace hpr {

/// Either N uniform intervals on [t0, t_end] or a list of uniform blocks.
struct MeshSpec {
  double t0 = 0.0;
  double t_end = 1.0;
  int intervals = 1;
  std::vector<TimeMesh::Block> blocks;

  [[nodiscard]] TimeMesh build() const;
  bool operator==(const MeshSpec& other) const;
};

struct ExperimentConfig {
  std::string benchmark = "sir";
  std::map<std::string, double> params;
  /// Empty means the benchmark default (or the Burgers initial_condition).
  std::vector<double> x0;
  /// Burgers only: sine, quadratic or waves.
  std::string initial_condition;
  MeshSpec mesh;
  FineMethod fine;
  BasisSpec rpnn;
  LmOptions lm;
  std::uint64_t seed = 0;
  /// When false, timed repeat r uses a seed derived from (seed, r).
  bool pin_seed = false;
  double tol = 1e-4;
  int max_it = 20;
  int repeats = 1;
  int workers = 1;
  int dense_samples = 1000;
  std::string output_dir = "out";
  bool certify = false;
  bool trace = false;

  void validate() const;
  bool operator==(const ExperimentConfig& other) const;
};

/// Paper setup of a benchmark; SIR uses T = 10 with N = 10.
[[nodiscard]] ExperimentConfig default_config(std::string_view benchmark);

/// JSON object; unknown keys raise InvalidArgument. Missing keys keep the benchmark defaults.
[[nodiscard]] ExperimentConfig config_from_json(const std::string& text);
[[nodiscard]] std::string config_to_json(const ExperimentConfig& config);

/// Initial state for the config (explicit x0 or the benchmark default).
[[nodiscard]] Vector initial_state(const ExperimentConfig& config, const OdeSystem& system);

/// Burgers initial profile sampled on the grid: sine, quadratic or waves.
[[nodiscard]] Vector burgers_initial_condition(const std::string& name, int grid_size);

[[nodiscard]] PararealConfig parareal_config(const ExperimentConfig& config, std::uint64_t seed);

struct NodeComparison {
  double euclidean = 0.0;
  double max_abs = 0.0;
};

struct Comparison {
  std::vector<NodeComparison> rows;
  double max_euclidean = 0.0;
  double max_abs = 0.0;
};

[[nodiscard]] Comparison compare_with_serial(const std::vector<Vector>& parareal_nodes,
                                             const std::vector<Vector>& serial_nodes);

struct TimingStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double stddev = 0.0;
  int repeats = 0;
};

[[nodiscard]] TimingStats summarize_times(const std::vector<double>& samples);

/// Runs task once untimed, then `repeats` timed runs (seconds).
[[nodiscard]] TimingStats timing_harness(const std::function<void()>& task, int repeats);

enum class RunStatus { converged, not_converged, numerical_failure };

struct RunSummary {
  RunStatus status = RunStatus::converged;
  std::string message;
  PararealResult result;
  std::vector<Vector> reference;
  Comparison comparison;
  std::vector<Certificate> certificates;
  TimingStats total;
  TimingStats mean_zeroth_coarse_step;
  double serial_seconds = 0.0;
};

/**
 * @brief Runs the experiment and writes every artifact into config.output_dir.
 *
 * The first solve provides the artifacts and is excluded from timings.
 * Solver failures are reported in the summary and in meta.json.
 */
RunSummary run_experiment(const ExperimentConfig& config);

/// 0 converged, 3 not converged, 4 numerical failure.
[[nodiscard]] int exit_code(RunStatus status);

}  // namespace hpr
