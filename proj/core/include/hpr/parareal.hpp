/**
 * @file parareal.hpp
 * @brief Parareal with a trained random projection network as the coarse
 *        propagator and a fixed-step integrator as the fine one.
 *
 * Iteration i (i >= 1):
 *   xF_{n+1}   = fine(x_n^{i-1})                        for all n, in parallel
 *   theta_n^i  = train at x_n^i, warm-started from theta_n^{i-1}  (sequential)
 *   xS_{n+1}   = N_{theta_n^i}(dt_n; x_n^i)
 *   x_{n+1}^i  = xF_{n+1} + xS_{n+1} - xS_{n+1}^{prev}
 * until max_n |x_{n+1}^i - x_{n+1}^{i-1}| <= tol or i == max_it.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "hpr/collocation.hpp"
#include "hpr/integrators.hpp"
#include "hpr/mesh.hpp"
#include "hpr/ode_system.hpp"
#include "hpr/rpnn.hpp"
#include "hpr/types.hpp"

namespace hpr {

struct PararealConfig {
  double tol = 1e-4;
  int max_it = 20;
  FineMethod fine{};
  BasisSpec rpnn{};
  std::uint64_t seed = 0;
  bool record_trace = false;
  /// Threads for the fine sweep; 0 means hardware concurrency.
  int workers = 1;
  TrainOptions train{};

  void validate() const;
};

/// Wall-clock seconds per phase of one solve.
struct PhaseTimings {
  double zeroth_sweep = 0.0;
  double fine_sweeps = 0.0;
  double coarse_sweeps = 0.0;
  double total = 0.0;
  /// Training time of each interval in the zeroth sweep.
  std::vector<double> zeroth_train;

  [[nodiscard]] double mean_zeroth_train() const;
};

struct IntervalTrainReport {
  int iteration = 0;  ///< 0 is the zeroth sweep
  int interval = 0;
  TrainReport report;
};

struct PararealResult {
  std::vector<double> times;
  std::vector<Vector> node_states;
  /// One basis per interval; intervals of equal length share the same object.
  std::vector<std::shared_ptr<const RpnnBasis>> bases;
  std::vector<WeightMatrix> weights;
  int iterations = 0;
  std::vector<double> error_history;
  bool converged = false;
  PhaseTimings timings;
  std::vector<IntervalTrainReport> train_reports;
  /// Node arrays of every iterate, starting with the zeroth; filled when record_trace is set.
  std::vector<std::vector<Vector>> trace;
};

/// xF + (xS_new - xS_prev); exactly xF when the coarse values agree.
[[nodiscard]] Vector correction_step(const Vector& xf, const Vector& xs_new, const Vector& xs_prev);

/// max over n >= 1 of |current_n - previous_n|_2.
[[nodiscard]] double stopping_error(const std::vector<Vector>& current,
                                    const std::vector<Vector>& previous);

/// One basis per distinct interval length, seeded from (seed, first interval index).
[[nodiscard]] std::vector<std::shared_ptr<const RpnnBasis>> build_bases(const TimeMesh& mesh,
                                                                        const BasisSpec& spec,
                                                                        std::uint64_t seed);

struct ZerothIterate {
  std::vector<Vector> nodes;
  std::vector<WeightMatrix> weights;
  /// Coarse values x^{S,-1}_{n+1}; entry 0 is unused and holds x0.
  std::vector<Vector> coarse;
  std::vector<TrainReport> reports;
  std::vector<double> train_seconds;
};

/// Sequential coarse sweep from x0 (theta_0 starts at zero, theta_n at theta_{n-1}).
[[nodiscard]] ZerothIterate zeroth_iterate(const OdeSystem& system, const Vector& x0,
                                           const TimeMesh& mesh,
                                           const std::vector<std::shared_ptr<const RpnnBasis>>& bases,
                                           const TrainOptions& train = {});

/**
 * @brief Runs the hybrid Parareal iteration.
 *
 * Training and fine-step errors are rethrown as SolveFailure with the
 * iteration and interval. Output is independent of config.workers.
 */
[[nodiscard]] PararealResult parareal_solve(const OdeSystem& system, const Vector& x0,
                                            const TimeMesh& mesh, const PararealConfig& config);

/// Piecewise network solution; t_n maps to node_states[n] exactly.
[[nodiscard]] Vector evaluate_piecewise(const PararealResult& result, double t);

}  // namespace hpr
