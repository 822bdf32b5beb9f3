#include "hpr/parareal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <thread>

namespace hpr {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool same_state(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

std::string failure_message(const char* phase, int iteration, int interval, const char* what) {
  return std::string(phase) + " failed at iteration " + std::to_string(iteration) + ", interval " +
         std::to_string(interval) + ": " + what;
}

// Fork-join over intervals; each task writes only its own slot.
std::vector<Vector> fine_sweep(const OdeSystem& system, const std::vector<Vector>& nodes,
                               const TimeMesh& mesh, const FineMethod& fine, int workers,
                               int iteration) {
  const int count = mesh.intervals();
  std::vector<Vector> out(static_cast<std::size_t>(count) + 1);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  auto task = [&](int n) {
    try {
      out[n + 1] = fine_propagate(system, nodes[n], mesh.length(n), fine);
    } catch (...) {
      errors[n] = std::current_exception();
    }
  };
  const int threads = std::clamp(workers, 1, count);
  if (threads == 1) {
    for (int n = 0; n < count; ++n) task(n);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (int n = w; n < count; n += threads) task(n);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (int n = 0; n < count; ++n) {
    if (!errors[n]) continue;
    try {
      std::rethrow_exception(errors[n]);
    } catch (const InvalidArgument&) {
      throw;
    } catch (const std::exception& e) {
      throw SolveFailure(failure_message("fine propagation", iteration, n, e.what()), iteration, n);
    }
  }
  return out;
}

TrainResult train_interval(const RpnnBasis& basis, const Vector& x, const OdeSystem& system,
                           const WeightMatrix& init, const TrainOptions& options, int iteration,
                           int interval) {
  try {
    return train_coarse(basis, x, system, init, options);
  } catch (const InvalidArgument&) {
    throw;
  } catch (const std::exception& e) {
    throw SolveFailure(failure_message("coarse training", iteration, interval, e.what()), iteration,
                       interval);
  }
}

}  // namespace

void PararealConfig::validate() const {
  if (!(tol > 0.0)) throw InvalidArgument("PararealConfig: tol must be positive");
  if (max_it < 1) throw InvalidArgument("PararealConfig: max_it must be at least 1");
  if (workers < 0) throw InvalidArgument("PararealConfig: workers must be non-negative");
  fine.validate();
  train.lm.validate();
}

double PhaseTimings::mean_zeroth_train() const {
  if (zeroth_train.empty()) return 0.0;
  return std::accumulate(zeroth_train.begin(), zeroth_train.end(), 0.0) /
         static_cast<double>(zeroth_train.size());
}

Vector correction_step(const Vector& xf, const Vector& xs_new, const Vector& xs_prev) {
  if (xf.size() != xs_new.size() || xf.size() != xs_prev.size()) {
    throw InvalidArgument("correction_step: state lengths differ");
  }
  return xf + (xs_new - xs_prev);
}

double stopping_error(const std::vector<Vector>& current, const std::vector<Vector>& previous) {
  if (current.size() != previous.size()) {
    throw InvalidArgument("stopping_error: node counts differ");
  }
  double err = 0.0;
  for (std::size_t n = 1; n < current.size(); ++n) {
    if (current[n].size() != previous[n].size()) {
      throw InvalidArgument("stopping_error: state lengths differ");
    }
    err = std::max(err, (current[n] - previous[n]).norm());
  }
  return err;
}

std::vector<std::shared_ptr<const RpnnBasis>> build_bases(const TimeMesh& mesh,
                                                          const BasisSpec& spec,
                                                          std::uint64_t seed) {
  std::map<double, std::shared_ptr<const RpnnBasis>> by_length;
  std::vector<std::shared_ptr<const RpnnBasis>> bases;
  bases.reserve(static_cast<std::size_t>(mesh.intervals()));
  for (int n = 0; n < mesh.intervals(); ++n) {
    const double dt = mesh.length(n);
    auto it = by_length.find(dt);
    if (it == by_length.end()) {
      auto basis = std::make_shared<const RpnnBasis>(
          sample_basis(spec, dt, derive_seed(seed, static_cast<std::uint64_t>(n))));
      it = by_length.emplace(dt, std::move(basis)).first;
    }
    bases.push_back(it->second);
  }
  return bases;
}

ZerothIterate zeroth_iterate(const OdeSystem& system, const Vector& x0, const TimeMesh& mesh,
                             const std::vector<std::shared_ptr<const RpnnBasis>>& bases,
                             const TrainOptions& train) {
  const int count = mesh.intervals();
  if (static_cast<int>(bases.size()) != count) {
    throw InvalidArgument("zeroth_iterate: need one basis per interval");
  }
  if (x0.size() != system.dim() || !x0.allFinite()) {
    throw InvalidArgument("zeroth_iterate: x0 must be finite with length dim");
  }
  ZerothIterate z;
  z.nodes.reserve(static_cast<std::size_t>(count) + 1);
  z.nodes.push_back(x0);
  z.coarse.push_back(x0);
  WeightMatrix init(bases.front()->hidden(), system.dim());
  for (int n = 0; n < count; ++n) {
    const RpnnBasis& basis = *bases[n];
    // Weights from a different basis are no useful start.
    if (n > 0 && bases[n] != bases[n - 1]) init = WeightMatrix(basis.hidden(), system.dim());
    const auto start = Clock::now();
    TrainResult tr = train_interval(basis, z.nodes[n], system, init, train, 0, n);
    z.train_seconds.push_back(seconds_since(start));
    Vector next = eval_network(basis, tr.theta, z.nodes[n], basis.dt());
    if (!next.allFinite()) {
      throw SolveFailure(failure_message("coarse evaluation", 0, n, "non-finite state"), 0, n);
    }
    z.coarse.push_back(next);
    z.nodes.push_back(std::move(next));
    init = tr.theta;
    z.weights.push_back(std::move(tr.theta));
    z.reports.push_back(std::move(tr.report));
  }
  return z;
}

PararealResult parareal_solve(const OdeSystem& system, const Vector& x0, const TimeMesh& mesh,
                              const PararealConfig& config) {
  config.validate();
  const auto start_total = Clock::now();
  const int count = mesh.intervals();
  for (int n = 0; n < count; ++n) {
    (void)fine_step_count(mesh.length(n), config.fine.step);
  }
  const int workers = config.workers == 0
                          ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))
                          : config.workers;

  PararealResult result;
  result.times = mesh.nodes();
  result.bases = build_bases(mesh, config.rpnn, config.seed);

  const auto start_zeroth = Clock::now();
  ZerothIterate z = zeroth_iterate(system, x0, mesh, result.bases, config.train);
  result.timings.zeroth_sweep = seconds_since(start_zeroth);
  result.timings.zeroth_train = z.train_seconds;
  for (int n = 0; n < count; ++n) {
    result.train_reports.push_back({0, n, z.reports[n]});
  }

  std::vector<Vector> nodes = std::move(z.nodes);
  std::vector<Vector> coarse = std::move(z.coarse);
  std::vector<WeightMatrix> weights = std::move(z.weights);
  // State each theta_n was trained at, so an unchanged start reuses it.
  std::vector<Vector> trained_at(nodes.begin(), nodes.end() - 1);
  if (config.record_trace) result.trace.push_back(nodes);

  double error = std::numeric_limits<double>::infinity();
  int iteration = 0;
  while (iteration < config.max_it && error > config.tol) {
    ++iteration;
    const auto start_fine = Clock::now();
    const std::vector<Vector> fine = fine_sweep(system, nodes, mesh, config.fine, workers, iteration);
    result.timings.fine_sweeps += seconds_since(start_fine);

    const auto start_coarse = Clock::now();
    std::vector<Vector> next(nodes.size());
    next[0] = x0;
    for (int n = 0; n < count; ++n) {
      const RpnnBasis& basis = *result.bases[n];
      Vector xs = coarse[n + 1];
      if (same_state(next[n], trained_at[n])) {
        TrainReport reused;
        reused.reused = true;
        reused.termination = LmTermination::residual_tol;
        result.train_reports.push_back({iteration, n, reused});
      } else {
        TrainResult tr =
            train_interval(basis, next[n], system, weights[n], config.train, iteration, n);
        xs = eval_network(basis, tr.theta, next[n], basis.dt());
        weights[n] = std::move(tr.theta);
        trained_at[n] = next[n];
        result.train_reports.push_back({iteration, n, std::move(tr.report)});
      }
      next[n + 1] = correction_step(fine[n + 1], xs, coarse[n + 1]);
      if (!next[n + 1].allFinite()) {
        throw SolveFailure(failure_message("correction", iteration, n, "non-finite state"),
                           iteration, n);
      }
      coarse[n + 1] = std::move(xs);
    }
    error = stopping_error(next, nodes);
    nodes = std::move(next);
    result.timings.coarse_sweeps += seconds_since(start_coarse);
    result.error_history.push_back(error);
    if (config.record_trace) result.trace.push_back(nodes);
  }

  result.iterations = iteration;
  result.converged = error <= config.tol;
  result.node_states = std::move(nodes);
  result.weights = std::move(weights);
  result.timings.total = seconds_since(start_total);
  return result;
}

Vector evaluate_piecewise(const PararealResult& result, double t) {
  const auto& times = result.times;
  if (times.size() < 2 || result.node_states.size() != times.size()) {
    throw InvalidArgument("evaluate_piecewise: result has no solution");
  }
  if (!(t >= times.front() && t <= times.back())) {
    throw InvalidArgument("evaluate_piecewise: t outside [t_0, t_N]");
  }
  if (t == times.back()) {
    return result.node_states.back();
  }
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const auto n = static_cast<std::size_t>(std::distance(times.begin(), it) - 1);
  return eval_network(*result.bases[n], result.weights[n], result.node_states[n], t - times[n]);
}

}  // namespace hpr
