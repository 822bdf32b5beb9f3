#include "hpr/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

#include <json.hpp>

#include "hpr/csv.hpp"

namespace hpr {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open " + path.string());
  file << text;
  if (!file) throw Error("write failed for " + path.string());
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw InvalidArgument(where + ": expected an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw InvalidArgument(where + ": unknown key '" + item.key() + "'");
    }
  }
}

template <class T>
void read_if(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

json stats_json(const TimingStats& s) {
  return {{"mean", s.mean}, {"min", s.min}, {"max", s.max}, {"stddev", s.stddev},
          {"repeats", s.repeats}};
}

json train_json(const IntervalTrainReport& r) {
  return {{"iteration", r.iteration},
          {"interval", r.interval},
          {"iterations", r.report.iterations},
          {"initial_cost", r.report.initial_cost},
          {"final_cost", r.report.final_cost},
          {"epsilon", r.report.epsilon},
          {"accepted", r.report.accepted},
          {"rejected", r.report.rejected},
          {"termination", to_string(r.report.termination)},
          {"matrix_free", r.report.matrix_free},
          {"cg_iterations", r.report.cg_iterations},
          {"reused", r.report.reused}};
}

json certificate_json(int interval, const Certificate& c) {
  return {{"interval", interval},   {"epsilon", c.epsilon},     {"delta", c.delta},
          {"M", c.log_norm},        {"rho_sum", c.rho_sum},     {"kappa", c.kappa},
          {"kappa_bar", c.kappa_bar}, {"eps_term", c.eps_term}, {"quad_term_estimated", c.quad_term},
          {"total", c.total},       {"order", c.order},         {"dt", c.dt}};
}

std::vector<std::string> state_header(const OdeSystem& system) {
  std::vector<std::string> header = {"t"};
  for (const auto& name : system.component_names()) header.push_back(name);
  return header;
}

CsvTable node_table(const OdeSystem& system, const std::vector<double>& times,
                    const std::vector<Vector>& states, bool rober_scaling) {
  CsvTable table;
  table.header = state_header(system);
  if (rober_scaling) table.header.push_back("x2_scaled_1e4");
  for (std::size_t n = 0; n < states.size(); ++n) {
    std::vector<double> row = {times[n]};
    row.insert(row.end(), states[n].data(), states[n].data() + states[n].size());
    if (rober_scaling) row.push_back(states[n][1] * 1e4);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<Certificate> certify(const OdeSystem& system, const PararealResult& result,
                                 const std::vector<Vector>& reference, const BasisSpec& spec) {
  std::vector<Certificate> certs;
  const auto count = result.weights.size();
  for (std::size_t n = 0; n < count; ++n) {
    const RpnnBasis& basis = *result.bases[n];
    const Vector& x = result.node_states[n];
    const CollocationGrid grid = make_collocation_grid(spec.node_kind, spec.collocation, basis.dt());
    std::vector<Vector> samples = {reference[n], reference[n + 1]};
    for (double t : grid.nodes) samples.push_back(eval_network(basis, result.weights[n], x, t));
    for (int k = 0; k <= 10; ++k) {
      samples.push_back(eval_network(basis, result.weights[n], x, basis.dt() * k / 10.0));
    }
    const double m = field_log_norm_bound(system, samples);
    certs.push_back(quadrature_certificate(basis, result.weights[n], x, system, grid, m));
  }
  return certs;
}

}  // namespace

TimeMesh MeshSpec::build() const {
  if (blocks.empty()) return TimeMesh::uniform(t0, t_end, intervals);
  return TimeMesh::blocks(t0, blocks);
}

bool MeshSpec::operator==(const MeshSpec& other) const {
  if (blocks.size() != other.blocks.size()) return false;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].end != other.blocks[i].end || blocks[i].intervals != other.blocks[i].intervals) {
      return false;
    }
  }
  return t0 == other.t0 && t_end == other.t_end && intervals == other.intervals;
}

void ExperimentConfig::validate() const {
  const auto& ids = benchmark_ids();
  if (std::find(ids.begin(), ids.end(), benchmark) == ids.end()) {
    throw InvalidArgument("unknown benchmark '" + benchmark + "'");
  }
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (max_it < 1) throw InvalidArgument("max_it must be at least 1");
  if (repeats < 1) throw InvalidArgument("repeats must be at least 1");
  if (workers < 0) throw InvalidArgument("workers must be non-negative");
  if (dense_samples < 2) throw InvalidArgument("dense_samples must be at least 2");
  if (mesh.blocks.empty() && (!(mesh.t_end > mesh.t0) || mesh.intervals < 1)) {
    throw InvalidArgument("mesh needs t_end > t0 and intervals >= 1");
  }
  if (!initial_condition.empty() && benchmark != "burgers") {
    throw InvalidArgument("initial_condition applies to burgers only");
  }
  fine.validate();
  lm.validate();
  const TimeMesh built = mesh.build();
  for (double length : built.lengths()) (void)fine_step_count(length, fine.step);
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  return benchmark == o.benchmark && params == o.params && x0 == o.x0 &&
         initial_condition == o.initial_condition && mesh == o.mesh && fine.kind == o.fine.kind &&
         fine.step == o.fine.step && fine.newton.tol == o.fine.newton.tol &&
         fine.newton.max_iter == o.fine.newton.max_iter && rpnn.hidden == o.rpnn.hidden &&
         rpnn.collocation == o.rpnn.collocation && rpnn.node_kind == o.rpnn.node_kind &&
         rpnn.lower == o.rpnn.lower && rpnn.upper == o.rpnn.upper && lm.max_iter == o.lm.max_iter &&
         lm.residual_tol == o.lm.residual_tol && lm.step_tol == o.lm.step_tol &&
         lm.lambda_init == o.lm.lambda_init && lm.lambda_increase == o.lm.lambda_increase &&
         lm.lambda_decrease == o.lm.lambda_decrease && lm.lambda_min == o.lm.lambda_min &&
         lm.lambda_max == o.lm.lambda_max && seed == o.seed &&
         pin_seed == o.pin_seed && tol == o.tol && max_it == o.max_it && repeats == o.repeats &&
         workers == o.workers && dense_samples == o.dense_samples && output_dir == o.output_dir &&
         certify == o.certify && trace == o.trace;
}

ExperimentConfig default_config(std::string_view benchmark) {
  ExperimentConfig c;
  c.benchmark = std::string(benchmark);
  c.params = benchmark_defaults(benchmark);
  if (benchmark == "sir") {
    c.mesh = {0.0, 10.0, 10, {}};
    c.fine = {FineKind::rk4, 1e-2, {}};
  } else if (benchmark == "rober") {
    c.mesh = {0.0, 100.0, 133, {{1.0, 100}, {100.0, 33}}};
    c.fine = {FineKind::implicit_euler, 1e-4, {}};
  } else if (benchmark == "lorenz") {
    c.mesh = {0.0, 10.0, 250, {}};
    c.fine = {FineKind::rk4, 10.0 / 14500.0, {}};
  } else if (benchmark == "arenstorf") {
    c.mesh = {0.0, 17.0, 125, {}};
    c.fine = {FineKind::rk4, 17.0 / 80000.0, {}};
  } else if (benchmark == "brusselator") {
    c.mesh = {0.0, 12.0, 32, {}};
    c.fine = {FineKind::rk4, 12.0 / 640.0, {}};
  } else if (benchmark == "burgers") {
    c.mesh = {0.0, 1.0, 50, {}};
    c.fine = {FineKind::implicit_euler, 1.0 / 500.0, {}};
    c.initial_condition = "sine";
  }
  return c;
}

Vector burgers_initial_condition(const std::string& name, int grid_size) {
  if (grid_size < 3) throw InvalidArgument("burgers_initial_condition: grid_size must be >= 3");
  const double pi = std::numbers::pi;
  Vector u(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    const double x = static_cast<double>(i) / (grid_size - 1);
    if (name == "sine") {
      u[i] = std::sin(2.0 * pi * x);
    } else if (name == "quadratic") {
      u[i] = x * (1.0 - x);
    } else if (name == "waves") {
      u[i] = std::sin(2.0 * pi * x) + std::cos(4.0 * pi * x) - std::cos(8.0 * pi * x);
    } else {
      throw InvalidArgument("unknown burgers initial condition '" + name + "'");
    }
  }
  return u;
}

Vector initial_state(const ExperimentConfig& config, const OdeSystem& system) {
  if (!config.x0.empty()) {
    if (static_cast<int>(config.x0.size()) != system.dim()) {
      throw InvalidArgument("x0 has " + std::to_string(config.x0.size()) +
                            " entries, system dimension is " + std::to_string(system.dim()));
    }
    return Eigen::Map<const Vector>(config.x0.data(), system.dim());
  }
  const std::string& id = config.benchmark;
  if (id == "sir") return Vector{{0.3, 0.5, 0.2}};
  if (id == "rober") return Vector{{1.0, 0.0, 0.0}};
  if (id == "lorenz") return Vector{{20.0, 5.0, -5.0}};
  if (id == "arenstorf") return Vector{{0.994, 0.0, 0.0, kArenstorfV2}};
  if (id == "brusselator") return Vector{{0.0, 1.0}};
  if (id == "burgers") {
    return burgers_initial_condition(
        config.initial_condition.empty() ? "sine" : config.initial_condition, system.dim());
  }
  throw InvalidArgument("no default initial state for '" + id + "'");
}

ExperimentConfig config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  try {
    reject_unknown(doc,
                   {"benchmark", "params", "x0", "initial_condition", "mesh", "fine", "rpnn", "lm", "seed",
                    "pin_seed", "tol", "max_it", "repeats", "workers", "dense_samples", "output_dir",
                    "certify", "trace"},
                   "config");
    ExperimentConfig c = default_config(doc.value("benchmark", std::string("sir")));
    if (doc.contains("params")) {
      const auto overrides = doc.at("params").get<std::map<std::string, double>>();
      (void)make_benchmark(c.benchmark, overrides);
      for (const auto& [k, v] : overrides) c.params[k] = v;
    }
    read_if(doc, "x0", c.x0);
    read_if(doc, "initial_condition", c.initial_condition);
    if (doc.contains("mesh")) {
      const json& m = doc.at("mesh");
      reject_unknown(m, {"t0", "t_end", "intervals", "blocks"}, "mesh");
      read_if(m, "t0", c.mesh.t0);
      read_if(m, "t_end", c.mesh.t_end);
      read_if(m, "intervals", c.mesh.intervals);
      if (m.contains("blocks")) {
        c.mesh.blocks.clear();
        for (const auto& b : m.at("blocks")) {
          reject_unknown(b, {"end", "intervals"}, "mesh.blocks");
          c.mesh.blocks.push_back({b.at("end").get<double>(), b.at("intervals").get<int>()});
        }
        if (!c.mesh.blocks.empty()) {
          c.mesh.t_end = c.mesh.blocks.back().end;
          c.mesh.intervals = 0;
          for (const auto& b : c.mesh.blocks) c.mesh.intervals += b.intervals;
        }
      } else if (m.contains("intervals") || m.contains("t_end")) {
        c.mesh.blocks.clear();
      }
    }
    if (doc.contains("fine")) {
      const json& f = doc.at("fine");
      reject_unknown(f, {"method", "step", "newton_tol", "newton_max_iter"}, "fine");
      if (f.contains("method")) c.fine.kind = fine_kind_from_string(f.at("method").get<std::string>());
      read_if(f, "step", c.fine.step);
      read_if(f, "newton_tol", c.fine.newton.tol);
      read_if(f, "newton_max_iter", c.fine.newton.max_iter);
    }
    if (doc.contains("rpnn")) {
      const json& r = doc.at("rpnn");
      reject_unknown(r, {"hidden", "collocation", "nodes", "lower", "upper"}, "rpnn");
      read_if(r, "hidden", c.rpnn.hidden);
      read_if(r, "collocation", c.rpnn.collocation);
      if (r.contains("nodes")) c.rpnn.node_kind = node_kind_from_string(r.at("nodes").get<std::string>());
      read_if(r, "lower", c.rpnn.lower);
      read_if(r, "upper", c.rpnn.upper);
    }
    if (doc.contains("lm")) {
      const json& l = doc.at("lm");
      reject_unknown(l,
                     {"max_iter", "residual_tol", "step_tol", "lambda_init", "lambda_increase",
                      "lambda_decrease", "lambda_min", "lambda_max"},
                     "lm");
      read_if(l, "max_iter", c.lm.max_iter);
      read_if(l, "residual_tol", c.lm.residual_tol);
      read_if(l, "step_tol", c.lm.step_tol);
      read_if(l, "lambda_init", c.lm.lambda_init);
      read_if(l, "lambda_increase", c.lm.lambda_increase);
      read_if(l, "lambda_decrease", c.lm.lambda_decrease);
      read_if(l, "lambda_min", c.lm.lambda_min);
      read_if(l, "lambda_max", c.lm.lambda_max);
    }
    read_if(doc, "seed", c.seed);
    read_if(doc, "pin_seed", c.pin_seed);
    read_if(doc, "tol", c.tol);
    read_if(doc, "max_it", c.max_it);
    read_if(doc, "repeats", c.repeats);
    read_if(doc, "workers", c.workers);
    read_if(doc, "dense_samples", c.dense_samples);
    read_if(doc, "output_dir", c.output_dir);
    read_if(doc, "certify", c.certify);
    read_if(doc, "trace", c.trace);
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
}

std::string config_to_json(const ExperimentConfig& c) {
  json mesh = {{"t0", c.mesh.t0}, {"t_end", c.mesh.t_end}, {"intervals", c.mesh.intervals}};
  if (!c.mesh.blocks.empty()) {
    json blocks = json::array();
    for (const auto& b : c.mesh.blocks) blocks.push_back({{"end", b.end}, {"intervals", b.intervals}});
    mesh["blocks"] = blocks;
  }
  json doc = {
      {"benchmark", c.benchmark},
      {"params", c.params},
      {"x0", c.x0},
      {"initial_condition", c.initial_condition},
      {"mesh", mesh},
      {"fine",
       {{"method", to_string(c.fine.kind)},
        {"step", c.fine.step},
        {"newton_tol", c.fine.newton.tol},
        {"newton_max_iter", c.fine.newton.max_iter}}},
      {"rpnn",
       {{"hidden", c.rpnn.hidden},
        {"collocation", c.rpnn.collocation},
        {"nodes", to_string(c.rpnn.node_kind)},
        {"lower", c.rpnn.lower},
        {"upper", c.rpnn.upper}}},
      {"lm",
       {{"max_iter", c.lm.max_iter},
        {"residual_tol", c.lm.residual_tol},
        {"step_tol", c.lm.step_tol},
        {"lambda_init", c.lm.lambda_init},
        {"lambda_increase", c.lm.lambda_increase},
        {"lambda_decrease", c.lm.lambda_decrease},
        {"lambda_min", c.lm.lambda_min},
        {"lambda_max", c.lm.lambda_max}}},
      {"seed", c.seed},
      {"pin_seed", c.pin_seed},
      {"tol", c.tol},
      {"max_it", c.max_it},
      {"repeats", c.repeats},
      {"workers", c.workers},
      {"dense_samples", c.dense_samples},
      {"output_dir", c.output_dir},
      {"certify", c.certify},
      {"trace", c.trace},
  };
  return doc.dump(2);
}

PararealConfig parareal_config(const ExperimentConfig& config, std::uint64_t seed) {
  PararealConfig pc;
  pc.tol = config.tol;
  pc.max_it = config.max_it;
  pc.fine = config.fine;
  pc.rpnn = config.rpnn;
  pc.seed = seed;
  pc.record_trace = config.trace;
  pc.workers = config.workers;
  pc.train.lm = config.lm;
  return pc;
}

Comparison compare_with_serial(const std::vector<Vector>& parareal_nodes,
                               const std::vector<Vector>& serial_nodes) {
  if (parareal_nodes.size() != serial_nodes.size()) {
    throw InvalidArgument("compare_with_serial: node counts differ");
  }
  Comparison cmp;
  for (std::size_t n = 0; n < parareal_nodes.size(); ++n) {
    if (parareal_nodes[n].size() != serial_nodes[n].size()) {
      throw InvalidArgument("compare_with_serial: state lengths differ");
    }
    const Vector diff = parareal_nodes[n] - serial_nodes[n];
    NodeComparison row{diff.norm(), diff.size() ? diff.cwiseAbs().maxCoeff() : 0.0};
    cmp.max_euclidean = std::max(cmp.max_euclidean, row.euclidean);
    cmp.max_abs = std::max(cmp.max_abs, row.max_abs);
    cmp.rows.push_back(row);
  }
  return cmp;
}

TimingStats summarize_times(const std::vector<double>& samples) {
  TimingStats s;
  s.repeats = static_cast<int>(samples.size());
  if (samples.empty()) return s;
  s.min = *std::min_element(samples.begin(), samples.end());
  s.max = *std::max_element(samples.begin(), samples.end());
  double sum = 0.0;
  for (double v : samples) sum += v;
  s.mean = std::clamp(sum / samples.size(), s.min, s.max);
  double var = 0.0;
  for (double v : samples) var += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(var / samples.size());
  return s;
}

TimingStats timing_harness(const std::function<void()>& task, int repeats) {
  if (repeats < 1) throw InvalidArgument("timing_harness: repeats must be at least 1");
  task();
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(repeats));
  for (int r = 0; r < repeats; ++r) {
    const auto start = Clock::now();
    task();
    samples.push_back(seconds_since(start));
  }
  return summarize_times(samples);
}

int exit_code(RunStatus status) {
  switch (status) {
    case RunStatus::converged:
      return 0;
    case RunStatus::not_converged:
      return 3;
    case RunStatus::numerical_failure:
      return 4;
  }
  return 4;
}

RunSummary run_experiment(const ExperimentConfig& config) {
  config.validate();
  const OdeSystem system = make_benchmark(config.benchmark, config.params);
  const Vector x0 = initial_state(config, system);
  const TimeMesh mesh = config.mesh.build();
  const std::filesystem::path out(config.output_dir);
  std::filesystem::create_directories(out);

  RunSummary summary;
  const auto serial_start = Clock::now();
  summary.reference = serial_solve(system, x0, mesh, config.fine);
  summary.serial_seconds = seconds_since(serial_start);
  const bool rober = config.benchmark == "rober";
  write_csv((out / "reference.csv").string(),
            node_table(system, mesh.nodes(), summary.reference, rober));

  json meta;
  meta["config"] = json::parse(config_to_json(config));
  meta["x0"] = std::vector<double>(x0.data(), x0.data() + x0.size());

  std::vector<double> totals;
  std::vector<double> zeroth_means;
  std::vector<std::uint64_t> seeds;
  int run_index = 0;
  bool failed = false;
  auto task = [&] {
    if (failed) return;
    const std::uint64_t seed =
        (run_index == 0 || config.pin_seed) ? config.seed : derive_seed(config.seed, run_index);
    seeds.push_back(seed);
    try {
      PararealResult res = parareal_solve(system, x0, mesh, parareal_config(config, seed));
      if (run_index == 0) {
        summary.result = std::move(res);
      } else {
        totals.push_back(res.timings.total);
        zeroth_means.push_back(res.timings.mean_zeroth_train());
      }
    } catch (const SolveFailure& e) {
      failed = true;
      summary.status = RunStatus::numerical_failure;
      summary.message = e.what();
      meta["failure"] = {{"message", e.what()}, {"iteration", e.iteration()}, {"interval", e.interval()}};
    } catch (const NumericalFailure& e) {
      failed = true;
      summary.status = RunStatus::numerical_failure;
      summary.message = e.what();
      meta["failure"] = {{"message", e.what()}};
    }
    ++run_index;
  };
  (void)timing_harness(task, config.repeats);
  summary.total = summarize_times(totals);
  summary.mean_zeroth_coarse_step = summarize_times(zeroth_means);
  meta["seeds"] = seeds;

  json timings = {{"repeats", config.repeats},
                  {"total_average_time", stats_json(summary.total)},
                  {"average_cost_coarse_step_zeroth_iterate", stats_json(summary.mean_zeroth_coarse_step)},
                  {"serial_seconds", summary.serial_seconds}};

  if (failed) {
    meta["status"] = "numerical_failure";
    write_text(out / "meta.json", meta.dump(2));
    write_text(out / "timings.json", timings.dump(2));
    return summary;
  }

  const PararealResult& res = summary.result;
  summary.status = res.converged ? RunStatus::converged : RunStatus::not_converged;
  summary.comparison = compare_with_serial(res.node_states, summary.reference);

  write_csv((out / "nodes.csv").string(), node_table(system, res.times, res.node_states, rober));

  std::vector<double> dense_t;
  std::vector<Vector> dense_x;
  for (int k = 0; k < config.dense_samples; ++k) {
    const double t = k == config.dense_samples - 1
                         ? mesh.end()
                         : mesh.begin() + (mesh.end() - mesh.begin()) * k / (config.dense_samples - 1);
    dense_t.push_back(t);
    dense_x.push_back(evaluate_piecewise(res, t));
  }
  write_csv((out / "dense.csv").string(), node_table(system, dense_t, dense_x, rober));

  CsvTable errors{{"iteration", "error"}, {}};
  for (std::size_t i = 0; i < res.error_history.size(); ++i) {
    errors.rows.push_back({static_cast<double>(i + 1), res.error_history[i]});
  }
  write_csv((out / "errors.csv").string(), errors);

  CsvTable compare{{"node", "t", "euclidean", "max_abs"}, {}};
  for (std::size_t n = 0; n < summary.comparison.rows.size(); ++n) {
    compare.rows.push_back({static_cast<double>(n), res.times[n], summary.comparison.rows[n].euclidean,
                            summary.comparison.rows[n].max_abs});
  }
  write_csv((out / "compare.csv").string(), compare);

  json per_phase = {{"zeroth_sweep", res.timings.zeroth_sweep},
                    {"fine_sweeps", res.timings.fine_sweeps},
                    {"coarse_sweeps", res.timings.coarse_sweeps},
                    {"total", res.timings.total}};
  timings["artifact_run"] = per_phase;
  write_text(out / "timings.json", timings.dump(2));

  meta["status"] = res.converged ? "converged" : "not_converged";
  meta["iterations"] = res.iterations;
  meta["error_history"] = res.error_history;
  meta["comparison"] = {{"max_euclidean", summary.comparison.max_euclidean},
                        {"max_abs", summary.comparison.max_abs}};
  json bases = json::array();
  const RpnnBasis* last = nullptr;
  for (std::size_t n = 0; n < res.bases.size(); ++n) {
    const RpnnBasis* b = res.bases[n].get();
    if (b == last) continue;
    last = b;
    bases.push_back({{"first_interval", n},
                     {"dt", b->dt()},
                     {"seed", b->seed()},
                     {"resamples", b->resamples()},
                     {"condition", b->condition()},
                     {"scaled_condition", b->scaled_condition()},
                     {"a", std::vector<double>(b->a().data(), b->a().data() + b->a().size())},
                     {"b", std::vector<double>(b->b().data(), b->b().data() + b->b().size())}});
  }
  meta["bases"] = bases;
  json weights = json::array();
  for (const auto& w : res.weights) {
    const Vector v = w.vec();
    weights.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  }
  meta["weights"] = weights;
  json reports = json::array();
  for (const auto& r : res.train_reports) reports.push_back(train_json(r));
  meta["train_reports"] = reports;
  if (config.certify) {
    summary.certificates = certify(system, res, summary.reference, config.rpnn);
    json certs = json::array();
    for (std::size_t n = 0; n < summary.certificates.size(); ++n) {
      certs.push_back(certificate_json(static_cast<int>(n), summary.certificates[n]));
    }
    meta["certificates"] = certs;
  }
  if (config.trace) {
    json trace = json::array();
    for (const auto& it : res.trace) {
      json nodes = json::array();
      for (const auto& x : it) nodes.push_back(std::vector<double>(x.data(), x.data() + x.size()));
      trace.push_back(nodes);
    }
    meta["trace"] = trace;
  }
  write_text(out / "meta.json", meta.dump(2));
  return summary;
}

}  // namespace hpr
