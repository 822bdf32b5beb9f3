// hpr-run: runs one benchmark experiment and writes CSV/JSON artifacts.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hpr/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Parareal with a random projection network coarse propagator"};
  std::string benchmark;
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int workers = -1;
  int repeats = 0;
  double tol = 0.0;
  int max_it = 0;
  bool certify = false;
  bool trace = false;
  bool print_config = false;

  app.add_option("--benchmark", benchmark, "sir, rober, lorenz, arenstorf, brusselator or burgers");
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "base seed");
  app.add_option("--workers", workers, "fine sweep threads (0 = all cores)");
  app.add_option("--repeats", repeats, "timed repeats after the artifact run");
  app.add_option("--tol", tol, "Parareal stopping tolerance");
  app.add_option("--max-it", max_it, "Parareal iteration limit");
  app.add_flag("--certify", certify, "attach a-posteriori certificates to meta.json");
  app.add_flag("--trace", trace, "store every iterate in meta.json");
  app.add_flag("--print-config", print_config, "print the resolved config and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  hpr::ExperimentConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      std::stringstream buf;
      buf << file.rdbuf();
      config = hpr::config_from_json(buf.str());
      if (!benchmark.empty() && benchmark != config.benchmark) {
        throw hpr::InvalidArgument("--benchmark disagrees with the config file");
      }
    } else {
      config = hpr::default_config(benchmark.empty() ? "sir" : benchmark);
    }
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (*seed_opt) config.seed = seed;
    if (workers >= 0) config.workers = workers;
    if (repeats > 0) config.repeats = repeats;
    if (tol > 0.0) config.tol = tol;
    if (max_it > 0) config.max_it = max_it;
    if (certify) config.certify = true;
    if (trace) config.trace = true;
    config.validate();
  } catch (const hpr::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }

  if (print_config) {
    std::cout << hpr::config_to_json(config) << '\n';
    return 0;
  }

  try {
    const hpr::RunSummary summary = hpr::run_experiment(config);
    if (summary.status == hpr::RunStatus::numerical_failure) {
      std::cerr << "numerical failure: " << summary.message << '\n';
    } else {
      const auto& res = summary.result;
      std::cout << config.benchmark << ": " << (res.converged ? "converged" : "not converged")
                << " after " << res.iterations << " iterations";
      if (!res.error_history.empty()) std::cout << ", last error " << res.error_history.back();
      std::cout << ", max node error vs serial " << summary.comparison.max_euclidean << '\n';
      std::cout << "artifacts in " << config.output_dir << '\n';
    }
    return hpr::exit_code(summary.status);
  } catch (const hpr::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 4;
  }
}
