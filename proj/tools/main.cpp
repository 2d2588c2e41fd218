// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: instance/graph ingestion, solver and certificate
// invocation, JSON emission. Exit codes: 0 success, 1 usage error, 2 invalid
// input file, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "dispersion/certify.hpp"
#include "dispersion/core.hpp"
#include "dispersion/io.hpp"
#include "dispersion/maxcut.hpp"
#include "dispersion/rng.hpp"
#include "dispersion/solve.hpp"

namespace {

using dispersion::Certificate;
using dispersion::Configuration;
using dispersion::DualSolution;
using dispersion::DualVector;
using dispersion::Graph;
using dispersion::Instance;
using dispersion::SolveParams;
using dispersion::SolveResult;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNumerical = 3;

// --seed wins over the DISPERSION_SEED environment variable.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("DISPERSION_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable DISPERSION_SEED\n";
    }
  }
  return 0;
}

void emit(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    dispersion::write_json_file(j, out_path);
  }
}

void print_solve_summary(const Instance& inst, const SolveResult& result,
                         const std::string& backend, std::uint64_t seed) {
  const Certificate& cert = result.certificate;
  std::cerr << "instance: n=" << inst.size() << ", "
            << inst.weight_pairs().size() << " weighted pairs\n"
            << "backend:  " << backend << " (seed " << seed << ")\n"
            << "primal value         " << result.primal_value << "\n"
            << "dual bound           " << result.dual_bound << "\n"
            << "relative gap         " << cert.relative_gap << "\n"
            << "verdict              " << to_string(cert.verdict) << "\n"
            << "iterations           " << result.iterations
            << (result.converged ? " (converged: " : " (not converged: ")
            << result.status << ")\n";
}

int run_solve(const std::string& instance_path, double tol,
              const std::optional<std::uint64_t>& seed_flag, int restarts,
              const std::string& backend, const std::string& out_path) {
  const Instance inst = dispersion::load_instance(instance_path);
  SolveParams params;
  params.tol = tol;
  params.seed = resolve_seed(seed_flag);
  params.restarts = restarts;

  const SolveResult result = backend == "ellipsoid"
                                 ? dispersion::ellipsoid_solve(inst, params)
                                 : dispersion::solve_primal(inst, params);
  print_solve_summary(inst, result, backend, params.seed);
  emit(dispersion::result_json(result, params.seed), out_path);
  return result.converged ? kExitOk : kExitNumerical;
}

int run_dual(const std::string& instance_path, const std::string& out_path) {
  const Instance inst = dispersion::load_instance(instance_path);
  SolveParams params;
  params.seed = resolve_seed(std::nullopt);  // descent itself is seed-free
  const DualSolution sol = dispersion::minimize_dual(inst, params);
  std::cerr << "dual value           " << sol.value << "\n"
            << "iterations           " << sol.iterations << "\n";
  if (!sol.attained) {
    std::cerr << "note: infimum possibly unattained (multipliers ran toward "
                 "the boundary)\n";
  }
  emit(dispersion::dual_solution_json(sol, params.seed), out_path);
  return kExitOk;
}

int run_certify(const std::string& instance_path,
                const std::string& points_path, const std::string& x_path,
                const std::string& out_path) {
  const Instance inst = dispersion::load_instance(instance_path);
  const Configuration cfg = dispersion::load_points(points_path);
  std::optional<DualVector> x;
  if (!x_path.empty()) {
    x = dispersion::load_dual(x_path);
  }
  const Certificate cert = dispersion::certify(inst, cfg, x, 1e-6);
  std::cerr << "primal value         " << cert.primal_value << "\n"
            << "dual value           " << cert.dual_value << "\n"
            << "gap                  " << cert.gap << "\n"
            << "stationarity         " << cert.stationarity_residual << "\n"
            << "verdict              " << to_string(cert.verdict) << "\n";
  for (const auto& r : cert.reasons) {
    std::cerr << "  - " << r << "\n";
  }
  emit(dispersion::certificate_json(cert), out_path);
  return kExitOk;
}

int run_simplex(int n, const std::string& out_path) {
  const Configuration cfg = dispersion::simplex_configuration(n);
  nlohmann::json j;
  j["n"] = n;
  j["dim"] = cfg.dim();
  j["points"] = dispersion::points_json(cfg);
  std::cerr << "regular " << n << "-simplex in dimension " << cfg.dim()
            << "\n";
  emit(j, out_path);
  return kExitOk;
}

int run_maxcut(const std::string& graph_path, int trials,
               const std::optional<std::uint64_t>& seed_flag, bool exact,
               const std::string& out_path) {
  const Graph g = dispersion::load_graph(graph_path);
  const Instance inst = dispersion::graph_to_instance(g);
  SolveParams params;
  params.tol = 1e-4;
  params.seed = resolve_seed(seed_flag);

  const SolveResult solved = dispersion::solve_primal(inst, params);
  const dispersion::RoundingResult rounded = dispersion::hyperplane_round(
      solved.config, g, trials, dispersion::derive_seed(params.seed, 0xc47));

  double mean = 0.0;
  for (double v : rounded.trial_values) mean += v;
  mean /= static_cast<double>(rounded.trial_values.size());

  nlohmann::json j;
  j["n"] = g.n;
  j["trials"] = trials;
  j["seed"] = params.seed;
  j["primal_value"] = dispersion::encode_real(solved.primal_value);
  j["best"] = dispersion::cut_json(rounded.best);
  j["mean_value"] = dispersion::encode_real(mean);

  std::cerr << "graph: n=" << g.n << ", " << g.edges.size() << " edges\n"
            << "dispersion value     " << solved.primal_value << "\n"
            << "best rounded cut     " << rounded.best.value << " over "
            << trials << " trials (mean " << mean << ")\n";

  if (exact) {
    const dispersion::Cut opt = dispersion::brute_force_maxcut(g);
    j["exact"] = {{"optimum", dispersion::encode_real(opt.value)},
                  {"best_ratio", dispersion::encode_real(
                                     opt.value > 0 ? rounded.best.value /
                                                         opt.value
                                                   : 1.0)},
                  {"mean_ratio", dispersion::encode_real(
                                     opt.value > 0 ? mean / opt.value : 1.0)}};
    std::cerr << "exact optimum        " << opt.value << " (best ratio "
              << (opt.value > 0 ? rounded.best.value / opt.value : 1.0)
              << ")\n";
  }
  emit(j, out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted max-dispersion solver and duality certificates"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  std::string solve_instance;
  double solve_tol = 1e-6;
  std::optional<std::uint64_t> solve_seed;
  int solve_restarts = 3;
  std::string solve_backend = "ascent";
  std::string solve_out;
  solve->add_option("instance", solve_instance, "instance JSON file")
      ->required();
  solve->add_option("--tol", solve_tol, "relative duality-gap target");
  solve->add_option("--seed", solve_seed, "RNG seed");
  solve->add_option("--restarts", solve_restarts, "random restarts");
  solve->add_option("--backend", solve_backend, "ascent | ellipsoid")
      ->check(CLI::IsMember({"ascent", "ellipsoid"}));
  solve->add_option("--out", solve_out, "write result JSON here");

  // dual
  auto* dual = app.add_subcommand("dual", "minimize the dual objective");
  std::string dual_instance;
  std::string dual_out;
  dual->add_option("instance", dual_instance, "instance JSON file")
      ->required();
  dual->add_option("--out", dual_out, "write dual JSON here");

  // certify
  auto* certify = app.add_subcommand(
      "certify", "evaluate a duality certificate for given points");
  std::string certify_instance, certify_points, certify_x, certify_out;
  certify->add_option("instance", certify_instance, "instance JSON file")
      ->required();
  certify->add_option("--points", certify_points, "points JSON file")
      ->required();
  certify->add_option("--x", certify_x,
                      "dual multipliers (extracted when absent)");
  certify->add_option("--out", certify_out, "write certificate JSON here");

  // simplex
  auto* simplex =
      app.add_subcommand("simplex", "emit the regular n-simplex optimum");
  int simplex_n = 0;
  std::string simplex_out;
  simplex->add_option("--n", simplex_n, "number of points (>= 2)")
      ->required();
  simplex->add_option("--out", simplex_out, "write points JSON here");

  // maxcut
  auto* maxcut = app.add_subcommand(
      "maxcut", "solve the unit-ball relaxation and round to a cut");
  std::string maxcut_graph, maxcut_out;
  int maxcut_trials = 1000;
  std::optional<std::uint64_t> maxcut_seed;
  bool maxcut_exact = false;
  maxcut->add_option("graph", maxcut_graph, "graph JSON file")->required();
  maxcut->add_option("--trials", maxcut_trials, "rounding trials");
  maxcut->add_option("--seed", maxcut_seed, "RNG seed");
  maxcut->add_flag("--exact", maxcut_exact,
                   "also compute the brute-force optimum (n <= 20)");
  maxcut->add_option("--out", maxcut_out, "write cut JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) {
      return run_solve(solve_instance, solve_tol, solve_seed, solve_restarts,
                       solve_backend, solve_out);
    }
    if (dual->parsed()) {
      return run_dual(dual_instance, dual_out);
    }
    if (certify->parsed()) {
      return run_certify(certify_instance, certify_points, certify_x,
                         certify_out);
    }
    if (simplex->parsed()) {
      if (simplex_n < 2) {
        std::cerr << "error: --n must be at least 2\n";
        return kExitUsage;
      }
      return run_simplex(simplex_n, simplex_out);
    }
    if (maxcut->parsed()) {
      if (maxcut_trials < 1) {
        std::cerr << "error: --trials must be at least 1\n";
        return kExitUsage;
      }
      return run_maxcut(maxcut_graph, maxcut_trials, maxcut_seed, maxcut_exact,
                        maxcut_out);
    }
  } catch (const dispersion::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& d : e.details()) {
      std::cerr << "  - " << d << "\n";
    }
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
