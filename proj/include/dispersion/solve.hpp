// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DISPERSION_SOLVE_HPP
#define DISPERSION_SOLVE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dispersion/certify.hpp"
#include "dispersion/types.hpp"

namespace dispersion {

enum class StepRule {
  DiminishingSqrt,  // c / sqrt(k)
  Constant,         // c
};

struct SolveParams {
  double tol = 1e-6;      // relative duality-gap target
  int max_iters = 2000;   // per-stage iteration cap
  std::uint64_t seed = 0;  // drives every random choice
  int restarts = 3;
  StepRule step_rule = StepRule::DiminishingSqrt;
};

struct SolveResult {
  GramMatrix gram;
  Configuration config;
  double primal_value = 0.0;
  double dual_bound = 0.0;
  Certificate certificate;
  int iterations = 0;
  bool converged = false;
  std::string status;  // distinct reason: gap target / hypotheses fail / cap
  std::vector<double> best_value_trace;  // best-so-far lifted objective
};

/// Vertices of the regular n-simplex: n unit vectors in dimension n-1 with
/// pairwise inner products -1/(n-1) and centroid at the origin. Requires
/// n >= 2.
Configuration simplex_configuration(int n);

/// Projected supergradient ascent on the lifted concave objective over
/// {PSD, Y_ii <= l^2(i)}, from seeded random PSD starts (one per restart),
/// followed by Gram factorization and point-space polish. The attached
/// certificate carries the duality evidence; converged is true when the
/// relative gap meets params.tol, or when the configuration is stationary
/// but the strong-duality hypotheses fail (reported distinctly in status).
SolveResult solve_primal(const Instance& inst, const SolveParams& params);

/// Ellipsoid-method backend: binary search on the objective level with
/// eigenvector/diagonal feasibility cuts and supergradient objective cuts.
/// Kept for cross-validation; solve_primal is the default. Guarded to
/// n <= 12 (matrix dimension n(n+1)/2). Throws on guard violation.
SolveResult ellipsoid_solve(const Instance& inst, const SolveParams& params);

/// Projected gradient ascent in point space: step along the force field,
/// then radially project each point onto its ball. The objective never
/// decreases across accepted steps; terminates at stationarity (residual as
/// in certify below an internal tolerance derived from params.tol) or at the
/// iteration cap. Coincident weighted pairs are jittered by a seeded
/// perturbation of magnitude 1e-9 * max radius; zero-radius points stay
/// pinned at the origin.
Configuration local_ascent(const Instance& inst, const Configuration& cfg0,
                           const SolveParams& params);

struct DualSolution {
  DualVector x;  // normalized to sum 1
  double value = 0.0;
  bool attained = true;  // false: infimum possibly unattained (boundary run)
  int iterations = 0;
  bool converged = false;
};

/// Minimizes the dual objective via the substitution x_i = exp(y_i): each
/// squared factor is a sum of exponentials of affine maps of y, so the
/// log-objective is convex and plain gradient descent with backtracking
/// converges globally. Output is scale-normalized to sum(x) = 1.
DualSolution minimize_dual(const Instance& inst, const SolveParams& params);

}  // namespace dispersion

#endif  // DISPERSION_SOLVE_HPP
