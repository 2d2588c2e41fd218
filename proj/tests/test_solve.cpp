// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "dispersion/core.hpp"
#include "dispersion/solve.hpp"
#include "oracles.hpp"

using namespace dispersion;
using namespace dispersion::testing;

TEST_CASE("simplex_configuration geometry") {
  const Configuration two = simplex_configuration(2);
  CHECK(two.dim() == 1);
  CHECK(two.points()(0, 0) == doctest::Approx(1.0));
  CHECK(two.points()(1, 0) == doctest::Approx(-1.0));

  for (int n = 3; n <= 9; ++n) {
    const Configuration cfg = simplex_configuration(n);
    CHECK(cfg.dim() == n - 1);
    CHECK(cfg.points().colwise().sum().norm() <= 1e-12);  // centroid
    for (int i = 0; i < n; ++i) {
      CHECK(cfg.point(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
      for (int j = i + 1; j < n; ++j) {
        CHECK(cfg.point(i).dot(cfg.point(j)) ==
              doctest::Approx(-1.0 / (n - 1)).epsilon(1e-10));
        const double d = (cfg.point(i) - cfg.point(j)).norm();
        CHECK(d == doctest::Approx(std::sqrt(2.0 + 2.0 / (n - 1)))
                       .epsilon(1e-12));
      }
    }
  }

  // n = 3: all pairwise distances sqrt(3).
  const Configuration tri = simplex_configuration(3);
  CHECK((tri.point(0) - tri.point(1)).norm() ==
        doctest::Approx(std::sqrt(3.0)));

  // n = 4: unit tetrahedron objective under uniform weights.
  CHECK(objective(uniform_instance(4), simplex_configuration(4)) ==
        doctest::Approx(4.0 * std::sqrt(6.0)).epsilon(1e-12));

  CHECK_THROWS_AS(simplex_configuration(1), std::invalid_argument);
}

TEST_CASE("local_ascent leaves the simplex optimum alone") {
  const int n = 4;
  const Instance inst = uniform_instance(n);
  const Configuration start = simplex_configuration(n);
  SolveParams params;
  params.seed = 7;
  const Configuration end = local_ascent(inst, start, params);
  CHECK((end.points() - start.points()).norm() <= 1e-9);
}

TEST_CASE("local_ascent drives the n=2 instance to the antipodal pair") {
  const Instance inst = uniform_instance(2);
  Eigen::MatrixXd P(2, 2);
  P << 0.1, 0, 0, 0.1;
  SolveParams params;
  params.max_iters = 5000;
  const Configuration end = local_ascent(inst, Configuration{P}, params);
  CHECK(objective(inst, end) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("local_ascent is a no-op without weights") {
  const Instance inst(3, {}, {1.0, 1.0, 1.0});
  Rng rng(41);
  const Configuration start = random_feasible_config(inst, 3, rng);
  SolveParams params;
  const Configuration end = local_ascent(inst, start, params);
  CHECK((end.points() - start.points()).norm() == 0.0);
}

TEST_CASE("solve_primal reaches the simplex value at n=5") {
  const Instance inst = uniform_instance(5);
  SolveParams params;
  params.seed = 1;
  const SolveResult result = solve_primal(inst, params);
  CHECK(result.converged);
  CHECK(std::abs(result.primal_value - simplex_value(5)) <=
        1e-5 * simplex_value(5));
  CHECK(result.certificate.verdict == Verdict::StrongCertificate);
  CHECK(result.dual_bound >= result.primal_value - 1e-9);
  CHECK(objective(inst, result.config) ==
        doctest::Approx(result.primal_value).epsilon(1e-12));
}

TEST_CASE("solve_primal handles the lopsided n=2 instance") {
  // Collinear antipodal placement is optimal: value w(l1 + l2) = 9.
  const Instance inst(2, {{0, 1, 3.0}}, {2.0, 1.0});
  SolveParams params;
  params.seed = 3;
  const SolveResult result = solve_primal(inst, params);
  CHECK(result.primal_value == doctest::Approx(9.0).epsilon(1e-6));
  CHECK(result.converged);
}

TEST_CASE("solve_primal with zero weights returns any feasible point set") {
  const Instance inst(3, {}, {1.0, 0.5, 2.0});
  SolveParams params;
  params.seed = 9;
  const SolveResult result = solve_primal(inst, params);
  CHECK(result.primal_value == 0.0);
  CHECK(result.converged);
  CHECK(feasibility(inst, result.config, 1e-9).feasible);
}

TEST_CASE("solve_primal is deterministic given the seed") {
  const Instance inst = uniform_instance(4);
  SolveParams params;
  params.seed = 42;
  params.restarts = 2;
  const SolveResult a = solve_primal(inst, params);
  const SolveResult b = solve_primal(inst, params);
  CHECK(a.primal_value == b.primal_value);  // bit-identical
  CHECK(a.dual_bound == b.dual_bound);
  CHECK(a.iterations == b.iterations);
  CHECK((a.config.points() - b.config.points()).norm() == 0.0);
  CHECK((a.gram.matrix() - b.gram.matrix()).norm() == 0.0);
  REQUIRE(a.best_value_trace.size() == b.best_value_trace.size());
  for (std::size_t k = 0; k < a.best_value_trace.size(); ++k) {
    CHECK(a.best_value_trace[k] == b.best_value_trace[k]);
  }

  SolveParams other = params;
  other.seed = 43;
  const SolveResult c = solve_primal(inst, other);
  // Same optimum, but the trajectory generally differs.
  CHECK(std::abs(c.primal_value - a.primal_value) <= 1e-4);
}

TEST_CASE("solve_primal best-so-far trace is non-decreasing") {
  const Instance inst = uniform_instance(5);
  SolveParams params;
  params.seed = 17;
  params.restarts = 1;
  const SolveResult result = solve_primal(inst, params);
  for (std::size_t k = 1; k < result.best_value_trace.size(); ++k) {
    CHECK(result.best_value_trace[k] >= result.best_value_trace[k - 1]);
  }
}

TEST_CASE("minimize_dual on the symmetric pair") {
  const Instance inst = uniform_instance(2);
  SolveParams params;
  const DualSolution sol = minimize_dual(inst, params);
  CHECK(sol.converged);
  CHECK(sol.attained);
  CHECK(sol.value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(sol.x[0] == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(sol.x[1] == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("minimize_dual matches the simplex closed form at n=4") {
  const Instance inst = uniform_instance(4);
  SolveParams params;
  const DualSolution sol = minimize_dual(inst, params);
  CHECK(std::abs(sol.value - simplex_value(4)) <= 1e-5 * simplex_value(4));
}

TEST_CASE("minimize_dual detects an unattained infimum") {
  // l = (0, 1): dual values approach 1 as x_1 grows without bound.
  const Instance inst(2, {{0, 1, 1.0}}, {0.0, 1.0});
  SolveParams params;
  const DualSolution sol = minimize_dual(inst, params);
  CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-5));
  CHECK_FALSE(sol.attained);
}

TEST_CASE("minimize_dual trivial cases") {
  const Instance no_weights(3, {}, {1.0, 1.0, 1.0});
  SolveParams params;
  const DualSolution a = minimize_dual(no_weights, params);
  CHECK(a.value == 0.0);
  CHECK(a.attained);

  const Instance pinned(2, {{0, 1, 1.0}}, {0.0, 0.0});
  const DualSolution b = minimize_dual(pinned, params);
  CHECK(b.value == 0.0);
}

TEST_CASE("dual upper-bounds the primal on random instances") {
  Rng rng(42);
  SolveParams params;
  params.seed = 5;
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 4);
    const Instance inst = random_instance(n, rng);
    const SolveResult primal = solve_primal(inst, params);
    const DualSolution dual = minimize_dual(inst, params);
    CHECK(dual.value >= primal.primal_value - 1e-9);
    if (primal.certificate.verdict == Verdict::StrongCertificate) {
      CHECK(std::abs(dual.value - primal.primal_value) <=
            1e-3 * std::max(1.0, dual.value));
    }
  }
}

TEST_CASE("ellipsoid backend agrees with the closed forms") {
  SolveParams params;
  params.seed = 2;

  const SolveResult two = ellipsoid_solve(uniform_instance(2), params);
  CHECK(std::abs(two.primal_value - 2.0) <= 1e-3 * 2.0);
  // The certified level itself (last trace entry) must carry the search,
  // not the point-space polish.
  REQUIRE_FALSE(two.best_value_trace.empty());
  CHECK(two.best_value_trace.back() >= 0.99 * 2.0);

  const SolveResult three = ellipsoid_solve(uniform_instance(3), params);
  CHECK(std::abs(three.primal_value - simplex_value(3)) <=
        1e-3 * simplex_value(3));
  CHECK(three.best_value_trace.back() >= 0.99 * simplex_value(3));

  CHECK_THROWS_AS(ellipsoid_solve(uniform_instance(13), params),
                  std::invalid_argument);
}
