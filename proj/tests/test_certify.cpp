// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "dispersion/certify.hpp"
#include "dispersion/core.hpp"
#include "dispersion/solve.hpp"
#include "oracles.hpp"

using namespace dispersion;
using namespace dispersion::testing;

namespace {

Configuration antipodal_config() {
  Eigen::MatrixXd P(2, 2);
  P << 1, 0, -1, 0;
  return Configuration{P};
}

}  // namespace

TEST_CASE("breakdown of the strong n=2 pair is tight everywhere") {
  const Instance inst = uniform_instance(2);
  const DualVector x{Eigen::Vector2d(1, 1)};
  const WeakDualityBreakdown b =
      weak_duality_breakdown(inst, antipodal_config(), x);
  CHECK(b.primal_value == doctest::Approx(2.0));
  CHECK(b.cauchy_schwarz_rhs == doctest::Approx(2.0));
  CHECK(b.quad_lhs == doctest::Approx(4.0));
  CHECK(b.quad_mid == doctest::Approx(4.0));
  CHECK(b.quad_rhs == doctest::Approx(4.0));
  CHECK(b.residual_vector_norm == doctest::Approx(0.0));
  CHECK(b.dual_value == doctest::Approx(2.0));
}

TEST_CASE("breakdown keeps slack for a shrunken configuration") {
  const Instance inst = uniform_instance(2);
  Eigen::MatrixXd P(2, 2);
  P << 0.5, 0, -0.5, 0;
  const WeakDualityBreakdown b =
      weak_duality_breakdown(inst, Configuration{P}, DualVector{Eigen::Vector2d(1, 1)});
  CHECK(b.primal_value == doctest::Approx(1.0));
  CHECK(b.dual_value == doctest::Approx(2.0));
  CHECK(b.primal_value <= b.cauchy_schwarz_rhs + 1e-12);
  CHECK(b.cauchy_schwarz_rhs <= b.dual_value + 1e-12);
}

TEST_CASE("breakdown handles the all-zero dual vector") {
  const Instance inst = uniform_instance(2);
  const WeakDualityBreakdown b = weak_duality_breakdown(
      inst, antipodal_config(), DualVector{Eigen::Vector2d(0, 0)});
  CHECK(std::isinf(b.dual_value));
  CHECK(std::isinf(b.cauchy_schwarz_rhs));
  CHECK(b.primal_value == doctest::Approx(2.0));
}

TEST_CASE("breakdown rejects infeasible configurations") {
  const Instance inst = uniform_instance(2);
  Eigen::MatrixXd P(2, 2);
  P << 1.5, 0, 0, 0;
  CHECK_THROWS_AS(weak_duality_breakdown(inst, Configuration{P},
                                         DualVector{Eigen::Vector2d(1, 1)}),
                  std::invalid_argument);
}

TEST_CASE("weak duality and chain ordering hold on random triples") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 7);
    const Instance inst = random_instance(n, rng, 0.7);
    const Configuration cfg = random_feasible_config(inst, n, rng);
    const DualVector x = random_dual(n, rng, 0.1);
    const WeakDualityBreakdown b = weak_duality_breakdown(inst, cfg, x);
    const double slack = 1e-9;
    CHECK(b.primal_value <=
          b.dual_value + slack * std::max(1.0, b.dual_value));
    if (std::isfinite(b.cauchy_schwarz_rhs)) {
      CHECK(b.primal_value <=
            b.cauchy_schwarz_rhs + slack * std::max(1.0, b.cauchy_schwarz_rhs));
      CHECK(b.cauchy_schwarz_rhs <=
            b.dual_value + slack * std::max(1.0, b.dual_value));
    }
    CHECK(b.quad_lhs <= b.quad_mid + slack * std::max(1.0, std::abs(b.quad_mid)));
    CHECK(b.quad_mid <= b.quad_rhs + slack * std::max(1.0, std::abs(b.quad_rhs)));
  }
}

TEST_CASE("extract_dual recovers sqrt(C(n,2)) on the simplex family") {
  for (int n = 3; n <= 8; ++n) {
    const Instance inst = uniform_instance(n);
    const Configuration cfg = simplex_configuration(n);
    const DualExtraction ext = extract_dual(inst, cfg, 1e-9);
    const double expected = std::sqrt(n * (n - 1) / 2.0);
    CHECK(ext.stationarity_residual <= 1e-10 * inst.total_weight());
    CHECK(ext.unextractable.empty());
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(ext.x[i] - expected) <= 1e-8 * expected);
    }
  }
}

TEST_CASE("extract_dual on the antipodal pair") {
  const Instance inst = uniform_instance(2);
  const DualExtraction ext = extract_dual(inst, antipodal_config(), 1e-9);
  CHECK(ext.x[0] == doctest::Approx(1.0));
  CHECK(ext.x[1] == doctest::Approx(1.0));
  CHECK(ext.stationarity_residual == doctest::Approx(0.0));
}

TEST_CASE("extract_dual gives zero multipliers to force-free interiors") {
  const Instance inst(3, {}, {1.0, 1.0, 1.0});
  Rng rng(22);
  const Configuration cfg = random_feasible_config(inst, 3, rng);
  const DualExtraction ext = extract_dual(inst, cfg, 1e-9);
  CHECK(ext.x.values().norm() == 0.0);
  CHECK(ext.stationarity_residual == 0.0);
}

TEST_CASE("extract_dual reports pinned points with nonzero force") {
  const Instance inst(2, {{0, 1, 1.0}}, {0.0, 1.0});
  Eigen::MatrixXd P(2, 2);
  P << 0, 0, 0, 1;
  const DualExtraction ext = extract_dual(inst, Configuration{P}, 1e-9);
  REQUIRE(ext.unextractable.size() == 1);
  CHECK(ext.unextractable[0] == 0);
  CHECK(ext.x[1] == doctest::Approx(1.0));
}

TEST_CASE("affine independence of basic configurations") {
  const AffineIndependence tri = affine_independence(
      Configuration{unit_triangle()}, 1e-9);
  CHECK(tri.independent);
  CHECK(tri.rank == 2);

  Eigen::MatrixXd line(3, 2);
  line << 0, 0, 0.5, 0, 1, 0;
  const AffineIndependence collinear =
      affine_independence(Configuration{line}, 1e-9);
  CHECK_FALSE(collinear.independent);
  CHECK(collinear.rank == 1);

  Eigen::MatrixXd four_in_plane(4, 2);
  four_in_plane << 0, 0, 1, 0, 0, 1, 1, 1;
  CHECK_FALSE(affine_independence(Configuration{four_in_plane}, 1e-9)
                  .independent);
}

TEST_CASE("weight consistency residual at and near certificates") {
  const Instance pair = uniform_instance(2);
  CHECK(weight_consistency_residual(pair, antipodal_config(),
                                    DualVector{Eigen::Vector2d(1, 1)}) ==
        doctest::Approx(0.0));

  const int n = 3;
  const Configuration simplex = simplex_configuration(n);
  const double root3 = std::sqrt(3.0);
  const DualVector x{Eigen::Vector3d(root3, root3, root3)};
  CHECK(weight_consistency_residual(uniform_instance(n), simplex, x) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // Perturbing one weight moves the max deviation by exactly that amount.
  Instance perturbed(3, {{0, 1, 1.1}, {0, 2, 1.0}, {1, 2, 1.0}},
                     {1.0, 1.0, 1.0});
  CHECK(weight_consistency_residual(perturbed, simplex, x) ==
        doctest::Approx(0.1));

  CHECK_THROWS_AS(weight_consistency_residual(
                      pair, antipodal_config(), DualVector{Eigen::Vector2d(0, 0)}),
                  std::invalid_argument);
}

TEST_CASE("certify the n=5 simplex optimum") {
  const int n = 5;
  const Instance inst = uniform_instance(n);
  const Configuration cfg = simplex_configuration(n);
  const Certificate cert = certify(inst, cfg, std::nullopt, 1e-6);
  CHECK(cert.verdict == Verdict::StrongCertificate);
  CHECK(cert.primal_value ==
        doctest::Approx(15.811388300841896).epsilon(1e-10));
  CHECK(std::abs(cert.gap) <= 1e-8);
  CHECK(cert.affinely_independent);
  CHECK_FALSE(cert.degenerate);
}

TEST_CASE("collinear stationary configurations only earn a weak bound") {
  // Only the endpoints interact; the middle point floats free inside.
  const Instance inst(3, {{0, 2, 1.0}}, {1.0, 1.0, 1.0});
  Eigen::MatrixXd P(3, 2);
  P << -1, 0, 0.2, 0, 1, 0;
  const Certificate cert = certify(inst, Configuration{P}, std::nullopt, 1e-6);
  CHECK(cert.verdict == Verdict::WeakBoundOnly);
  CHECK_FALSE(cert.affinely_independent);
  // The bound itself is tight here; the hypothesis, not the gap, fails.
  CHECK(cert.stationarity_residual <= 1e-9);
  CHECK(cert.gap == doctest::Approx(0.0));
}

TEST_CASE("certify rejects infeasible configurations as invalid") {
  const Instance inst = uniform_instance(2);
  Eigen::MatrixXd P(2, 2);
  P << 3, 0, -1, 0;
  const Certificate cert = certify(inst, Configuration{P}, std::nullopt, 1e-6);
  CHECK(cert.verdict == Verdict::Invalid);
  CHECK_FALSE(cert.reasons.empty());
}

TEST_CASE("strong certificates satisfy the tightness conditions") {
  for (int n = 3; n <= 8; ++n) {
    const Instance inst = uniform_instance(n);
    const Configuration cfg = simplex_configuration(n);
    const Certificate cert = certify(inst, cfg, std::nullopt, 1e-6);
    REQUIRE(cert.verdict == Verdict::StrongCertificate);

    const WeakDualityBreakdown b = weak_duality_breakdown(inst, cfg, cert.x);
    const double lmax = inst.max_radius();
    CHECK(b.residual_vector_norm <= 1e-6 * (cert.x.sum() * lmax));

    for (int i = 0; i < n; ++i) {
      if (cert.x[i] > 1e-6) {
        CHECK(std::abs(cfg.point(i).norm() - inst.radius(i)) <= 1e-6);
      }
    }

    double max_w = 0.0;
    for (const auto& [ij, w] : inst.weight_pairs())
      max_w = std::max(max_w, w);
    CHECK(cert.weight_consistency_residual <= 1e-6 * max_w);
  }
}

TEST_CASE("certify accepts user-supplied multipliers") {
  const Instance inst = uniform_instance(2);
  const Certificate cert = certify(inst, antipodal_config(),
                                   DualVector{Eigen::Vector2d(1, 1)}, 1e-6);
  CHECK(cert.verdict == Verdict::StrongCertificate);
  CHECK(cert.dual_value == doctest::Approx(2.0));

  // Wrong multipliers still give a valid upper bound, just not a strong one.
  const Certificate loose = certify(inst, antipodal_config(),
                                    DualVector{Eigen::Vector2d(4, 1)}, 1e-6);
  CHECK(loose.verdict == Verdict::WeakBoundOnly);
  CHECK(loose.dual_value >= 2.0);
}
