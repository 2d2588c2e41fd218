// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#include "dispersion/core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dispersion {

namespace {

void require_matching(const Instance& inst, const Configuration& cfg) {
  if (cfg.size() != inst.size()) {
    throw std::invalid_argument(
        "configuration has " + std::to_string(cfg.size()) +
        " points, instance expects " + std::to_string(inst.size()));
  }
}

}  // namespace

double objective(const Instance& inst, const Configuration& cfg) {
  require_matching(inst, cfg);
  const Eigen::MatrixXd& P = cfg.points();
  double value = 0.0;
  for (const auto& [ij, w] : inst.weight_pairs()) {
    value += w * (P.row(ij.first) - P.row(ij.second)).norm();
  }
  return value;
}

FeasibilityReport feasibility(const Instance& inst, const Configuration& cfg,
                              double tol) {
  require_matching(inst, cfg);
  const int n = inst.size();
  FeasibilityReport report;
  report.slack.resize(n);
  for (int i = 0; i < n; ++i) {
    report.slack[i] = inst.radius(i) - cfg.point(i).norm();
    if (report.slack[i] < -tol) {
      report.feasible = false;
      report.violations.push_back(i);
    }
  }
  return report;
}

ForceField force_field(const Instance& inst, const Configuration& cfg) {
  require_matching(inst, cfg);
  const Eigen::MatrixXd& P = cfg.points();
  ForceField field;
  field.forces = Eigen::MatrixXd::Zero(cfg.size(), cfg.dim());
  for (const auto& [ij, w] : inst.weight_pairs()) {
    const auto [i, j] = ij;
    const Eigen::RowVectorXd diff = P.row(i) - P.row(j);
    const double d = diff.norm();
    if (d == 0.0) {
      // w > 0 here (zero weights are not stored): zero-subgradient selection.
      field.degenerate = true;
      continue;
    }
    const Eigen::RowVectorXd f = (w / d) * diff;
    field.forces.row(i) += f;
    field.forces.row(j) -= f;
  }
  return field;
}

double dual_objective(const Instance& inst, const DualVector& x) {
  if (x.size() != inst.size()) {
    throw std::invalid_argument("dual vector size mismatch");
  }
  const Eigen::VectorXd& v = x.values();

  double pair_sum = 0.0;  // sum w^2(i,j) / (x_i x_j), 0/0 := 0
  for (const auto& [ij, w] : inst.weight_pairs()) {
    const double denom = v[ij.first] * v[ij.second];
    if (denom == 0.0) {
      return std::numeric_limits<double>::infinity();
    }
    pair_sum += w * w / denom;
  }

  const double radius_sum = inst.radii().array().square().matrix().dot(v);
  return std::sqrt(pair_sum) * std::sqrt(radius_sum) * std::sqrt(v.sum());
}

}  // namespace dispersion
