// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DISPERSION_CORE_HPP
#define DISPERSION_CORE_HPP

#include <vector>

#include "dispersion/types.hpp"

namespace dispersion {

/// Primal objective sum_{i<j} w(i,j) * d(p_i, p_j). Defined for any
/// configuration, feasible or not. Throws on point-count mismatch.
double objective(const Instance& inst, const Configuration& cfg);

struct FeasibilityReport {
  bool feasible = true;
  Eigen::VectorXd slack;        // l(i) - ||p_i||, per point
  std::vector<int> violations;  // 0-based indices with slack < -tol
};

/// Ball-constraint check: feasible iff ||p_i|| <= l(i) + tol for all i.
FeasibilityReport feasibility(const Instance& inst, const Configuration& cfg,
                              double tol);

/// Objective gradient: f_i = sum_{j != i} w(i,j) (p_i - p_j) / d(p_i, p_j).
/// Zero-distance pairs contribute the zero (sub)gradient; such a pair with
/// positive weight marks the result degenerate, with zero weight it is the
/// paper's 0/0 := 0 convention and no flag is raised.
ForceField force_field(const Instance& inst, const Configuration& cfg);

/// Dual objective
///   sqrt(sum_{i<j} w^2(i,j)/(x_i x_j)) * sqrt(sum_i l^2(i) x_i)
///     * sqrt(sum_i x_i).
/// Terms with w(i,j) = 0 contribute 0 even when x_i x_j = 0; any term with
/// w(i,j) > 0 and x_i x_j = 0 makes the value +infinity. Throws on negative
/// multipliers or size mismatch.
double dual_objective(const Instance& inst, const DualVector& x);

/// Shared boundary convention for feasibility interpretations throughout:
/// per-point absolute tolerance tol * (1 + l(i)).
inline double feasibility_tolerance(double tol, double radius) {
  return tol * (1.0 + radius);
}

}  // namespace dispersion

#endif  // DISPERSION_CORE_HPP
