// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DISPERSION_SDP_HPP
#define DISPERSION_SDP_HPP

#include <optional>
#include <string>

#include "dispersion/types.hpp"

namespace dispersion {

/// Frobenius-nearest PSD matrix: eigendecompose, clamp negative eigenvalues
/// to zero, reassemble. Throws on non-symmetric input.
GramMatrix psd_project(const Eigen::MatrixXd& S);

struct ProjectionResult {
  GramMatrix gram;
  bool converged = false;
  int iterations = 0;
};

/// Dykstra-corrected alternating projection onto
///   {PSD} intersect {Y_ii <= l^2(i)}.
/// On convergence the result passes separation_oracle at tolerance tol; on
/// iteration-cap failure the best iterate is returned with converged=false.
ProjectionResult feasible_project(const Eigen::MatrixXd& S,
                                  const Instance& inst, double tol,
                                  int max_iters = 2000);

struct SdpEval {
  double value = 0.0;
  Eigen::MatrixXd supergradient;  // symmetric, same shape as Y
};

/// Lifted concave objective sum_{i<j} w(i,j) sqrt(Y_ii + Y_jj - 2 Y_ij) and
/// one of its supergradients. Negative distance terms are clamped to zero;
/// pairs at zero distance contribute the zero supergradient.
SdpEval sdp_value_and_supergradient(const Instance& inst, const GramMatrix& Y);

/// A violated linear inequality <functional, Y> (>= or <=) bound.
struct SeparationCut {
  Eigen::MatrixXd functional;
  double bound = 0.0;
  bool greater_equal = true;  // true: <A,Y> >= bound required
  double value = 0.0;         // <A, Y> at the tested matrix
  std::string description;

  double evaluate(const Eigen::MatrixXd& Y) const {
    return (functional.array() * Y.array()).sum();
  }
  bool violated_by(const Eigen::MatrixXd& Y, double tol) const {
    const double v = evaluate(Y);
    return greater_equal ? v < bound - tol : v > bound + tol;
  }
};

struct SeparationResult {
  bool feasible = false;
  std::optional<SeparationCut> cut;
};

/// Feasibility oracle for the lifted constraint set: reports an eigenvector
/// cut v v^T when some eigenvalue is below -tol, else a diagonal-bound cut
/// when some Y_ii exceeds l^2(i) + tol, else feasible.
SeparationResult separation_oracle(const Instance& inst, const GramMatrix& Y,
                                   double tol);

/// Eigendecomposition-based factorization Y = P P^T. The returned points
/// satisfy |p_i . p_j - Y_ij| <= tol * (1 + max |Y|); dimension equals the
/// numeric rank of Y (at least 1). Throws if Y is not PSD within tol.
Configuration factor_gram(const GramMatrix& Y, double tol);

}  // namespace dispersion

#endif  // DISPERSION_SDP_HPP
