// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DISPERSION_CERTIFY_HPP
#define DISPERSION_CERTIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "dispersion/types.hpp"

namespace dispersion {

/// Every quantity in the weak-duality inequality chain, evaluated by direct
/// summation. The chain reads
///   primal_value <= cauchy_schwarz_rhs <= dual_value
/// and, for the quadratic middle step,
///   quad_lhs <= quad_mid <= quad_rhs
/// with quad_mid = quad_rhs - residual_vector_norm^2.
struct WeakDualityBreakdown {
  double primal_value = 0.0;
  double cauchy_schwarz_rhs = 0.0;  // sqrt(sum w^2/xx) * sqrt(quad_lhs)
  double quad_lhs = 0.0;            // sum_{i<j} x_i x_j d^2(p_i,p_j)
  double quad_mid = 0.0;            // sum_{i,j} x_i x_j (l^2(i) - p_i.p_j)
  double quad_rhs = 0.0;            // (sum x_i)(sum l^2(i) x_i)
  double residual_vector_norm = 0.0;  // ||sum_i x_i p_i||
  double dual_value = 0.0;
};

/// Evaluates the chain for a feasible configuration and nonnegative
/// multipliers. Throws if cfg is infeasible beyond a 1e-9 slack (certificates
/// over infeasible points are meaningless). A +infinite dual value is allowed
/// and reported.
WeakDualityBreakdown weak_duality_breakdown(const Instance& inst,
                                            const Configuration& cfg,
                                            const DualVector& x);

/// Multipliers recovered from the stationarity equation x_i p_i = f_i:
/// x_i = (f_i . p_i)/||p_i||^2 on active ball boundaries, x_i = 0 for points
/// strictly inside their ball (beyond tol). Negative projections are clamped
/// to zero and show up in the residual instead; a point pinned at the origin
/// with nonzero force has no multiplier at all and is listed unextractable.
struct DualExtraction {
  DualVector x;
  double stationarity_residual = 0.0;  // max_i ||f_i - x_i p_i||, see below
  std::vector<int> unextractable;
  bool degenerate = false;
};

DualExtraction extract_dual(const Instance& inst, const Configuration& cfg,
                            double tol);

/// Stationarity score for given multipliers: the larger of
///   max_i ||f_i - x_i p_i||   and
///   max over strictly interior points (||p_i|| < l(i) beyond tol) of ||f_i||.
/// Zero exactly at configurations satisfying the stationarity equation with
/// complementary slackness.
double stationarity_residual(const Instance& inst, const Configuration& cfg,
                             const DualVector& x, double tol);

struct AffineIndependence {
  bool independent = false;
  int rank = 0;  // numeric rank of the n-1 difference vectors
};

/// Numeric affine-independence test: the difference vectors p_i - p_n must
/// have rank n-1, judged by singular values above tol * sigma_max.
AffineIndependence affine_independence(const Configuration& cfg, double tol);

/// Max over pairs i<j of |w(i,j) - x_i x_j d(p_i,p_j) / sum_k x_k|, the
/// deviation from the weight formula that holds at strong-duality pairs.
/// Throws when sum_k x_k = 0 (the formula is undefined there).
double weight_consistency_residual(const Instance& inst,
                                   const Configuration& cfg,
                                   const DualVector& x);

enum class Verdict { StrongCertificate, WeakBoundOnly, Invalid };

std::string to_string(Verdict v);

/// Assembled duality certificate for a (configuration, multiplier) pair.
struct Certificate {
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;           // dual - primal
  double relative_gap = 0.0;  // gap / max(1, dual); +inf when dual is
  double stationarity_residual = 0.0;
  double weight_consistency_residual = 0.0;
  bool affinely_independent = false;
  bool degenerate = false;
  Verdict verdict = Verdict::Invalid;
  DualVector x;                    // multipliers used (given or extracted)
  std::vector<int> unextractable;  // indices where no multiplier exists
  std::vector<std::string> reasons;  // why not strong / why invalid
};

/// Builds the certificate. If `x` is absent the multipliers are extracted
/// from the stationarity equation. Verdict is strong-certificate only when
/// stationarity_residual <= tol*(1 + total weight), the configuration is
/// affinely independent, and relative_gap <= tol; an infeasible configuration
/// yields verdict invalid with reasons. The dual value is a valid upper bound
/// in every non-invalid case.
Certificate certify(const Instance& inst, const Configuration& cfg,
                    const std::optional<DualVector>& x, double tol);

}  // namespace dispersion

#endif  // DISPERSION_CERTIFY_HPP
