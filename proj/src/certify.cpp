// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#include "dispersion/certify.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dispersion/core.hpp"

namespace dispersion {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Near-zero points are treated as pinned at the origin; the stationarity
// equation has no multiplier there unless the force also vanishes.
bool at_origin(const Eigen::RowVectorXd& p, double radius) {
  return p.norm() <= 1e-12 * std::max(1.0, radius);
}

void require_feasible(const Instance& inst, const Configuration& cfg,
                      double tol, const char* who) {
  const int n = inst.size();
  for (int i = 0; i < n; ++i) {
    const double over = cfg.point(i).norm() - inst.radius(i);
    if (over > feasibility_tolerance(tol, inst.radius(i))) {
      std::ostringstream os;
      os << who << ": configuration infeasible at point " << i + 1
         << " (||p|| exceeds radius by " << over << ")";
      throw std::invalid_argument(os.str());
    }
  }
}

}  // namespace

WeakDualityBreakdown weak_duality_breakdown(const Instance& inst,
                                            const Configuration& cfg,
                                            const DualVector& x) {
  if (x.size() != inst.size() || cfg.size() != inst.size()) {
    throw std::invalid_argument("weak_duality_breakdown: size mismatch");
  }
  require_feasible(inst, cfg, 1e-9, "weak_duality_breakdown");

  const int n = inst.size();
  const Eigen::MatrixXd& P = cfg.points();
  const Eigen::VectorXd& v = x.values();

  WeakDualityBreakdown b;
  b.primal_value = objective(inst, cfg);

  double pair_sum = 0.0;  // sum w^2/(x_i x_j), +inf when some w>0 pair has 0
  for (const auto& [ij, w] : inst.weight_pairs()) {
    const double denom = v[ij.first] * v[ij.second];
    if (denom == 0.0) {
      pair_sum = kInf;
      break;
    }
    pair_sum += w * w / denom;
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      b.quad_lhs += v[i] * v[j] * (P.row(i) - P.row(j)).squaredNorm();
    }
  }
  for (int i = 0; i < n; ++i) {
    const double l2 = inst.radius(i) * inst.radius(i);
    for (int j = 0; j < n; ++j) {
      b.quad_mid += v[i] * v[j] * (l2 - P.row(i).dot(P.row(j)));
    }
  }
  const double radius_sum = inst.radii().array().square().matrix().dot(v);
  b.quad_rhs = v.sum() * radius_sum;
  b.residual_vector_norm = (P.transpose() * v).norm();

  if (std::isinf(pair_sum)) {
    b.cauchy_schwarz_rhs = kInf;
    b.dual_value = kInf;
  } else {
    const double f1 = std::sqrt(pair_sum);
    b.cauchy_schwarz_rhs = f1 * std::sqrt(std::max(0.0, b.quad_lhs));
    b.dual_value = f1 * std::sqrt(radius_sum) * std::sqrt(v.sum());
  }
  return b;
}

DualExtraction extract_dual(const Instance& inst, const Configuration& cfg,
                            double tol) {
  require_feasible(inst, cfg, tol, "extract_dual");
  const int n = inst.size();
  const ForceField field = force_field(inst, cfg);
  const double force_scale = tol * (1.0 + inst.total_weight());

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<int> unextractable;
  for (int i = 0; i < n; ++i) {
    const Eigen::RowVectorXd p = cfg.point(i);
    const double norm = p.norm();
    const bool interior =
        norm < inst.radius(i) - feasibility_tolerance(tol, inst.radius(i));
    if (interior) {
      continue;  // x_i = 0 when the ball constraint is inactive
    }
    if (at_origin(p, inst.radius(i))) {
      // Pinned point: x_i p_i = f_i is unsolvable unless f_i = 0.
      if (field.forces.row(i).norm() > force_scale) {
        unextractable.push_back(i);
      }
      continue;
    }
    // Nonnegative multiple only; negative projections inflate the residual.
    x[i] = std::max(0.0, field.forces.row(i).dot(p) / (norm * norm));
  }

  DualExtraction out{DualVector(std::move(x)), 0.0, std::move(unextractable),
                     field.degenerate};
  out.stationarity_residual = stationarity_residual(inst, cfg, out.x, tol);
  return out;
}

double stationarity_residual(const Instance& inst, const Configuration& cfg,
                             const DualVector& x, double tol) {
  if (x.size() != inst.size()) {
    throw std::invalid_argument("stationarity_residual: size mismatch");
  }
  const ForceField field = force_field(inst, cfg);
  double residual = 0.0;
  for (int i = 0; i < inst.size(); ++i) {
    const Eigen::RowVectorXd p = cfg.point(i);
    residual =
        std::max(residual, (field.forces.row(i) - x[i] * p).norm());
    const bool interior =
        p.norm() < inst.radius(i) - feasibility_tolerance(tol, inst.radius(i));
    if (interior) {
      residual = std::max(residual, field.forces.row(i).norm());
    }
  }
  return residual;
}

AffineIndependence affine_independence(const Configuration& cfg, double tol) {
  const int n = cfg.size();
  AffineIndependence out;
  if (n == 1) {
    out.independent = true;  // vacuous: no difference vectors
    out.rank = 0;
    return out;
  }
  Eigen::MatrixXd diffs(n - 1, cfg.dim());
  for (int i = 0; i < n - 1; ++i) {
    diffs.row(i) = cfg.point(i) - cfg.point(n - 1);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? tol * sv[0] : 0.0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv[k] > cutoff && sv[k] > 0.0) ++rank;
  }
  out.rank = rank;
  out.independent = (rank == n - 1);
  return out;
}

double weight_consistency_residual(const Instance& inst,
                                   const Configuration& cfg,
                                   const DualVector& x) {
  if (x.size() != inst.size() || cfg.size() != inst.size()) {
    throw std::invalid_argument("weight_consistency_residual: size mismatch");
  }
  const double total = x.sum();
  if (total <= 0.0) {
    throw std::invalid_argument(
        "weight_consistency_residual: sum of multipliers is zero");
  }
  const Eigen::MatrixXd& P = cfg.points();
  double residual = 0.0;
  for (int i = 0; i < inst.size(); ++i) {
    for (int j = i + 1; j < inst.size(); ++j) {
      const double d = (P.row(i) - P.row(j)).norm();
      const double claim = x[i] * x[j] * d / total;
      residual = std::max(residual, std::abs(inst.weight(i, j) - claim));
    }
  }
  return residual;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::StrongCertificate:
      return "strong-certificate";
    case Verdict::WeakBoundOnly:
      return "weak-bound-only";
    case Verdict::Invalid:
      return "invalid";
  }
  return "invalid";
}

Certificate certify(const Instance& inst, const Configuration& cfg,
                    const std::optional<DualVector>& x, double tol) {
  const int n = inst.size();
  if (cfg.size() != n) {
    throw std::invalid_argument("certify: configuration size mismatch");
  }
  if (x && x->size() != n) {
    throw std::invalid_argument("certify: dual vector size mismatch");
  }

  Certificate cert;
  cert.x = DualVector(Eigen::VectorXd::Zero(n));
  cert.primal_value = objective(inst, cfg);

  const FeasibilityReport feas = feasibility(
      inst, cfg, feasibility_tolerance(tol, inst.max_radius()));
  if (!feas.feasible) {
    cert.verdict = Verdict::Invalid;
    for (int i : feas.violations) {
      std::ostringstream os;
      os << "infeasible at point " << i + 1 << " (slack " << feas.slack[i]
         << ")";
      cert.reasons.push_back(os.str());
    }
    if (x) {
      cert.x = *x;
      cert.dual_value = dual_objective(inst, *x);
    } else {
      cert.dual_value = kInf;
    }
    cert.gap = cert.dual_value - cert.primal_value;
    cert.relative_gap = kInf;
    return cert;
  }

  if (x) {
    cert.x = *x;
    cert.degenerate = force_field(inst, cfg).degenerate;
  } else {
    DualExtraction ext = extract_dual(inst, cfg, tol);
    cert.x = ext.x;
    cert.unextractable = std::move(ext.unextractable);
    cert.degenerate = ext.degenerate;
  }

  cert.stationarity_residual = stationarity_residual(inst, cfg, cert.x, tol);
  cert.dual_value = dual_objective(inst, cert.x);
  cert.gap = cert.dual_value - cert.primal_value;
  cert.relative_gap = std::isfinite(cert.dual_value)
                          ? cert.gap / std::max(1.0, cert.dual_value)
                          : kInf;

  if (cert.x.sum() > 0.0) {
    cert.weight_consistency_residual =
        weight_consistency_residual(inst, cfg, cert.x);
  } else {
    // Formula undefined at x = 0; the consistent claim is w == 0 everywhere.
    double max_w = 0.0;
    for (const auto& [ij, w] : inst.weight_pairs()) max_w = std::max(max_w, w);
    cert.weight_consistency_residual = max_w;
  }

  cert.affinely_independent = affine_independence(cfg, tol).independent;

  const double stat_tol = tol * (1.0 + inst.total_weight());
  const bool stationary = cert.stationarity_residual <= stat_tol;
  const bool gap_ok = cert.relative_gap <= tol;
  if (stationary && cert.affinely_independent && gap_ok) {
    cert.verdict = Verdict::StrongCertificate;
  } else {
    cert.verdict = Verdict::WeakBoundOnly;
    if (!stationary) {
      std::ostringstream os;
      os << "stationarity residual " << cert.stationarity_residual
         << " exceeds " << stat_tol;
      cert.reasons.push_back(os.str());
    }
    if (!cert.affinely_independent) {
      cert.reasons.push_back("configuration is affinely dependent");
    }
    if (!gap_ok) {
      std::ostringstream os;
      os << "relative duality gap " << cert.relative_gap << " exceeds " << tol;
      cert.reasons.push_back(os.str());
    }
    for (int i : cert.unextractable) {
      std::ostringstream os;
      os << "no multiplier exists at pinned point " << i + 1;
      cert.reasons.push_back(os.str());
    }
    if (cert.degenerate) {
      cert.reasons.push_back("coincident pair with positive weight");
    }
  }
  return cert;
}

}  // namespace dispersion
