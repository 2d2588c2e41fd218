// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#include "dispersion/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dispersion/core.hpp"
#include "dispersion/rng.hpp"
#include "dispersion/sdp.hpp"

namespace dispersion {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_params(const SolveParams& params) {
  if (!(params.tol > 0.0)) {
    throw std::invalid_argument("solve params: tol must be positive");
  }
  if (params.max_iters < 1) {
    throw std::invalid_argument("solve params: max_iters must be >= 1");
  }
  if (params.restarts < 1) {
    throw std::invalid_argument("solve params: restarts must be >= 1");
  }
}

// p_i <- p_i * min(1, l(i)/||p_i||); zero-radius points pin to the origin.
void radial_clamp(Eigen::MatrixXd& P, const Instance& inst) {
  for (int i = 0; i < inst.size(); ++i) {
    const double l = inst.radius(i);
    if (l == 0.0) {
      P.row(i).setZero();
      continue;
    }
    const double norm = P.row(i).norm();
    if (norm > l) P.row(i) *= l / norm;
  }
}

double objective_of(const Instance& inst, const Eigen::MatrixXd& P) {
  double value = 0.0;
  for (const auto& [ij, w] : inst.weight_pairs()) {
    value += w * (P.row(ij.first) - P.row(ij.second)).norm();
  }
  return value;
}

// Seeded random feasible start Y = eps*I + V V^T, cleaned by the feasible
// projection.
GramMatrix random_feasible_start(const Instance& inst, Rng& rng) {
  const int n = inst.size();
  Eigen::MatrixXd V(n, n);
  for (int i = 0; i < n; ++i) {
    const double l = inst.radius(i);
    if (l == 0.0) {
      V.row(i).setZero();
      continue;
    }
    V.row(i) =
        (l * rng.uniform(0.3, 0.9)) * rng.sphere_direction(n).transpose();
  }
  const double lmax = inst.max_radius();
  const double eps = 1e-9 * (1.0 + lmax * lmax);
  Eigen::MatrixXd Y0 =
      eps * Eigen::MatrixXd::Identity(n, n) + V * V.transpose();
  return feasible_project(Y0, inst, 1e-10).gram;
}

struct AscentOutcome {
  GramMatrix best;
  double best_value = -kInf;
  int iterations = 0;
  std::vector<double> trace;
};

// Projected supergradient ascent on the lifted objective. The iterate may
// move non-monotonically (standard for supergradient methods); the best
// matrix seen is what gets returned.
AscentOutcome supergradient_ascent(const Instance& inst, GramMatrix Y,
                                   const SolveParams& params) {
  const double set_scale =
      std::max(1e-12, inst.radii().array().square().sum());
  const double proj_tol = 1e-10;

  AscentOutcome out;
  out.best = Y;
  out.best_value = sdp_value_and_supergradient(inst, Y).value;
  out.trace.push_back(out.best_value);

  int since_improvement = 0;
  for (int k = 1; k <= params.max_iters; ++k) {
    out.iterations = k;
    const SdpEval eval = sdp_value_and_supergradient(inst, Y);
    const double gnorm = eval.supergradient.norm();
    if (gnorm == 0.0) break;  // flat objective (all weights zero)

    const double base = params.step_rule == StepRule::DiminishingSqrt
                            ? set_scale / std::sqrt(static_cast<double>(k))
                            : set_scale;
    const Eigen::MatrixXd dir = eval.supergradient / gnorm;

    double cand_value = -kInf;
    GramMatrix cand;
    for (const double frac : {1.0, 0.5, 0.25}) {
      const GramMatrix next =
          feasible_project(Y.matrix() + (base * frac) * dir, inst, proj_tol)
              .gram;
      const double v = sdp_value_and_supergradient(inst, next).value;
      if (v > cand_value) {
        cand_value = v;
        cand = next;
      }
    }
    Y = cand;

    if (cand_value > out.best_value * (1.0 + 1e-13) ||
        (out.best_value <= 0.0 && cand_value > out.best_value)) {
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    if (cand_value > out.best_value) {
      out.best_value = cand_value;
      out.best = Y;
    }
    out.trace.push_back(out.best_value);
    if (since_improvement >= 300 && k >= 100) break;
  }
  return out;
}

// Pads a factored configuration to dimension n and applies a tiny seeded
// kick so the point-space polish is not trapped in a deficient span.
Eigen::MatrixXd pad_and_kick(const Instance& inst, const Configuration& cfg,
                             Rng& rng) {
  const int n = inst.size();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  P.leftCols(cfg.dim()) = cfg.points();
  const double kick = 1e-6 * std::max(1.0, inst.max_radius());
  for (int i = 0; i < n; ++i) {
    if (inst.radius(i) == 0.0) continue;
    P.row(i) += kick * rng.sphere_direction(n).transpose();
  }
  radial_clamp(P, inst);
  return P;
}

SolveResult finish_solve(const Instance& inst, const Configuration& cfg,
                         const SolveParams& params, int iterations,
                         std::vector<double> trace) {
  SolveResult result;
  result.config = cfg;
  result.gram = GramMatrix(cfg.points() * cfg.points().transpose());
  result.primal_value = objective(inst, cfg);
  result.certificate = certify(inst, cfg, std::nullopt, params.tol);
  result.dual_bound = result.certificate.dual_value;
  result.iterations = iterations;
  result.best_value_trace = std::move(trace);

  const Certificate& cert = result.certificate;
  const double stat_tol = params.tol * (1.0 + inst.total_weight());
  const bool stationary = cert.stationarity_residual <= stat_tol;
  const bool hypotheses_fail = !cert.affinely_independent ||
                               !cert.unextractable.empty() || cert.degenerate;
  if (cert.relative_gap <= params.tol) {
    result.converged = true;
    result.status = "gap target reached";
  } else if (stationary && hypotheses_fail) {
    result.converged = true;
    result.status =
        "stationary point, strong-duality hypotheses fail "
        "(affinely dependent or degenerate)";
  } else {
    result.converged = false;
    result.status = "iteration cap reached without certificate";
  }
  return result;
}

// --- svec/smat with sqrt(2) off-diagonal scaling, so the Euclidean inner
// product of vectors matches the Frobenius inner product of matrices. ---

int svec_size(int n) { return n * (n + 1) / 2; }

Eigen::VectorXd svec(const Eigen::MatrixXd& Y) {
  const int n = static_cast<int>(Y.rows());
  Eigen::VectorXd v(svec_size(n));
  const double r2 = std::sqrt(2.0);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    v[k++] = Y(i, i);
    for (int j = i + 1; j < n; ++j) v[k++] = r2 * Y(i, j);
  }
  return v;
}

Eigen::MatrixXd smat(const Eigen::VectorXd& v, int n) {
  Eigen::MatrixXd Y(n, n);
  const double inv_r2 = 1.0 / std::sqrt(2.0);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    Y(i, i) = v[k++];
    for (int j = i + 1; j < n; ++j) {
      Y(i, j) = Y(j, i) = inv_r2 * v[k++];
    }
  }
  return Y;
}

struct EllipsoidRun {
  bool found = false;
  GramMatrix witness;
  int iterations = 0;
};

// Searches the ball of radius R for a matrix that is oracle-feasible and has
// lifted objective value >= level. Central-cut ellipsoid method. The start
// center is the strictly interior diag(l^2)/2: at the zero matrix every
// weighted pair sits at distance zero, where the supergradient selection is
// zero and no objective cut exists.
EllipsoidRun ellipsoid_feasibility(const Instance& inst, double level,
                                   double R, int max_iters) {
  const int n = inst.size();
  const int m = svec_size(n);
  Eigen::MatrixXd center = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    center(i, i) = 0.5 * inst.radius(i) * inst.radius(i);
  }
  Eigen::VectorXd c = svec(center);
  Eigen::MatrixXd B = (R * R) * Eigen::MatrixXd::Identity(m, m);

  EllipsoidRun run;
  for (int k = 1; k <= max_iters; ++k) {
    run.iterations = k;
    GramMatrix Y(smat(c, n));
    const SeparationResult sep = separation_oracle(inst, Y, 1e-9);
    Eigen::VectorXd g;
    if (!sep.feasible) {
      const Eigen::VectorXd a = svec(sep.cut->functional);
      g = sep.cut->greater_equal ? Eigen::VectorXd(-a) : a;
    } else {
      const SdpEval eval = sdp_value_and_supergradient(inst, Y);
      if (eval.value >= level) {
        run.found = true;
        run.witness = Y;
        return run;
      }
      g = -svec(eval.supergradient);
      if (g.norm() == 0.0) return run;  // flat objective below the level
    }

    const Eigen::VectorXd Bg = B * g;
    const double gBg = g.dot(Bg);
    if (!(gBg > 0.0) || !std::isfinite(gBg)) return run;  // collapsed
    const double md = static_cast<double>(m);
    c -= Bg / ((md + 1.0) * std::sqrt(gBg));
    B = (md * md / (md * md - 1.0)) *
        (B - (2.0 / (md + 1.0)) * (Bg * Bg.transpose()) / gBg);
    B = 0.5 * (B + B.transpose());
  }
  return run;
}

struct LogDualEval {
  double value = 0.0;
  Eigen::VectorXd grad;
};

double log_sum_exp(const std::vector<double>& terms) {
  double m = -kInf;
  for (double t : terms) m = std::max(m, t);
  if (!std::isfinite(m)) return -kInf;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

// Log of the dual objective under x = exp(y): a sum of three log-sum-exp
// terms, each convex in y.
LogDualEval eval_log_dual(const Instance& inst, const Eigen::VectorXd& y) {
  const int n = inst.size();
  LogDualEval out;
  out.grad = Eigen::VectorXd::Zero(n);

  std::vector<double> a;  // 2 log w - y_i - y_j
  a.reserve(inst.weight_pairs().size());
  for (const auto& [ij, w] : inst.weight_pairs()) {
    a.push_back(2.0 * std::log(w) - y[ij.first] - y[ij.second]);
  }
  const double logS1 = log_sum_exp(a);

  std::vector<double> b;  // 2 log l_i + y_i
  std::vector<int> b_index;
  for (int i = 0; i < n; ++i) {
    if (inst.radius(i) > 0.0) {
      b.push_back(2.0 * std::log(inst.radius(i)) + y[i]);
      b_index.push_back(i);
    }
  }
  const double logS2 = log_sum_exp(b);

  std::vector<double> cterms(y.data(), y.data() + n);
  const double logS3 = log_sum_exp(cterms);

  out.value = 0.5 * (logS1 + logS2 + logS3);

  std::size_t k = 0;
  for (const auto& [ij, w] : inst.weight_pairs()) {
    const double r = std::exp(a[k++] - logS1);
    out.grad[ij.first] -= 0.5 * r;
    out.grad[ij.second] -= 0.5 * r;
  }
  for (std::size_t t = 0; t < b.size(); ++t) {
    out.grad[b_index[t]] += 0.5 * std::exp(b[t] - logS2);
  }
  for (int i = 0; i < n; ++i) {
    out.grad[i] += 0.5 * std::exp(y[i] - logS3);
  }
  return out;
}

DualSolution uniform_dual(int n, double value) {
  DualSolution sol;
  sol.x = DualVector(Eigen::VectorXd::Constant(n, 1.0 / n));
  sol.value = value;
  sol.attained = true;
  sol.converged = true;
  return sol;
}

}  // namespace

Configuration simplex_configuration(int n) {
  if (n < 2) {
    throw std::invalid_argument("simplex_configuration requires n >= 2");
  }
  // Columns are Helmert basis vectors of the hyperplane sum(z) = 0, scaled
  // so every point is unit length and pairwise inner products are -1/(n-1).
  Eigen::MatrixXd P(n, n - 1);
  const double scale = std::sqrt(static_cast<double>(n) / (n - 1));
  for (int k = 0; k < n - 1; ++k) {
    const double kk = k + 1;
    const double denom = std::sqrt(kk * (kk + 1.0));
    for (int i = 0; i < n; ++i) {
      double h = 0.0;
      if (i < k + 1) {
        h = 1.0 / denom;
      } else if (i == k + 1) {
        h = -kk / denom;
      }
      P(i, k) = h * scale;
    }
  }
  return Configuration(std::move(P));
}

Configuration local_ascent(const Instance& inst, const Configuration& cfg0,
                           const SolveParams& params) {
  validate_params(params);
  if (cfg0.size() != inst.size()) {
    throw std::invalid_argument("local_ascent: configuration size mismatch");
  }
  const double lmax = inst.max_radius();
  Rng jitter_rng(derive_seed(params.seed, 0x6a697474ULL));

  Eigen::MatrixXd P = cfg0.points();
  radial_clamp(P, inst);

  const double stat_tol =
      std::max(1e-12, 0.01 * params.tol * (1.0 + inst.total_weight()));
  double obj = objective_of(inst, P);
  double step = -1.0;  // sized from the first force evaluation
  int stalled = 0;

  for (int k = 0; k < params.max_iters; ++k) {
    Configuration cfg(P);
    ForceField field = force_field(inst, cfg);
    if (field.degenerate) {
      // Coincident weighted pairs: seeded jitter, magnitude 1e-9 * lmax.
      for (const auto& [ij, w] : inst.weight_pairs()) {
        const auto [i, j] = ij;
        if ((P.row(i) - P.row(j)).norm() > 0.0) continue;
        if (inst.radius(i) > 0.0) {
          P.row(i) +=
              1e-9 * lmax * jitter_rng.sphere_direction(cfg.dim()).transpose();
        }
        if (inst.radius(j) > 0.0) {
          P.row(j) +=
              1e-9 * lmax * jitter_rng.sphere_direction(cfg.dim()).transpose();
        }
      }
      radial_clamp(P, inst);
      obj = objective_of(inst, P);
      cfg = Configuration(P);
      field = force_field(inst, cfg);
    }

    const double force_max = field.forces.rowwise().norm().maxCoeff();
    if (force_max == 0.0) break;
    const DualExtraction ext = extract_dual(inst, cfg, params.tol);
    if (ext.stationarity_residual <= stat_tol) break;

    if (step < 0.0) step = 0.1 * std::max(lmax, 1e-12) / force_max;

    bool accepted = false;
    while (step > 1e-18 * std::max(1.0, lmax)) {
      Eigen::MatrixXd cand = P + step * field.forces;
      radial_clamp(cand, inst);
      const double cand_obj = objective_of(inst, cand);
      if (cand_obj >= obj) {
        const bool moved = (cand - P).norm() > 0.0;
        P = std::move(cand);
        stalled = (cand_obj > obj || moved) ? 0 : stalled + 1;
        obj = cand_obj;
        step *= 1.3;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || stalled > 50) break;
  }
  return Configuration(std::move(P));
}

SolveResult solve_primal(const Instance& inst, const SolveParams& params) {
  validate_params(params);

  Eigen::MatrixXd best_points;
  double best_value = -kInf;
  std::vector<double> best_trace;
  int total_iterations = 0;

  for (int r = 0; r < params.restarts; ++r) {
    Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(r)));
    GramMatrix Y0 = random_feasible_start(inst, rng);
    AscentOutcome ascent = supergradient_ascent(inst, Y0, params);
    total_iterations += ascent.iterations;

    Configuration factored = factor_gram(ascent.best, 1e-9);
    Eigen::MatrixXd P = pad_and_kick(inst, factored, rng);

    SolveParams polish = params;
    polish.seed = derive_seed(params.seed, 1000 + static_cast<std::uint64_t>(r));
    Configuration refined = local_ascent(inst, Configuration(P), polish);
    const double value = objective(inst, refined);
    if (value > best_value) {
      best_value = value;
      best_points = refined.points();
      best_trace = std::move(ascent.trace);
    }
  }

  return finish_solve(inst, Configuration(std::move(best_points)), params,
                      total_iterations, std::move(best_trace));
}

SolveResult ellipsoid_solve(const Instance& inst, const SolveParams& params) {
  validate_params(params);
  const int n = inst.size();
  if (n > 12) {
    throw std::invalid_argument(
        "ellipsoid_solve: dimension guard exceeded (n = " + std::to_string(n) +
        ", guard n <= 12; matrix dimension n(n+1)/2 grows too fast)");
  }

  const int m = svec_size(n);
  // Feasible matrices satisfy ||Y||_F <= sum l^2; doubled to cover the
  // off-origin start center.
  const double R = 2.0 * inst.radii().array().square().sum() + 1.0;
  double ub = 0.0;
  for (const auto& [ij, w] : inst.weight_pairs()) {
    ub += w * (inst.radius(ij.first) + inst.radius(ij.second));
  }

  // Per-level iteration budget from the standard volume argument.
  const int per_level = static_cast<int>(
      std::ceil(2.0 * m * (m + 1.0) * std::log(std::max(R / (1e-7 * R), 2.0))));

  GramMatrix best(Eigen::MatrixXd::Zero(n, n));  // Y = 0 is always feasible
  double lo = 0.0;
  double hi = ub;
  int total_iterations = 0;
  std::vector<double> trace{0.0};
  const double level_tol = 1e-4 * std::max(1.0, ub);
  while (hi - lo > level_tol) {
    const double mid = 0.5 * (lo + hi);
    const EllipsoidRun run = ellipsoid_feasibility(inst, mid, R, per_level);
    total_iterations += run.iterations;
    if (run.found) {
      best = run.witness;
      lo = sdp_value_and_supergradient(inst, best).value;
      trace.push_back(lo);
    } else {
      hi = mid;
    }
  }

  Rng rng(derive_seed(params.seed, 0xe11ULL));
  Configuration factored = factor_gram(best, 1e-8);
  Eigen::MatrixXd P = pad_and_kick(inst, factored, rng);
  SolveParams polish = params;
  polish.seed = derive_seed(params.seed, 0xe12ULL);
  Configuration refined = local_ascent(inst, Configuration(P), polish);
  return finish_solve(inst, refined, params, total_iterations,
                      std::move(trace));
}

DualSolution minimize_dual(const Instance& inst, const SolveParams& params) {
  validate_params(params);
  const int n = inst.size();
  if (inst.total_weight() == 0.0) {
    return uniform_dual(n, 0.0);  // dual is identically zero, x free
  }
  if (inst.max_radius() == 0.0) {
    return uniform_dual(n, 0.0);  // every point pinned at the origin
  }

  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  LogDualEval cur = eval_log_dual(inst, y);
  const int iters = std::max(5000, params.max_iters);
  const double grad_tol = 1e-11;
  double warm_step = 1.0;

  DualSolution sol;
  for (int k = 1; k <= iters; ++k) {
    sol.iterations = k;
    if (cur.grad.lpNorm<Eigen::Infinity>() <= grad_tol) {
      sol.converged = true;
      break;
    }
    const double g2 = cur.grad.squaredNorm();
    double s = warm_step;
    bool accepted = false;
    while (s > 1e-30) {
      Eigen::VectorXd y_try = y - s * cur.grad;
      y_try.array() -= y_try.mean();  // flat direction along 1
      const LogDualEval next = eval_log_dual(inst, y_try);
      if (next.value <= cur.value - 0.25 * s * g2) {
        y = std::move(y_try);
        cur = next;
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) break;
    warm_step = std::min(s * 2.0, 1e9);
  }
  if (cur.grad.lpNorm<Eigen::Infinity>() <= grad_tol) sol.converged = true;

  const double spread = y.maxCoeff() - y.minCoeff();
  sol.attained = spread <= 20.0;

  Eigen::VectorXd x = (y.array() - y.maxCoeff()).exp();
  x /= x.sum();
  sol.x = DualVector(std::move(x));
  sol.value = dual_objective(inst, sol.x);
  return sol;
}

}  // namespace dispersion
