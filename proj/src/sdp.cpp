// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#include "dispersion/sdp.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dispersion {

namespace {

Eigen::MatrixXd clamp_to_psd(const Eigen::MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  const Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXd Y =
      es.eigenvectors() * lambda.asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (Y + Y.transpose());
}

Eigen::MatrixXd clamp_diagonal(const Eigen::MatrixXd& S,
                               const Instance& inst) {
  Eigen::MatrixXd Y = S;
  for (int i = 0; i < inst.size(); ++i) {
    const double bound = inst.radius(i) * inst.radius(i);
    Y(i, i) = std::min(Y(i, i), bound);
  }
  return Y;
}

}  // namespace

GramMatrix psd_project(const Eigen::MatrixXd& S) {
  return GramMatrix(clamp_to_psd(GramMatrix(S).matrix()));
}

ProjectionResult feasible_project(const Eigen::MatrixXd& S,
                                  const Instance& inst, double tol,
                                  int max_iters) {
  if (S.rows() != inst.size() || S.cols() != inst.size()) {
    throw std::invalid_argument("feasible_project: size mismatch");
  }
  const Eigen::MatrixXd start = GramMatrix(S).matrix();

  Eigen::MatrixXd x = start;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(x.rows(), x.cols());
  Eigen::MatrixXd q = p;

  ProjectionResult out;
  for (int k = 1; k <= max_iters; ++k) {
    const Eigen::MatrixXd y = clamp_to_psd(x + p);
    p = x + p - y;
    const Eigen::MatrixXd next = clamp_diagonal(y + q, inst);
    q = y + q - next;
    const double step = (next - x).norm();
    x = next;
    out.iterations = k;
    if (step <= 0.1 * tol * std::max(1.0, x.norm())) {
      const GramMatrix candidate(x);
      if (separation_oracle(inst, candidate, tol).feasible) {
        out.gram = candidate;
        out.converged = true;
        return out;
      }
    }
  }
  // Cap hit: hand back the best iterate, cleaned by one final PSD pass so
  // downstream factorization stays usable.
  out.gram = GramMatrix(clamp_to_psd(clamp_diagonal(x, inst)));
  out.converged = separation_oracle(inst, out.gram, tol).feasible;
  return out;
}

SdpEval sdp_value_and_supergradient(const Instance& inst,
                                    const GramMatrix& Y) {
  if (Y.size() != inst.size()) {
    throw std::invalid_argument("sdp_value_and_supergradient: size mismatch");
  }
  const Eigen::MatrixXd& M = Y.matrix();
  SdpEval eval;
  eval.supergradient = Eigen::MatrixXd::Zero(M.rows(), M.cols());
  for (const auto& [ij, w] : inst.weight_pairs()) {
    const auto [i, j] = ij;
    const double d2 = std::max(0.0, M(i, i) + M(j, j) - 2.0 * M(i, j));
    const double d = std::sqrt(d2);
    eval.value += w * d;
    if (d > 0.0) {
      const double g = w / (2.0 * d);
      eval.supergradient(i, i) += g;
      eval.supergradient(j, j) += g;
      eval.supergradient(i, j) -= g;
      eval.supergradient(j, i) -= g;
    }
  }
  return eval;
}

SeparationResult separation_oracle(const Instance& inst, const GramMatrix& Y,
                                   double tol) {
  if (Y.size() != inst.size()) {
    throw std::invalid_argument("separation_oracle: size mismatch");
  }
  const Eigen::MatrixXd& M = Y.matrix();
  SeparationResult result;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("separation_oracle: eigendecomposition failed");
  }
  // Eigenvalues ascend; the first is the most violated direction.
  if (es.eigenvalues()[0] < -tol) {
    const Eigen::VectorXd v = es.eigenvectors().col(0);
    SeparationCut cut;
    cut.functional = v * v.transpose();
    cut.bound = 0.0;
    cut.greater_equal = true;
    cut.value = es.eigenvalues()[0];
    std::ostringstream os;
    os << "eigenvector cut: v'Yv = " << cut.value << " < 0";
    cut.description = os.str();
    result.cut = std::move(cut);
    return result;
  }

  for (int i = 0; i < inst.size(); ++i) {
    const double bound = inst.radius(i) * inst.radius(i);
    if (M(i, i) > bound + tol) {
      SeparationCut cut;
      cut.functional = Eigen::MatrixXd::Zero(M.rows(), M.cols());
      cut.functional(i, i) = 1.0;
      cut.bound = bound;
      cut.greater_equal = false;
      cut.value = M(i, i);
      std::ostringstream os;
      os << "diagonal bound: Y_" << i + 1 << i + 1 << " = " << cut.value
         << " > " << bound;
      cut.description = os.str();
      result.cut = std::move(cut);
      return result;
    }
  }

  result.feasible = true;
  return result;
}

Configuration factor_gram(const GramMatrix& Y, double tol) {
  const Eigen::MatrixXd& M = Y.matrix();
  const int n = static_cast<int>(M.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("factor_gram: eigendecomposition failed");
  }
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if (lambda[0] < -tol * scale) {
    std::ostringstream os;
    os << "factor_gram: matrix is not PSD within tol (min eigenvalue "
       << lambda[0] << ")";
    throw std::invalid_argument(os.str());
  }

  // Dropped tail eigenvalues sum to at most tol*scale, keeping the
  // reconstruction within the advertised tol*(1 + max|Y|).
  const double cutoff = tol * scale / n;
  int rank = 0;
  for (int k = 0; k < n; ++k) {
    if (lambda[k] > cutoff) ++rank;
  }
  const int dim = std::max(1, rank);

  Eigen::MatrixXd points = Eigen::MatrixXd::Zero(n, dim);
  for (int c = 0; c < rank; ++c) {
    const int k = n - 1 - c;  // take the top `rank` eigenpairs
    points.col(c) = es.eigenvectors().col(k) * std::sqrt(lambda[k]);
  }
  return Configuration(std::move(points));
}

}  // namespace dispersion
