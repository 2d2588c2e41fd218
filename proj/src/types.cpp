// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#include "dispersion/types.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dispersion {

namespace {

std::string pair_name(int i, int j) {
  std::ostringstream os;
  os << "(" << i << "," << j << ")";
  return os.str();
}

}  // namespace

InstanceValidation validate_instance(const RawInstance& raw) {
  InstanceValidation result;
  auto& errors = result.errors;

  if (raw.n < 1) {
    errors.push_back("n < 1");
  }
  if (static_cast<int>(raw.radii.size()) != raw.n) {
    std::ostringstream os;
    os << "expected " << raw.n << " radii, got " << raw.radii.size();
    errors.push_back(os.str());
  }
  for (std::size_t k = 0; k < raw.radii.size(); ++k) {
    const double l = raw.radii[k];
    if (!std::isfinite(l)) {
      errors.push_back("non-finite radius " + std::to_string(k + 1));
    } else if (l < 0.0) {
      errors.push_back("negative radius " + std::to_string(k + 1));
    }
  }

  // Symmetric completion: entries may name (i,j) or (j,i); duplicates for
  // one unordered pair must agree.
  std::map<std::pair<int, int>, double> weights;
  for (const auto& e : raw.weights) {
    const int lo = std::min(e.i, e.j);
    const int hi = std::max(e.i, e.j);
    if (e.i < 1 || e.j < 1 || e.i > raw.n || e.j > raw.n) {
      errors.push_back("weight index out of range " + pair_name(e.i, e.j));
      continue;
    }
    if (!std::isfinite(e.w)) {
      errors.push_back("non-finite weight " + pair_name(lo, hi));
      continue;
    }
    if (e.i == e.j) {
      if (e.w != 0.0) {
        errors.push_back("nonzero diagonal weight " + pair_name(e.i, e.j));
      }
      continue;
    }
    if (e.w < 0.0) {
      errors.push_back("negative weight " + pair_name(lo, hi));
      continue;
    }
    auto [it, inserted] = weights.emplace(std::make_pair(lo, hi), e.w);
    if (!inserted && it->second != e.w) {
      errors.push_back("conflicting duplicate weight " + pair_name(lo, hi));
    }
  }

  if (!errors.empty()) return result;

  Instance inst;
  inst.n_ = raw.n;
  inst.radii_ = Eigen::Map<const Eigen::VectorXd>(
      raw.radii.data(), static_cast<Eigen::Index>(raw.radii.size()));
  double total = 0.0;
  for (const auto& [ij, w] : weights) {
    if (w == 0.0) continue;  // sparse storage keeps nonzeros only
    inst.weights_.emplace(std::make_pair(ij.first - 1, ij.second - 1), w);
    total += w;
  }
  inst.total_weight_ = total;
  result.instance = std::move(inst);
  return result;
}

Instance::Instance(int n, const std::vector<WeightEntry>& weights,
                   std::vector<double> radii) {
  RawInstance raw;
  raw.n = n;
  raw.radii = std::move(radii);
  raw.weights.reserve(weights.size());
  for (const auto& e : weights) {
    raw.weights.push_back({e.i + 1, e.j + 1, e.w});
  }
  InstanceValidation v = validate_instance(raw);
  if (!v.ok()) {
    std::string msg = "invalid instance:";
    for (const auto& err : v.errors) msg += " " + err + ";";
    throw std::invalid_argument(msg);
  }
  *this = std::move(*v.instance);
}

double Instance::weight(int i, int j) const {
  if (i == j) return 0.0;
  const auto it = weights_.find(std::minmax(i, j));
  return it == weights_.end() ? 0.0 : it->second;
}

Configuration::Configuration(Eigen::MatrixXd points)
    : points_(std::move(points)) {
  if (points_.rows() < 1 || points_.cols() < 1) {
    throw std::invalid_argument("configuration needs n >= 1 points, dim >= 1");
  }
  if (!points_.allFinite()) {
    throw std::invalid_argument("configuration has non-finite coordinates");
  }
}

DualVector::DualVector(Eigen::VectorXd x) : x_(std::move(x)) {
  if (x_.size() < 1) {
    throw std::invalid_argument("dual vector must be non-empty");
  }
  for (Eigen::Index i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i])) {
      throw std::invalid_argument("non-finite multiplier x_" +
                                  std::to_string(i + 1));
    }
    if (x_[i] < 0.0) {
      throw std::invalid_argument("negative multiplier x_" +
                                  std::to_string(i + 1));
    }
  }
}

GramMatrix::GramMatrix(const Eigen::MatrixXd& Y) {
  if (Y.rows() != Y.cols() || Y.rows() < 1) {
    throw std::invalid_argument("gram matrix must be square and non-empty");
  }
  if (!Y.allFinite()) {
    throw std::invalid_argument("gram matrix has non-finite entries");
  }
  const double scale = Y.cwiseAbs().maxCoeff();
  const double asym = (Y - Y.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * std::max(1.0, scale)) {
    throw std::invalid_argument("matrix is not symmetric");
  }
  Y_ = 0.5 * (Y + Y.transpose());
}

}  // namespace dispersion
