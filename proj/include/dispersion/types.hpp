// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DISPERSION_TYPES_HPP
#define DISPERSION_TYPES_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace dispersion {

struct RawInstance;
struct InstanceValidation;

/// Weighted max-dispersion instance: n points, symmetric nonnegative pair
/// weights (sparse, zero diagonal), per-point ball radii.
///
/// All in-memory indices are 0-based. Ingestion files are 1-based; the io
/// layer converts.
class Instance {
 public:
  struct WeightEntry {
    int i;  // 0-based
    int j;  // 0-based, i < j
    double w;
  };

  /// Throws std::invalid_argument on any constraint violation.
  /// `weights` entries may use either index order; entries are stored on the
  /// upper triangle. Duplicate entries for the same unordered pair must agree.
  Instance(int n, const std::vector<WeightEntry>& weights,
           std::vector<double> radii);

  int size() const { return n_; }

  /// Symmetric lookup, 0 for absent pairs and the diagonal.
  double weight(int i, int j) const;

  /// Nonzero weights, keyed (i, j) with i < j. Deterministic order.
  const std::map<std::pair<int, int>, double>& weight_pairs() const {
    return weights_;
  }

  double total_weight() const { return total_weight_; }

  const Eigen::VectorXd& radii() const { return radii_; }
  double radius(int i) const { return radii_[i]; }
  double max_radius() const { return n_ > 0 ? radii_.maxCoeff() : 0.0; }

 private:
  friend InstanceValidation validate_instance(const RawInstance& raw);
  Instance() = default;

  int n_ = 0;
  std::map<std::pair<int, int>, double> weights_;
  Eigen::VectorXd radii_;
  double total_weight_ = 0.0;
};

/// Ingestion form of an instance, 1-based indices as in the paper and the
/// file formats. Produced by hand or by the io layer, consumed by
/// validate_instance.
struct RawInstance {
  struct Entry {
    int i = 0;  // 1-based
    int j = 0;  // 1-based
    double w = 0.0;
  };
  int n = 0;
  std::vector<Entry> weights;
  std::vector<double> radii;
};

struct InstanceValidation {
  std::optional<Instance> instance;
  std::vector<std::string> errors;  // complete list, 1-based index names
  bool ok() const { return errors.empty(); }
};

/// Checks every field of `raw` and either returns a normalized Instance
/// (weights symmetrized onto the upper triangle, zero diagonal) or the full
/// list of violations.
InstanceValidation validate_instance(const RawInstance& raw);

/// A primal candidate: n points of one shared dimension, stored as rows.
class Configuration {
 public:
  /// Empty placeholder; real configurations come from the validating ctor.
  Configuration() = default;

  /// Throws on empty matrix or non-finite coordinates.
  explicit Configuration(Eigen::MatrixXd points);

  int size() const { return static_cast<int>(points_.rows()); }
  int dim() const { return static_cast<int>(points_.cols()); }

  const Eigen::MatrixXd& points() const { return points_; }
  Eigen::MatrixXd& points() { return points_; }

  Eigen::RowVectorXd point(int i) const { return points_.row(i); }

 private:
  Eigen::MatrixXd points_;  // n x dim
};

/// A dual candidate: nonnegative multipliers x_1..x_n.
class DualVector {
 public:
  DualVector() = default;

  /// Throws on negative or non-finite entries.
  explicit DualVector(Eigen::VectorXd x);

  int size() const { return static_cast<int>(x_.size()); }
  const Eigen::VectorXd& values() const { return x_; }
  double operator[](int i) const { return x_[i]; }
  double sum() const { return x_.sum(); }

 private:
  Eigen::VectorXd x_;
};

/// Symmetric n x n matrix of inner products. PSD-ness is checked by the
/// operations that need it, not assumed here.
class GramMatrix {
 public:
  GramMatrix() = default;

  /// Requires near-symmetry (relative to the largest entry); the stored
  /// matrix is exactly symmetrized. Throws otherwise.
  explicit GramMatrix(const Eigen::MatrixXd& Y);

  int size() const { return static_cast<int>(Y_.rows()); }
  const Eigen::MatrixXd& matrix() const { return Y_; }
  double operator()(int i, int j) const { return Y_(i, j); }

 private:
  Eigen::MatrixXd Y_;
};

/// Objective gradient read as pairwise repulsion forces, one row per point.
struct ForceField {
  Eigen::MatrixXd forces;  // n x dim, rows sum to zero
  /// True iff some pair with positive weight sits at distance zero (the
  /// zero-subgradient selection was used there).
  bool degenerate = false;
};

}  // namespace dispersion

#endif  // DISPERSION_TYPES_HPP
