// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DISPERSION_MAXCUT_HPP
#define DISPERSION_MAXCUT_HPP

#include <cstdint>
#include <vector>

#include "dispersion/types.hpp"

namespace dispersion {

/// Undirected weighted graph, 0-based vertices, edges stored with i < j.
struct Graph {
  struct Edge {
    int i = 0;
    int j = 0;
    double w = 0.0;
  };

  int n = 0;
  std::vector<Edge> edges;

  /// Throws on vertex range violations, i == j, negative or non-finite
  /// weights, or duplicate edges.
  static Graph make(int n, std::vector<Edge> edges);
};

struct Cut {
  std::vector<bool> side;  // partition indicator, one entry per vertex
  double value = 0.0;      // total weight of crossing edges
};

double cut_value(const Graph& g, const std::vector<bool>& side);

/// Unit-ball dispersion instance with w(i,j) = edge weight: the reduction
/// behind the rounding bridge.
Instance graph_to_instance(const Graph& g);

struct RoundingResult {
  Cut best;
  std::vector<double> trial_values;  // one entry per trial, for mean stats
};

/// Random-hyperplane rounding: per trial, draw a direction uniformly on the
/// sphere and split vertices by the sign of direction . p_i (zero resolves
/// to the positive side). Deterministic given the seed. Throws if trials < 1
/// or the configuration size differs from the vertex count.
RoundingResult hyperplane_round(const Configuration& cfg, const Graph& g,
                                int trials, std::uint64_t seed);

/// Exact maximum cut by enumeration over 2^(n-1) partitions, vertex 0 held
/// on the false side; ties break to the lexicographically smallest side
/// pattern. Guarded to n <= 20.
Cut brute_force_maxcut(const Graph& g);

}  // namespace dispersion

#endif  // DISPERSION_MAXCUT_HPP
