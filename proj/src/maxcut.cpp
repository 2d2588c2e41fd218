// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#include "dispersion/maxcut.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "dispersion/rng.hpp"

namespace dispersion {

Graph Graph::make(int n, std::vector<Edge> edges) {
  if (n < 1) throw std::invalid_argument("graph needs n >= 1 vertices");
  std::set<std::pair<int, int>> seen;
  for (auto& e : edges) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i < 0 || e.j >= n) {
      throw std::invalid_argument("edge (" + std::to_string(e.i + 1) + "," +
                                  std::to_string(e.j + 1) +
                                  ") out of vertex range");
    }
    if (e.i == e.j) {
      throw std::invalid_argument("self-loop at vertex " +
                                  std::to_string(e.i + 1));
    }
    if (!std::isfinite(e.w) || e.w < 0.0) {
      throw std::invalid_argument("edge (" + std::to_string(e.i + 1) + "," +
                                  std::to_string(e.j + 1) +
                                  ") weight must be finite and nonnegative");
    }
    if (!seen.insert({e.i, e.j}).second) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(e.i + 1) +
                                  "," + std::to_string(e.j + 1) + ")");
    }
  }
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  return g;
}

double cut_value(const Graph& g, const std::vector<bool>& side) {
  if (static_cast<int>(side.size()) != g.n) {
    throw std::invalid_argument("cut_value: side pattern size mismatch");
  }
  double value = 0.0;
  for (const auto& e : g.edges) {
    if (side[e.i] != side[e.j]) value += e.w;
  }
  return value;
}

Instance graph_to_instance(const Graph& g) {
  std::vector<Instance::WeightEntry> weights;
  weights.reserve(g.edges.size());
  for (const auto& e : g.edges) {
    weights.push_back({e.i, e.j, e.w});
  }
  return Instance(g.n, weights, std::vector<double>(g.n, 1.0));
}

RoundingResult hyperplane_round(const Configuration& cfg, const Graph& g,
                                int trials, std::uint64_t seed) {
  if (trials < 1) {
    throw std::invalid_argument("hyperplane_round: trials must be >= 1");
  }
  if (cfg.size() != g.n) {
    throw std::invalid_argument(
        "hyperplane_round: one point per vertex required");
  }

  Rng rng(seed);
  RoundingResult result;
  result.trial_values.reserve(trials);
  result.best.value = -1.0;

  std::vector<bool> side(g.n);
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd direction = rng.sphere_direction(cfg.dim());
    for (int i = 0; i < g.n; ++i) {
      side[i] = cfg.point(i).dot(direction) >= 0.0;  // zero -> positive side
    }
    const double value = cut_value(g, side);
    result.trial_values.push_back(value);
    if (value > result.best.value) {
      result.best.value = value;
      result.best.side = side;
    }
  }
  return result;
}

Cut brute_force_maxcut(const Graph& g) {
  if (g.n > 20) {
    throw std::invalid_argument(
        "brute_force_maxcut guarded to n <= 20 (got n = " +
        std::to_string(g.n) + ")");
  }
  const int n = g.n;
  Cut best;
  best.side.assign(n, false);
  best.value = 0.0;

  std::vector<bool> side(n, false);
  const std::uint32_t masks = n > 1 ? (1u << (n - 1)) : 1u;
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    // Vertex 0 stays false; bit k of the mask drives vertex k+1. Scanning
    // masks in increasing order with bit 0 = vertex 1 visits patterns in
    // lexicographic order of the reversed tail, so ties need an explicit
    // pattern comparison.
    for (int v = 1; v < n; ++v) {
      side[v] = (mask >> (v - 1)) & 1u;
    }
    const double value = cut_value(g, side);
    if (value > best.value ||
        (value == best.value &&
         std::lexicographical_compare(side.begin(), side.end(),
                                      best.side.begin(), best.side.end()))) {
      best.value = value;
      best.side = side;
    }
  }
  return best;
}

}  // namespace dispersion
