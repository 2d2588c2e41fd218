// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DISPERSION_IO_HPP
#define DISPERSION_IO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dispersion/certify.hpp"
#include "dispersion/maxcut.hpp"
#include "dispersion/solve.hpp"
#include "dispersion/types.hpp"

namespace dispersion {

/// Bad or invalid input file; carries the complete violation list.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, std::vector<std::string> details = {})
      : std::runtime_error(what), details_(std::move(details)) {}
  const std::vector<std::string>& details() const { return details_; }

 private:
  std::vector<std::string> details_;
};

// File formats (all 1-based indices on disk, converted here):
//   instance: {"n": int, "weights": [[i, j, w], ...], "radii": [l1, ...]}
//   graph:    {"n": int, "edges":  [[i, j, w], ...]}
//   points:   {"points": [[...], ...]} or a bare array of points
//   dual:     {"x": [x1, ...]} or a bare array
// Non-finite reals are encoded as the strings "inf", "-inf", "nan".

Instance load_instance(const std::string& path);
Graph load_graph(const std::string& path);
Configuration load_points(const std::string& path);
DualVector load_dual(const std::string& path);

Instance instance_from_json(const nlohmann::json& j);
Graph graph_from_json(const nlohmann::json& j);
Configuration points_from_json(const nlohmann::json& j);
DualVector dual_from_json(const nlohmann::json& j);

nlohmann::json points_json(const Configuration& cfg);
nlohmann::json certificate_json(const Certificate& cert);
nlohmann::json result_json(const SolveResult& result, std::uint64_t seed);
nlohmann::json dual_solution_json(const DualSolution& sol,
                                  std::uint64_t seed);
nlohmann::json cut_json(const Cut& cut);

double decode_real(const nlohmann::json& j);
nlohmann::json encode_real(double v);

/// Serializes and writes via a temp file + rename, so a failed run never
/// leaves a partial output behind.
void write_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace dispersion

#endif  // DISPERSION_IO_HPP
