// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#include "dispersion/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

namespace dispersion {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open file: " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

int require_int(const json& j, const std::string& name) {
  if (!j.contains(name) || !j[name].is_number_integer()) {
    throw InputError("missing or non-integer field \"" + name + "\"");
  }
  return j[name].get<int>();
}

// [[i, j, w], ...] with integral i, j.
std::vector<RawInstance::Entry> parse_triples(const json& arr,
                                              const std::string& what) {
  if (!arr.is_array()) {
    throw InputError("\"" + what + "\" must be an array of [i, j, w] triples");
  }
  std::vector<RawInstance::Entry> out;
  out.reserve(arr.size());
  for (const auto& t : arr) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() ||
        !t[1].is_number_integer() || !t[2].is_number()) {
      throw InputError("malformed " + what +
                       " entry (expected [int, int, number]): " + t.dump());
    }
    out.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<double>()});
  }
  return out;
}

}  // namespace

double decode_real(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw InputError("expected a real number, got: " + j.dump());
}

json encode_real(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Instance instance_from_json(const json& j) {
  RawInstance raw;
  raw.n = require_int(j, "n");
  if (j.contains("weights")) {
    raw.weights = parse_triples(j["weights"], "weights");
  }
  if (!j.contains("radii") || !j["radii"].is_array()) {
    throw InputError("missing \"radii\" array");
  }
  for (const auto& r : j["radii"]) {
    if (!r.is_number()) {
      throw InputError("radii entries must be numbers, got: " + r.dump());
    }
    raw.radii.push_back(r.get<double>());
  }
  InstanceValidation v = validate_instance(raw);
  if (!v.ok()) {
    throw InputError("invalid instance", v.errors);
  }
  return std::move(*v.instance);
}

Instance load_instance(const std::string& path) {
  return instance_from_json(parse_file(path));
}

Graph graph_from_json(const json& j) {
  const int n = require_int(j, "n");
  std::vector<Graph::Edge> edges;
  if (j.contains("edges")) {
    for (const auto& e : parse_triples(j["edges"], "edges")) {
      edges.push_back({e.i - 1, e.j - 1, e.w});
    }
  }
  try {
    return Graph::make(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw InputError("invalid graph", {e.what()});
  }
}

Graph load_graph(const std::string& path) {
  return graph_from_json(parse_file(path));
}

Configuration points_from_json(const json& j) {
  const json& arr = j.is_object() && j.contains("points") ? j["points"] : j;
  if (!arr.is_array() || arr.empty()) {
    throw InputError("expected a non-empty \"points\" array");
  }
  const std::size_t dim = arr[0].is_array() ? arr[0].size() : 0;
  if (dim == 0) {
    throw InputError("points must be non-empty coordinate arrays");
  }
  Eigen::MatrixXd P(arr.size(), dim);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_array() || arr[i].size() != dim) {
      throw InputError("point " + std::to_string(i + 1) +
                       " has inconsistent dimension");
    }
    for (std::size_t k = 0; k < dim; ++k) {
      if (!arr[i][k].is_number()) {
        throw InputError("point " + std::to_string(i + 1) +
                         " has a non-numeric coordinate");
      }
      P(i, k) = arr[i][k].get<double>();
    }
  }
  try {
    return Configuration(std::move(P));
  } catch (const std::invalid_argument& e) {
    throw InputError("invalid points", {e.what()});
  }
}

Configuration load_points(const std::string& path) {
  return points_from_json(parse_file(path));
}

DualVector dual_from_json(const json& j) {
  const json& arr = j.is_object() && j.contains("x") ? j["x"] : j;
  if (!arr.is_array() || arr.empty()) {
    throw InputError("expected a non-empty \"x\" array");
  }
  Eigen::VectorXd x(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw InputError("x entries must be numbers, got: " + arr[i].dump());
    }
    x[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  try {
    return DualVector(std::move(x));
  } catch (const std::invalid_argument& e) {
    throw InputError("invalid dual vector", {e.what()});
  }
}

DualVector load_dual(const std::string& path) {
  return dual_from_json(parse_file(path));
}

json points_json(const Configuration& cfg) {
  json pts = json::array();
  for (int i = 0; i < cfg.size(); ++i) {
    json row = json::array();
    for (int k = 0; k < cfg.dim(); ++k) {
      row.push_back(cfg.points()(i, k));
    }
    pts.push_back(std::move(row));
  }
  return pts;
}

json certificate_json(const Certificate& cert) {
  json j;
  j["primal_value"] = encode_real(cert.primal_value);
  j["dual_value"] = encode_real(cert.dual_value);
  j["gap"] = encode_real(cert.gap);
  j["relative_gap"] = encode_real(cert.relative_gap);
  j["stationarity_residual"] = encode_real(cert.stationarity_residual);
  j["weight_consistency_residual"] =
      encode_real(cert.weight_consistency_residual);
  j["affinely_independent"] = cert.affinely_independent;
  j["degenerate"] = cert.degenerate;
  j["verdict"] = to_string(cert.verdict);
  json x = json::array();
  for (int i = 0; i < cert.x.size(); ++i) x.push_back(cert.x[i]);
  j["x"] = std::move(x);
  if (!cert.unextractable.empty()) {
    json u = json::array();
    for (int i : cert.unextractable) u.push_back(i + 1);
    j["unextractable"] = std::move(u);
  }
  if (!cert.reasons.empty()) {
    j["reasons"] = cert.reasons;
  }
  return j;
}

json result_json(const SolveResult& result, std::uint64_t seed) {
  json j;
  j["primal_value"] = encode_real(result.primal_value);
  j["dual_bound"] = encode_real(result.dual_bound);
  j["gap"] = encode_real(result.dual_bound - result.primal_value);
  j["verdict"] = to_string(result.certificate.verdict);
  j["points"] = points_json(result.config);
  json x = json::array();
  for (int i = 0; i < result.certificate.x.size(); ++i) {
    x.push_back(result.certificate.x[i]);
  }
  j["x"] = std::move(x);
  j["diagnostics"] = {{"iterations", result.iterations},
                      {"converged", result.converged},
                      {"seed", seed},
                      {"status", result.status}};
  return j;
}

json dual_solution_json(const DualSolution& sol, std::uint64_t seed) {
  json j;
  json x = json::array();
  for (int i = 0; i < sol.x.size(); ++i) x.push_back(sol.x[i]);
  j["x"] = std::move(x);
  j["value"] = encode_real(sol.value);
  j["attained"] = sol.attained;
  j["diagnostics"] = {{"iterations", sol.iterations},
                      {"converged", sol.converged},
                      {"seed", seed}};
  return j;
}

json cut_json(const Cut& cut) {
  json j;
  j["side"] = cut.side;
  j["value"] = encode_real(cut.value);
  return j;
}

void write_json_file(const json& j, const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) {
      throw std::runtime_error("cannot write file: " + tmp.string());
    }
    out << j.dump(2) << "\n";
    if (!out) {
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

}  // namespace dispersion
