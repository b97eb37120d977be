// Copyright 2026 The mrqdc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON form of a protocol transcript, used for replay and golden files:
//
//   {"m", "k", "b", "noise": {"kind", "p"},
//    "events": [{"round", "actor", "op", "reduced_state"?, "snapshot"?}],
//    "decoded": {"k", "b"}, "distribution": {bitstring: prob}}
//
// Complex numbers are [re, im]. reduced_state is a 2x2 matrix of pairs.
// snapshot is {"kind": "state_vector", "amplitudes": [...]} or
// {"kind": "density_matrix", "elements": [[...]]}.

#pragma once

#include <string>

#include "json.hpp"
#include "mrqdc/protocol.hpp"

namespace mrqdc::io {

using nlohmann::json;

inline json complex_to_json(const complex& z) { return json::array({z.real(), z.imag()}); }

inline complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline CMatrix matrix_from_json(const json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j.at(r).size() != cols) throw std::invalid_argument("ragged matrix in JSON");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j.at(r).at(c));
  }
  return m;
}

inline std::size_t qubits_for_dim(std::size_t d) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < d) ++n;
  if ((std::size_t{1} << n) != d) throw std::invalid_argument("dimension is not a power of two");
  return n;
}

inline json density_to_json(const DensityMatrix& rho) { return matrix_to_json(rho.matrix()); }

inline DensityMatrix density_from_json(const json& j, double tol = 1e-9) {
  CMatrix m = matrix_from_json(j);
  return {qubits_for_dim(m.rows()), std::move(m), TraceKind::normalized, tol};
}

inline json snapshot_to_json(const protocol::Snapshot& s) {
  if (const auto* psi = std::get_if<StateVector>(&s)) {
    json amps = json::array();
    for (const auto& a : psi->amplitudes()) amps.push_back(complex_to_json(a));
    return {{"kind", "state_vector"}, {"amplitudes", std::move(amps)}};
  }
  return {{"kind", "density_matrix"},
          {"elements", density_to_json(std::get<DensityMatrix>(s))}};
}

inline protocol::Snapshot snapshot_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "state_vector") {
    std::vector<complex> amps;
    for (const auto& a : j.at("amplitudes")) amps.push_back(complex_from_json(a));
    const std::size_t n = qubits_for_dim(amps.size());
    return StateVector(n, std::move(amps), 1e-9);
  }
  if (kind == "density_matrix") return density_from_json(j.at("elements"));
  throw std::invalid_argument("unknown snapshot kind '" + kind + "'");
}

inline json to_json(const protocol::Transcript& t) {
  json events = json::array();
  for (const auto& e : t.events) {
    json je = {{"round", e.round}, {"actor", protocol::to_string(e.actor)}, {"op", e.op}};
    if (e.flying_state) je["reduced_state"] = density_to_json(*e.flying_state);
    if (e.snapshot) je["snapshot"] = snapshot_to_json(*e.snapshot);
    events.push_back(std::move(je));
  }
  json dist = json::object();
  for (const auto& [bits, p] : t.distribution) dist[bits] = p;
  return {{"m", t.m},
          {"k", t.k},
          {"b", t.b},
          {"noise", {{"kind", protocol::to_string(t.noise.kind)}, {"p", t.noise.p}}},
          {"events", std::move(events)},
          {"decoded", {{"k", t.decoded.k}, {"b", t.decoded.b}}},
          {"distribution", std::move(dist)}};
}

inline protocol::Transcript transcript_from_json(const json& j) {
  protocol::Transcript t;
  t.m = j.at("m").get<std::size_t>();
  t.k = j.at("k").get<std::uint64_t>();
  t.b = j.at("b").get<int>();
  protocol::Message{t.m, t.k, t.b}.validate();
  t.noise.kind = protocol::channel_from_string(j.at("noise").at("kind").get<std::string>());
  t.noise.p = j.at("noise").at("p").get<double>();
  t.noise.validate();
  for (const auto& je : j.at("events")) {
    protocol::Event e;
    e.round = je.at("round").get<std::size_t>();
    e.actor = protocol::actor_from_string(je.at("actor").get<std::string>());
    e.op = je.at("op").get<std::string>();
    if (je.contains("reduced_state")) e.flying_state = density_from_json(je.at("reduced_state"));
    if (je.contains("snapshot")) e.snapshot = snapshot_from_json(je.at("snapshot"));
    t.events.push_back(std::move(e));
  }
  t.decoded.k = j.at("decoded").at("k").get<std::uint64_t>();
  t.decoded.b = j.at("decoded").at("b").get<int>();
  for (const auto& [bits, p] : j.at("distribution").items()) t.distribution[bits] = p.get<double>();
  return t;
}

}  // namespace mrqdc::io
