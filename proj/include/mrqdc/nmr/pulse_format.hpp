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

// JSON mini-format for pulse sequences:
//
//   {"name": "...",
//    "elements": [{"kind": "rf", "angle_or_tau": "pi/4", "axis": "x", "targets": [1, 2]},
//                 {"kind": "coupled_delay", "angle_or_tau": "1/2J", "targets": [1, 2]},
//                 {"kind": "z_rotation", "angle_or_tau": "pi", "targets": [2]},
//                 {"kind": "free_delay", "angle_or_tau": 0.001},
//                 {"kind": "gradient"}]}
//
// Angles are radians, given as numbers or as "[-][a]pi[/b]" / "[-]alpha".
// Delays are seconds, given as numbers or as "a/bJ" meaning a / (b J_pair).
// "targets" holds sequence labels; a LabelMap sends them to spins, which lets
// a sequence written with labels {1, 2, 3} run on spins {1, 2, 0}.

#pragma once

#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <string>

#include "json.hpp"
#include "mrqdc/nmr/pulse.hpp"

namespace mrqdc::nmr {

using LabelMap = std::map<int, std::size_t>;

/// 1 -> C1, 2 -> C2, 0 -> H0, and the stray label 3 -> H0.
inline LabelMap default_labels() { return {{0, kH0}, {1, kC1}, {2, kC2}, {3, kH0}}; }

/// Parses "1:1,2:2,3:0,0:0"; unspecified labels keep their default.
inline LabelMap parse_label_map(const std::string& text) {
  LabelMap m = default_labels();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("label map entry needs label:spin");
    const int label = std::stoi(item.substr(0, colon));
    const auto spin = static_cast<std::size_t>(std::stoul(item.substr(colon + 1)));
    if (spin >= kSpinCount) throw std::invalid_argument("label map spin out of range");
    m[label] = spin;
  }
  return m;
}

inline std::string format_label_map(const LabelMap& m) {
  std::string s;
  for (const auto& [label, spin] : m) {
    if (!s.empty()) s += ",";
    s += std::to_string(label) + ":" + std::to_string(spin);
  }
  return s;
}

namespace detail {

inline double parse_angle(const nlohmann::json& v, const SpinSystem& sys) {
  if (v.is_number()) return v.get<double>();
  const std::string s = v.get<std::string>();
  static const std::regex alpha(R"(^\s*(-)?\s*alpha\s*$)");
  static const std::regex pi_expr(R"(^\s*(-)?\s*([0-9]*\.?[0-9]+)?\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
  std::smatch mt;
  if (std::regex_match(s, mt, alpha)) {
    return (mt[1].matched ? -1.0 : 1.0) * flip_angle_alpha(sys);
  }
  if (std::regex_match(s, mt, pi_expr)) {
    double v2 = std::numbers::pi;
    if (mt[2].matched) v2 *= std::stod(mt[2].str());
    if (mt[3].matched) v2 /= std::stod(mt[3].str());
    return mt[1].matched ? -v2 : v2;
  }
  throw std::invalid_argument("cannot parse angle '" + s + "'");
}

inline double parse_tau(const nlohmann::json& v, double j) {
  if (v.is_number()) return v.get<double>();
  const std::string s = v.get<std::string>();
  static const std::regex over_j(R"(^\s*([0-9]*\.?[0-9]+)\s*/\s*([0-9]*\.?[0-9]+)\s*J\s*$)");
  std::smatch mt;
  if (std::regex_match(s, mt, over_j)) return std::stod(mt[1].str()) / (std::stod(mt[2].str()) * j);
  throw std::invalid_argument("cannot parse delay '" + s + "'");
}

inline Axis parse_axis(const std::string& s) {
  if (s == "x") return Axis::x;
  if (s == "y") return Axis::y;
  if (s == "z") return Axis::z;
  throw std::invalid_argument("unknown axis '" + s + "'");
}

inline std::vector<std::size_t> map_targets(const nlohmann::json& t, const LabelMap& labels) {
  std::vector<std::size_t> out;
  for (const auto& x : t) {
    const int label = x.get<int>();
    const auto it = labels.find(label);
    if (it == labels.end()) throw std::invalid_argument("unmapped spin label " + std::to_string(label));
    out.push_back(it->second);
  }
  return out;
}

}  // namespace detail

inline PulseSequence parse_pulse_sequence(const nlohmann::json& doc, const SpinSystem& sys,
                                          const LabelMap& labels = default_labels()) {
  PulseSequence seq;
  for (const auto& e : doc.at("elements")) {
    const std::string kind = e.at("kind").get<std::string>();
    if (kind == "gradient") {
      seq.emplace_back(GradientPulse{});
    } else if (kind == "rf") {
      seq.emplace_back(RfPulse{detail::parse_angle(e.at("angle_or_tau"), sys),
                               detail::parse_axis(e.at("axis").get<std::string>()),
                               detail::map_targets(e.at("targets"), labels)});
    } else if (kind == "z_rotation") {
      const auto t = detail::map_targets(e.at("targets"), labels);
      for (auto s : t) seq.emplace_back(ZRotation{detail::parse_angle(e.at("angle_or_tau"), sys), s});
    } else if (kind == "coupled_delay") {
      const auto t = detail::map_targets(e.at("targets"), labels);
      if (t.size() != 2 || t[0] == t[1]) {
        throw std::invalid_argument("coupled delay needs two distinct spins after label mapping");
      }
      const double tau = detail::parse_tau(e.at("angle_or_tau"), sys.coupling(t[0], t[1]));
      seq.emplace_back(CoupledDelay{tau, t[0], t[1]});
    } else if (kind == "free_delay") {
      const auto& v = e.at("angle_or_tau");
      if (!v.is_number()) throw std::invalid_argument("free delay needs a numeric duration");
      seq.emplace_back(FreeDelay{v.get<double>()});
    } else {
      throw std::invalid_argument("unknown pulse element kind '" + kind + "'");
    }
  }
  return seq;
}

inline PulseSequence load_pulse_sequence(const std::string& path, const SpinSystem& sys,
                                         const LabelMap& labels = default_labels()) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open pulse sequence file '" + path + "'");
  return parse_pulse_sequence(nlohmann::json::parse(in), sys, labels);
}

/// Pseudo-pure preparation sequence, identical to assets/pseudo_pure_prep.json.
/// The coupled delays name spin 3, which the default label map sends to H0.
inline constexpr const char* kPseudoPurePrepJson = R"json({
  "name": "pseudo_pure_prep",
  "description": "spatial-averaging preparation of the |000> effective pure state from thermal equilibrium",
  "elements": [
    {"kind": "rf", "angle_or_tau": "pi/4", "axis": "x", "targets": [1, 2]},
    {"kind": "coupled_delay", "angle_or_tau": "1/2J", "targets": [1, 2]},
    {"kind": "rf", "angle_or_tau": "-5pi/6", "axis": "y", "targets": [1, 2]},
    {"kind": "rf", "angle_or_tau": "alpha", "axis": "x", "targets": [0]},
    {"kind": "gradient"},
    {"kind": "rf", "angle_or_tau": "pi/4", "axis": "y", "targets": [0]},
    {"kind": "coupled_delay", "angle_or_tau": "9/2J", "targets": [2, 3]},
    {"kind": "coupled_delay", "angle_or_tau": "1/2J", "targets": [1, 3]},
    {"kind": "rf", "angle_or_tau": "pi/4", "axis": "y", "targets": [0]},
    {"kind": "gradient"},
    {"kind": "rf", "angle_or_tau": "pi/4", "axis": "y", "targets": [0]},
    {"kind": "coupled_delay", "angle_or_tau": "9/4J", "targets": [2, 3]},
    {"kind": "coupled_delay", "angle_or_tau": "1/4J", "targets": [1, 3]},
    {"kind": "rf", "angle_or_tau": "pi/4", "axis": "x", "targets": [0]},
    {"kind": "gradient"}
  ]
}
)json";

inline PulseSequence pseudo_pure_sequence(const SpinSystem& sys,
                                          const LabelMap& labels = default_labels()) {
  return parse_pulse_sequence(nlohmann::json::parse(kPseudoPurePrepJson), sys, labels);
}

}  // namespace mrqdc::nmr
