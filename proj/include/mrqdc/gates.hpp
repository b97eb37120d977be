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

// Named gates. Phase conventions:
//   Rz(phi)      = exp(i phi Iz) = diag(e^{i phi/2}, e^{-i phi/2}),  Iz = sigma_z / 2
//   CPhase(phi)  = diag(1, 1, 1, e^{i phi})
//   InvQFT(m)    <k|F^-1|n> = e^{-2 pi i n k / 2^m} / sqrt(2^m), register read MSB-first
//
// The inverse QFT kernel sign is the one that decodes sum_n e^{+2 pi i n k/2^m}|n>
// into |k>. The output bit reversal is part of the matrix; no separate SWAP stage.

#pragma once

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrqdc/qcore.hpp"

namespace mrqdc::gates {

using namespace std::complex_literals;

inline Operator identity(std::size_t n_qubits = 1) { return Operator::identity(n_qubits); }

inline Operator pauli_x() { return {1, CMatrix{{0.0, 1.0}, {1.0, 0.0}}, true}; }
inline Operator pauli_y() { return {1, CMatrix{{0.0, -1i}, {1i, 0.0}}, true}; }
inline Operator pauli_z() { return {1, CMatrix{{1.0, 0.0}, {0.0, -1.0}}, true}; }

inline Operator hadamard() {
  const double s = 1.0 / std::numbers::sqrt2;
  return {1, CMatrix{{s, s}, {s, -s}}, true};
}

inline Operator rz(double phi) {
  return {1, CMatrix{{std::exp(1i * (phi / 2)), 0.0}, {0.0, std::exp(-1i * (phi / 2))}}, true};
}

/// Two-qubit CNOT with the first local qubit as control.
inline Operator cnot() {
  return {2,
          CMatrix{{1.0, 0.0, 0.0, 0.0},
                  {0.0, 1.0, 0.0, 0.0},
                  {0.0, 0.0, 0.0, 1.0},
                  {0.0, 0.0, 1.0, 0.0}},
          true};
}

inline Operator controlled_phase(double phi) {
  const std::vector<complex> d{1.0, 1.0, 1.0, std::exp(1i * phi)};
  return {2, CMatrix::diagonal(d), true};
}

inline Operator swap() {
  return {2,
          CMatrix{{1.0, 0.0, 0.0, 0.0},
                  {0.0, 0.0, 1.0, 0.0},
                  {0.0, 1.0, 0.0, 0.0},
                  {0.0, 0.0, 0.0, 1.0}},
          true};
}

namespace detail {

inline Operator build_inverse_qft(std::size_t m) {
  const std::size_t d = dimension_of(m);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  // Roots of unity indexed by (n * k) mod d keep every angle exact.
  std::vector<complex> roots(d);
  for (std::size_t r = 0; r < d; ++r)
    roots[r] = norm * std::exp(-2i * std::numbers::pi * static_cast<double>(r) / static_cast<double>(d));
  CMatrix f(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t n = 0; n < d; ++n) f(k, n) = roots[(n * k) % d];
  return {m, std::move(f), true};
}

}  // namespace detail

/// Built (and unitarity-checked) once per register size, then copied.
inline Operator inverse_qft(std::size_t m) {
  if (m == 0) throw std::invalid_argument("inverse QFT needs m >= 1");
  if (m > kMaxQubits) throw std::invalid_argument("inverse QFT register too large");
  static std::array<std::once_flag, kMaxQubits + 1> once;
  static std::array<std::optional<Operator>, kMaxQubits + 1> cache;
  std::call_once(once[m], [m] { cache[m] = detail::build_inverse_qft(m); });
  return *cache[m];
}

inline Operator qft(std::size_t m) { return inverse_qft(m).adjoint(); }

/// An operator together with the qubits it acts on.
struct PlacedGate {
  Operator op;
  std::vector<std::size_t> targets;
};

inline PlacedGate cnot(std::size_t control, std::size_t target) {
  if (control == target) throw std::invalid_argument("CNOT control and target must differ");
  return {cnot(), {control, target}};
}

inline StateVector apply(const PlacedGate& g, const StateVector& psi) {
  return mrqdc::apply(g.op, g.targets, psi);
}
inline DensityMatrix apply(const PlacedGate& g, const DensityMatrix& rho) {
  return mrqdc::apply(g.op, g.targets, rho);
}

enum class GateKind { I, X, Y, Z, H, Rz, CNOT, CPhase, SWAP, InvQFT };

struct GateSpec {
  GateKind kind = GateKind::I;
  double angle = 0.0;      // Rz, CPhase
  std::size_t size = 1;    // InvQFT register width
};

inline Operator materialize(const GateSpec& g) {
  switch (g.kind) {
    case GateKind::I: return identity();
    case GateKind::X: return pauli_x();
    case GateKind::Y: return pauli_y();
    case GateKind::Z: return pauli_z();
    case GateKind::H: return hadamard();
    case GateKind::Rz: return rz(g.angle);
    case GateKind::CNOT: return cnot();
    case GateKind::CPhase: return controlled_phase(g.angle);
    case GateKind::SWAP: return swap();
    case GateKind::InvQFT: return inverse_qft(g.size);
  }
  throw std::invalid_argument("unknown gate kind");
}

inline std::string name_of(GateKind k) {
  switch (k) {
    case GateKind::I: return "I";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::H: return "H";
    case GateKind::Rz: return "Rz";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CPhase: return "CPhase";
    case GateKind::SWAP: return "SWAP";
    case GateKind::InvQFT: return "InvQFT";
  }
  return "?";
}

}  // namespace mrqdc::gates
