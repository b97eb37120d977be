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

// Three-spin weakly coupled system (two 13C and one 1H of trichloroethylene)
// and its elementary propagators. Spin labels match the protocol qubits:
// C1 = 1, C2 = 2, H0 = 0, laid out as |C1 C2 H0>.
//
// Rotation convention: [theta]_a = exp(+i theta I_a), the same sense as
// Rz(phi) = exp(i phi Iz). RotationSense::negative flips it for exploration.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrqdc/gates.hpp"
#include "mrqdc/layout.hpp"
#include "mrqdc/qcore.hpp"

namespace mrqdc::nmr {

inline constexpr std::size_t kH0 = 0;
inline constexpr std::size_t kC1 = 1;
inline constexpr std::size_t kC2 = 2;
inline constexpr std::size_t kSpinCount = 3;
inline constexpr std::array<std::size_t, 3> kSpins{kC1, kC2, kH0};

inline std::string spin_name(std::size_t s) {
  switch (s) {
    case kH0: return "H0";
    case kC1: return "C1";
    case kC2: return "C2";
  }
  throw std::invalid_argument("unknown spin label");
}

inline std::size_t spin_from_name(const std::string& s) {
  if (s == "H0" || s == "0") return kH0;
  if (s == "C1" || s == "1") return kC1;
  if (s == "C2" || s == "2") return kC2;
  throw std::invalid_argument("unknown spin '" + s + "'");
}

inline const RegisterLayout& layout() {
  static const RegisterLayout l(2);
  return l;
}

inline std::size_t bit_of(std::size_t spin) {
  if (spin >= kSpinCount) throw std::invalid_argument("spin label out of range");
  return layout().position(spin);
}

/// Magnetic quantum number (+1/2 for |0>, -1/2 for |1>) of `spin` in basis state `index`.
inline double m_of(std::size_t index, std::size_t spin) {
  return ((index >> bit_of(spin)) & 1U) ? -0.5 : 0.5;
}

struct SpinSystem {
  // Rotating-frame offsets (Hz); only differences matter for line spacings.
  double nu1 = 904.4;
  double nu2 = 0.0;
  double nu0 = 0.0;
  double j12 = 103.1;
  double j20 = 203.8;
  double j10 = 9.16;
  // 10^7 rad s^-1 T^-1
  double gamma_c = 6.728;
  double gamma_h = 26.752;

  static SpinSystem trichloroethylene() { return {}; }

  void validate() const {
    if (!(j12 > 0 && j20 > 0 && j10 > 0)) throw std::invalid_argument("J couplings must be positive");
    if (!(gamma_c > 0 && gamma_h > 0)) throw std::invalid_argument("gyromagnetic ratios must be positive");
  }

  double frequency(std::size_t s) const {
    switch (s) {
      case kH0: return nu0;
      case kC1: return nu1;
      case kC2: return nu2;
    }
    throw std::invalid_argument("spin label out of range");
  }

  double gamma(std::size_t s) const {
    if (s >= kSpinCount) throw std::invalid_argument("spin label out of range");
    return s == kH0 ? gamma_h : gamma_c;
  }

  double coupling(std::size_t a, std::size_t b) const {
    if (a >= kSpinCount || b >= kSpinCount || a == b) {
      throw std::invalid_argument("coupling needs two distinct spins");
    }
    const auto lo = std::min(a, b), hi = std::max(a, b);
    if (lo == kH0 && hi == kC1) return j10;
    if (lo == kH0 && hi == kC2) return j20;
    return j12;
  }
};

/// Proton flip angle used by the pseudo-pure preparation: arccos(-gamma_C sqrt6 / gamma_H).
/// Needs gamma_H > sqrt6 gamma_C.
inline double flip_angle_alpha(const SpinSystem& sys) {
  sys.validate();
  const double arg = -sys.gamma_c * std::sqrt(6.0) / sys.gamma_h;
  if (arg < -1.0) {
    throw std::invalid_argument("infeasible alpha: gamma_H must exceed sqrt(6) gamma_C");
  }
  return std::acos(arg);
}

/// Single-spin 2x2 operator embedded in the 8x8 space.
inline CMatrix embed_spin(const CMatrix& op, std::size_t spin) {
  if (spin >= kSpinCount) throw std::invalid_argument("spin label out of range");
  const CMatrix id = CMatrix::identity(2);
  return kron(kron(spin == kC1 ? op : id, spin == kC2 ? op : id), spin == kH0 ? op : id);
}

inline CMatrix iz(std::size_t spin) {
  return embed_spin(CMatrix{{0.5, 0.0}, {0.0, -0.5}}, spin);
}

/// Diagonal of the Hamiltonian
///   H = -2 pi (nu1 Iz1 + nu2 Iz2 + nu0 Iz0) + 2 pi (J12 Iz1 Iz2 + J20 Iz2 Iz0 + J10 Iz1 Iz0)
/// in rad/s.
inline std::vector<double> energies(const SpinSystem& sys) {
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> e(8);
  for (std::size_t i = 0; i < 8; ++i) {
    const double m1 = m_of(i, kC1), m2 = m_of(i, kC2), m0 = m_of(i, kH0);
    e[i] = -two_pi * (sys.nu1 * m1 + sys.nu2 * m2 + sys.nu0 * m0) +
           two_pi * (sys.j12 * m1 * m2 + sys.j20 * m2 * m0 + sys.j10 * m1 * m0);
  }
  return e;
}

/// No positivity check on J, so the all-zero system gives the zero operator.
inline Operator hamiltonian(const SpinSystem& sys) {
  const auto e = energies(sys);
  const std::vector<complex> d(e.begin(), e.end());
  return {3, CMatrix::diagonal(d)};
}

/// exp(-i H tau)
inline Operator free_evolution(const SpinSystem& sys, double tau) {
  if (tau < 0) throw std::invalid_argument("delay must be non-negative");
  const auto e = energies(sys);
  std::vector<complex> d(8);
  for (std::size_t i = 0; i < 8; ++i) d[i] = std::exp(complex(0.0, -e[i] * tau));
  return {3, CMatrix::diagonal(d), true};
}

/// [tau]_ab = exp(-i 2 pi J_ab tau Iz_a Iz_b), other couplings refocused.
inline Operator coupled_evolution(const SpinSystem& sys, double tau, std::size_t a, std::size_t b) {
  if (tau < 0) throw std::invalid_argument("coupled evolution needs tau >= 0");
  const double j = sys.coupling(a, b);
  std::vector<complex> d(8);
  for (std::size_t i = 0; i < 8; ++i)
    d[i] = std::exp(complex(0.0, -2.0 * std::numbers::pi * j * tau * m_of(i, a) * m_of(i, b)));
  return {3, CMatrix::diagonal(d), true};
}

enum class Axis { x, y, z };
enum class RotationSense { positive, negative };

inline std::string to_string(Axis a) { return a == Axis::x ? "x" : a == Axis::y ? "y" : "z"; }
inline std::string to_string(RotationSense s) {
  return s == RotationSense::positive ? "positive" : "negative";
}

/// exp(+/- i theta sigma_a / 2) on one spin.
inline CMatrix spin_rotation(double theta, Axis axis, RotationSense sense = RotationSense::positive) {
  const double s = sense == RotationSense::positive ? 1.0 : -1.0;
  const complex c = std::cos(theta / 2);
  const complex is = complex(0.0, s * std::sin(theta / 2));
  switch (axis) {
    case Axis::x: return CMatrix{{c, is}, {is, c}};
    case Axis::y: return CMatrix{{c, is * complex(0.0, -1.0)}, {is * complex(0.0, 1.0), c}};
    case Axis::z: return CMatrix{{c + is, 0.0}, {0.0, c - is}};
  }
  throw std::invalid_argument("unknown axis");
}

/// Hard pulse [theta]_axis applied simultaneously to every spin in `targets`.
inline Operator rf_rotation(double theta, Axis axis, const std::vector<std::size_t>& targets,
                            RotationSense sense = RotationSense::positive) {
  CMatrix u = CMatrix::identity(8);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (targets[i] == targets[j]) throw std::invalid_argument("duplicate pulse target");
    u = embed_spin(spin_rotation(theta, axis, sense), targets[i]) * u;
  }
  return {3, std::move(u), true};
}

}  // namespace mrqdc::nmr
