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

// Pulse sequences. A sequence is listed in time order; its propagator is the
// product with the last element leftmost.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mrqdc/nmr/spin_system.hpp"
#include "mrqdc/qcore.hpp"

namespace mrqdc::nmr {

/// Hard rf pulse on a set of spins. Axis::z is realized as the composite
/// [-pi/2]_y [theta]_x [pi/2]_y.
struct RfPulse {
  double angle = 0.0;
  Axis axis = Axis::x;
  std::vector<std::size_t> spins;
};

/// Ideal z rotation exp(i theta Iz) on one spin.
struct ZRotation {
  double angle = 0.0;
  std::size_t spin = 0;
};

struct CoupledDelay {
  double tau = 0.0;
  std::size_t a = 0;
  std::size_t b = 0;
};

struct FreeDelay {
  double tau = 0.0;
};

struct GradientPulse {};

using PulseElement = std::variant<RfPulse, ZRotation, CoupledDelay, FreeDelay, GradientPulse>;
using PulseSequence = std::vector<PulseElement>;

enum class GradientMode { gamma_weighted, diagonal_only };

inline std::string to_string(GradientMode g) {
  return g == GradientMode::gamma_weighted ? "gamma_weighted" : "diagonal_only";
}
inline GradientMode gradient_from_string(const std::string& s) {
  if (s == "gamma_weighted" || s == "gamma") return GradientMode::gamma_weighted;
  if (s == "diagonal_only" || s == "diagonal") return GradientMode::diagonal_only;
  throw std::invalid_argument("unknown gradient mode '" + s + "'");
}

/// Zeroes every element whose gamma-weighted coherence order
/// q = sum_s gamma_s (m_s(r) - m_s(c)), measured in gamma_C units, is nonzero.
/// diagonal_only keeps the diagonal alone.
inline DensityMatrix gradient_dephase(const DensityMatrix& rho, const SpinSystem& sys,
                                      GradientMode mode = GradientMode::gamma_weighted) {
  if (rho.n_qubits() != kSpinCount) throw std::invalid_argument("gradient expects three spins");
  CMatrix out = rho.matrix();
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) {
      if (r == c) continue;
      if (mode == GradientMode::diagonal_only) {
        out(r, c) = 0.0;
        continue;
      }
      double q = 0.0;
      for (auto s : kSpins) q += sys.gamma(s) * (m_of(r, s) - m_of(c, s));
      if (std::abs(q / sys.gamma_c) > 1e-9) out(r, c) = 0.0;
    }
  return {kSpinCount, std::move(out), rho.kind(), 1e-9};
}

inline PulseSequence composite_z(double theta, const std::vector<std::size_t>& spins) {
  return {RfPulse{-std::numbers::pi / 2, Axis::y, spins}, RfPulse{theta, Axis::x, spins},
          RfPulse{std::numbers::pi / 2, Axis::y, spins}};
}

inline Operator element_unitary(const PulseElement& el, const SpinSystem& sys,
                                 RotationSense sense = RotationSense::positive);

inline Operator sequence_unitary(const PulseSequence& seq, const SpinSystem& sys,
                                 RotationSense sense = RotationSense::positive) {
  Operator u = Operator::identity(kSpinCount);
  for (const auto& el : seq) u = element_unitary(el, sys, sense) * u;
  return u;
}

inline Operator element_unitary(const PulseElement& el, const SpinSystem& sys, RotationSense sense) {
  if (const auto* p = std::get_if<RfPulse>(&el)) {
    if (p->axis == Axis::z) return sequence_unitary(composite_z(p->angle, p->spins), sys, sense);
    return rf_rotation(p->angle, p->axis, p->spins, sense);
  }
  if (const auto* z = std::get_if<ZRotation>(&el)) {
    return {kSpinCount, embed_spin(spin_rotation(z->angle, Axis::z), z->spin), true};
  }
  if (const auto* d = std::get_if<CoupledDelay>(&el)) return coupled_evolution(sys, d->tau, d->a, d->b);
  if (const auto* f = std::get_if<FreeDelay>(&el)) return free_evolution(sys, f->tau);
  throw std::invalid_argument("a gradient pulse has no unitary propagator");
}

struct PropagationOptions {
  RotationSense sense = RotationSense::positive;
  GradientMode gradient = GradientMode::gamma_weighted;
};

/// Runs `seq` on rho in time order; gradients act as coherence filters.
inline DensityMatrix propagate(const PulseSequence& seq, const SpinSystem& sys, DensityMatrix rho,
                               const PropagationOptions& opts = {}) {
  for (const auto& el : seq) {
    if (std::holds_alternative<GradientPulse>(el)) {
      rho = gradient_dephase(rho, sys, opts.gradient);
    } else {
      rho = apply(element_unitary(el, sys, opts.sense), rho);
    }
  }
  return rho;
}

inline std::string describe(const PulseElement& el) {
  auto spins = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  if (const auto* p = std::get_if<RfPulse>(&el))
    return "[" + std::to_string(p->angle) + "]_" + to_string(p->axis) + "^" + spins(p->spins);
  if (const auto* z = std::get_if<ZRotation>(&el))
    return "[" + std::to_string(z->angle) + "]_z^" + std::to_string(z->spin);
  if (const auto* d = std::get_if<CoupledDelay>(&el))
    return "[" + std::to_string(d->tau) + "s]_" + std::to_string(d->a) + std::to_string(d->b);
  if (const auto* f = std::get_if<FreeDelay>(&el)) return "delay " + std::to_string(f->tau) + "s";
  return "[grad]_z";
}

}  // namespace mrqdc::nmr
