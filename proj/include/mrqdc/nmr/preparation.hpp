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

// Effective-pure-state preparation by spatial averaging.

#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "mrqdc/nmr/pulse_format.hpp"

namespace mrqdc::nmr {

/// Deviation part of the equilibrium state: gamma_C (Iz1 + Iz2) + gamma_H Iz0.
inline DensityMatrix thermal_state(const SpinSystem& sys) {
  sys.validate();
  CMatrix m = complex(sys.gamma_c) * (iz(kC1) + iz(kC2)) + complex(sys.gamma_h) * iz(kH0);
  return {kSpinCount, std::move(m), TraceKind::deviation};
}

/// Target deviation operator
///   Iz1/2 + Iz2/2 + Iz0/2 + Iz1 Iz2 + Iz2 Iz0 + Iz1 Iz0 + 2 Iz1 Iz2 Iz0,
/// which equals 2|000><000| - I/4.
inline DensityMatrix effective_pure_target() {
  const CMatrix z1 = iz(kC1), z2 = iz(kC2), z0 = iz(kH0);
  CMatrix m = complex(0.5) * (z1 + z2 + z0) + z1 * z2 + z2 * z0 + z1 * z0 + complex(2.0) * (z1 * z2 * z0);
  return {kSpinCount, std::move(m), TraceKind::deviation};
}

/// A pseudo-pure deviation operator 2|psi><psi| - I/4 for a three-spin basis state.
inline DensityMatrix pseudo_pure(std::uint64_t basis_index) {
  if (basis_index >= 8) throw std::invalid_argument("basis index out of range");
  CMatrix m = CMatrix::identity(8) * complex(-0.25);
  m(basis_index, basis_index) += 2.0;
  return {kSpinCount, std::move(m), TraceKind::deviation};
}

struct PrepOptions {
  LabelMap labels = default_labels();
  RotationSense sense = RotationSense::positive;
  GradientMode gradient = GradientMode::gamma_weighted;
  std::optional<PulseSequence> sequence;  // defaults to the bundled preparation
};

struct PrepResult {
  DensityMatrix rho;
  std::vector<double> diagonal;
  std::vector<double> target_diagonal;
  double correlation = 0.0;      // Pearson, diag(rho) vs diag(target)
  double scale = 0.0;            // least-squares c in diag(rho) ~ c diag(target)
  double residual = 0.0;         // max |diag(rho) - c diag(target)|
  double max_off_diagonal = 0.0;
  bool proportional = false;     // residual <= 1e-9 max(1, |c|) and c != 0
};

namespace detail {

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace detail

inline PrepResult assess_preparation(DensityMatrix rho) {
  const auto target = effective_pure_target();
  PrepResult r{.rho = std::move(rho), .diagonal = {}, .target_diagonal = {}};
  for (std::size_t i = 0; i < 8; ++i) {
    r.diagonal.push_back(r.rho(i, i).real());
    r.target_diagonal.push_back(target(i, i).real());
    for (std::size_t j = 0; j < 8; ++j)
      if (i != j) r.max_off_diagonal = std::max(r.max_off_diagonal, std::abs(r.rho(i, j)));
  }
  double num = 0, den = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    num += r.diagonal[i] * r.target_diagonal[i];
    den += r.target_diagonal[i] * r.target_diagonal[i];
  }
  r.scale = num / den;
  for (std::size_t i = 0; i < 8; ++i)
    r.residual = std::max(r.residual, std::abs(r.diagonal[i] - r.scale * r.target_diagonal[i]));
  r.correlation = detail::pearson(r.diagonal, r.target_diagonal);
  r.proportional = std::abs(r.scale) > 1e-12 && r.residual <= 1e-9 * std::max(1.0, std::abs(r.scale));
  return r;
}

/// Runs the preparation sequence on the thermal state.
inline PrepResult prepare_effective_pure(const SpinSystem& sys, const PrepOptions& opts = {}) {
  flip_angle_alpha(sys);  // throws when infeasible
  const PulseSequence seq = opts.sequence ? *opts.sequence : pseudo_pure_sequence(sys, opts.labels);
  return assess_preparation(propagate(seq, sys, thermal_state(sys), {opts.sense, opts.gradient}));
}

}  // namespace mrqdc::nmr
