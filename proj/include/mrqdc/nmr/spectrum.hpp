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

// Free induction decay and spectrum synthesis for one observed spin.
//
// The readout pulse [pi/2]_y is applied to the observed spin, then
//   s(t) = Tr[rho(t) I+] exp(-t / T2),  I+ = Ix + i Iy,
// evolves under the diagonal Hamiltonian. The transform uses exp(+i 2 pi f t),
// which puts the lines of spin s at nu_s - sum_a J_sa m_a.

#pragma once

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "json.hpp"
#include "mrqdc/nmr/spin_system.hpp"

namespace mrqdc::nmr {

struct SpectrumOptions {
  double t2 = 0.5;            // s
  std::size_t n_samples = 16384;
  double dwell = 2.5e-4;      // s; spectral window 1 / dwell
  double threshold = 0.05;    // relative to the largest magnitude

  double resolution() const { return 1.0 / (static_cast<double>(n_samples) * dwell); }
  double nyquist() const { return 0.5 / dwell; }

  void validate() const {
    if (n_samples < 2) throw std::invalid_argument("need at least 2 samples");
    if (!(dwell > 0)) throw std::invalid_argument("dwell must be positive");
    if (!(t2 > 0)) throw std::invalid_argument("t2 must be positive");
    if (!(threshold > 0 && threshold < 1)) throw std::invalid_argument("threshold must be in (0, 1)");
  }
};

struct Fid {
  std::vector<complex> samples;
  double dwell = 0.0;
  std::size_t observed_spin = 0;
  double t2 = 0.0;
};

struct SpectrumLine {
  double frequency = 0.0;  // Hz
  complex amplitude;
};

struct Spectrum {
  std::size_t observed_spin = 0;
  double resolution = 0.0;
  std::vector<double> frequencies;  // ascending
  std::vector<complex> values;
  std::vector<SpectrumLine> lines;  // ascending frequency
};

/// Line positions {nu_s +/- J_sa/2 +/- J_sb/2} of spin s, ascending.
inline std::vector<double> multiplet(const SpinSystem& sys, std::size_t spin) {
  std::vector<std::size_t> others;
  for (auto s : kSpins)
    if (s != spin) others.push_back(s);
  const double ja = sys.coupling(spin, others[0]);
  const double jb = sys.coupling(spin, others[1]);
  std::vector<double> out;
  for (double sa : {-0.5, 0.5})
    for (double sb : {-0.5, 0.5}) out.push_back(sys.frequency(spin) + sa * ja + sb * jb);
  std::sort(out.begin(), out.end());
  return out;
}

/// Throws std::invalid_argument when the sampling cannot resolve or contain the multiplet.
inline void check_sampling(const SpinSystem& sys, std::size_t spin, const SpectrumOptions& opts) {
  opts.validate();
  double jmin = std::numeric_limits<double>::infinity();
  for (auto s : kSpins)
    if (s != spin) jmin = std::min(jmin, sys.coupling(spin, s));
  if (opts.resolution() > jmin / 2) {
    std::ostringstream os;
    os << "degenerate sampling: resolution " << opts.resolution() << " Hz cannot resolve J = "
       << jmin << " Hz (need n_samples * dwell >= " << 2.0 / jmin << " s)";
    throw std::invalid_argument(os.str());
  }
  for (double f : multiplet(sys, spin)) {
    if (std::abs(f) >= opts.nyquist()) {
      std::ostringstream os;
      os << "degenerate sampling: line at " << f << " Hz outside the +/-" << opts.nyquist()
         << " Hz window";
      throw std::invalid_argument(os.str());
    }
  }
}

inline Fid acquire_fid(const DensityMatrix& rho, const SpinSystem& sys, std::size_t spin,
                       const SpectrumOptions& opts = {}) {
  if (rho.n_qubits() != kSpinCount) throw std::invalid_argument("spectrum expects three spins");
  check_sampling(sys, spin, opts);
  const DensityMatrix r = apply(rf_rotation(std::numbers::pi / 2, Axis::y, {spin}), rho);
  const auto e = energies(sys);
  const std::size_t bit = std::size_t{1} << bit_of(spin);

  // Tr[rho I+] = sum over pairs (c down, r up) of rho(c, r).
  std::vector<std::pair<complex, double>> terms;  // (coefficient, angular frequency)
  for (std::size_t up = 0; up < 8; ++up) {
    if (up & bit) continue;
    const std::size_t down = up | bit;
    terms.emplace_back(r(down, up), e[down] - e[up]);
  }

  Fid fid{std::vector<complex>(opts.n_samples), opts.dwell, spin, opts.t2};
  for (std::size_t n = 0; n < opts.n_samples; ++n) {
    const double t = static_cast<double>(n) * opts.dwell;
    complex s = 0.0;
    for (const auto& [c, w] : terms) s += c * std::exp(complex(0.0, -w * t));
    fid.samples[n] = s * std::exp(-t / opts.t2);
  }
  return fid;
}

/// Discrete transform exp(+i 2 pi f t), scaled by the dwell and centred at 0 Hz.
inline Spectrum transform(const Fid& fid, double threshold = 0.05) {
  const std::size_t n = fid.samples.size();
  if (n < 2 || !(fid.dwell > 0) || !(fid.t2 > 0)) throw std::invalid_argument("invalid FID");
  std::unique_ptr<fftw_complex[], void (*)(void*)> buf(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)), fftw_free);
  if (!buf) throw std::bad_alloc();
  const auto plan_deleter = [](fftw_plan p) { fftw_destroy_plan(p); };
  std::unique_ptr<std::remove_pointer_t<fftw_plan>, decltype(plan_deleter)> plan(
      fftw_plan_dft_1d(static_cast<int>(n), buf.get(), buf.get(), FFTW_BACKWARD, FFTW_ESTIMATE),
      plan_deleter);
  for (std::size_t i = 0; i < n; ++i) {
    buf[i][0] = fid.samples[i].real();
    buf[i][1] = fid.samples[i].imag();
  }
  fftw_execute(plan.get());

  Spectrum sp;
  sp.observed_spin = fid.observed_spin;
  sp.resolution = 1.0 / (static_cast<double>(n) * fid.dwell);
  sp.frequencies.resize(n);
  sp.values.resize(n);
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t src = (i + n - half) % n;  // fftshift
    const auto k = static_cast<double>(i) - static_cast<double>(half);
    sp.frequencies[i] = k * sp.resolution;
    sp.values[i] = complex(buf[src][0], buf[src][1]) * fid.dwell;
  }

  double peak = 0.0;
  for (const auto& v : sp.values) peak = std::max(peak, std::abs(v));
  if (peak <= 1e-12) return sp;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(sp.values[i]);
    if (a < threshold * peak) continue;
    const double left = i > 0 ? std::abs(sp.values[i - 1]) : 0.0;
    const double right = i + 1 < n ? std::abs(sp.values[i + 1]) : 0.0;
    if (a > left && a >= right) sp.lines.push_back({sp.frequencies[i], sp.values[i]});
  }
  return sp;
}

inline Spectrum synthesize_spectrum(const DensityMatrix& rho, const SpinSystem& sys, std::size_t spin,
                                    const SpectrumOptions& opts = {}) {
  return transform(acquire_fid(rho, sys, spin, opts), opts.threshold);
}

/// Phase of the single line that the |000> pseudo-pure state gives on `spin`.
inline double reference_phase(const SpinSystem& sys, std::size_t spin, const SpectrumOptions& opts = {}) {
  CMatrix m = CMatrix::identity(8) * complex(-0.25);
  m(0, 0) += 2.0;
  const auto sp = synthesize_spectrum({kSpinCount, std::move(m), TraceKind::deviation}, sys, spin, opts);
  if (sp.lines.size() != 1) throw std::logic_error("reference spectrum must have exactly one line");
  return std::arg(sp.lines.front().amplitude);
}

/// Absorptive amplitude relative to the reference phase: positive like the |000> line.
inline double signed_amplitude(const SpectrumLine& line, double ref_phase) {
  return (line.amplitude * std::exp(complex(0.0, -ref_phase))).real();
}

inline void write_spectrum_csv(std::ostream& os, const Spectrum& sp) {
  os << "frequency_hz,amplitude_re,amplitude_im\n";
  os << std::setprecision(12);
  for (std::size_t i = 0; i < sp.values.size(); ++i)
    os << sp.frequencies[i] << ',' << sp.values[i].real() << ',' << sp.values[i].imag() << '\n';
}

inline nlohmann::json peaks_to_json(const Spectrum& sp, double ref_phase) {
  nlohmann::json peaks = nlohmann::json::array();
  for (const auto& l : sp.lines) {
    peaks.push_back({{"frequency_hz", l.frequency},
                     {"amplitude_re", l.amplitude.real()},
                     {"amplitude_im", l.amplitude.imag()},
                     {"signed_amplitude", signed_amplitude(l, ref_phase)}});
  }
  return {{"observed_spin", spin_name(sp.observed_spin)},
          {"resolution_hz", sp.resolution},
          {"reference_phase", ref_phase},
          {"peaks", peaks}};
}

}  // namespace mrqdc::nmr
