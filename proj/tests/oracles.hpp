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

// Test-only reference computations. Nothing here calls the strided kernels,
// the direct QFT formula or the protocol engine; each routine rebuilds its
// answer from full matrices, brute-force sums or power series.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "mrqdc/qcore.hpp"

namespace oracle {

using mrqdc::CMatrix;
using mrqdc::complex;
using namespace std::complex_literals;

inline CMatrix h2() {
  const double s = 1.0 / std::sqrt(2.0);
  return CMatrix{{s, s}, {s, -s}};
}
inline CMatrix x2() { return CMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
inline CMatrix y2() { return CMatrix{{0.0, -1i}, {1i, 0.0}}; }
inline CMatrix z2() { return CMatrix{{1.0, 0.0}, {0.0, -1.0}}; }
inline CMatrix id(std::size_t d) { return CMatrix::identity(d); }

/// Full 2^n matrix of `op` placed on `targets` (targets[0] = local MSB), built
/// element by element: <r|U|c> = op[local(r), local(c)] when all other bits agree.
inline CMatrix embed(const CMatrix& op, const std::vector<std::size_t>& targets, std::size_t n) {
  const std::size_t d = std::size_t{1} << n;
  const std::size_t k = targets.size();
  auto local = [&](std::size_t idx) {
    std::size_t l = 0;
    for (std::size_t r = 0; r < k; ++r) l = (l << 1) | ((idx >> targets[r]) & 1U);
    return l;
  };
  std::size_t mask = 0;
  for (auto t : targets) mask |= std::size_t{1} << t;
  CMatrix full(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      if ((r & ~mask) == (c & ~mask)) full(r, c) = op(local(r), local(c));
  return full;
}

inline std::vector<complex> matvec(const CMatrix& m, const std::vector<complex>& v) {
  std::vector<complex> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
  return out;
}

/// Textbook QFT circuit on m qubits (qubit index 0 = MSB here): H and
/// controlled R_l = diag(1, e^{2 pi i / 2^l}) ladders followed by the
/// reversing SWAP network. Returns the full 2^m matrix.
inline CMatrix qft_circuit(std::size_t m) {
  const std::size_t d = std::size_t{1} << m;
  auto pos = [&](std::size_t q) { return m - 1 - q; };  // MSB-first label -> bit position
  CMatrix u = id(d);
  for (std::size_t q = 0; q < m; ++q) {
    u = embed(h2(), {pos(q)}, m) * u;
    for (std::size_t c = q + 1; c < m; ++c) {
      const double angle = 2.0 * std::numbers::pi / std::pow(2.0, static_cast<double>(c - q + 1));
      CMatrix cr = id(4);
      cr(3, 3) = std::exp(1i * angle);
      u = embed(cr, {pos(c), pos(q)}, m) * u;
    }
  }
  CMatrix sw{{1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}};
  for (std::size_t q = 0; q < m / 2; ++q) u = embed(sw, {pos(q), pos(m - 1 - q)}, m) * u;
  return u;
}

/// exp(A) by scaling and squaring of a truncated Taylor series.
inline CMatrix expm(const CMatrix& a) {
  double norm = a.max_abs() * static_cast<double>(a.rows());
  int squarings = 0;
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  const CMatrix scaled = a * complex(std::ldexp(1.0, -squarings));
  CMatrix term = id(a.rows());
  CMatrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * scaled * complex(1.0 / k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Single-qubit ket (|0> + e^{i theta}|1>)/sqrt 2.
inline std::vector<complex> plus_with_phase(double theta) {
  const double s = 1.0 / std::sqrt(2.0);
  return {s, s * std::exp(1i * theta)};
}

inline std::vector<complex> kron(const std::vector<complex>& a, const std::vector<complex>& b) {
  std::vector<complex> out;
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

/// Outer product |a><a|.
inline CMatrix projector(const std::vector<complex>& a) {
  CMatrix m(a.size(), a.size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c) m(r, c) = a[r] * std::conj(a[c]);
  return m;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// ---------------------------------------------------------------------------
// three-spin helpers, kron order (C1, C2, H0); spin index 0 = C1, 1 = C2, 2 = H0

inline CMatrix on_spin(const CMatrix& op, int spin) {
  CMatrix out = spin == 0 ? op : id(2);
  for (int s = 1; s < 3; ++s) out = mrqdc::kron(out, s == spin ? op : id(2));
  return out;
}

inline CMatrix iz(int spin) { return on_spin(z2() * complex(0.5), spin); }
inline CMatrix ix(int spin) { return on_spin(x2() * complex(0.5), spin); }
inline CMatrix iy(int spin) { return on_spin(y2() * complex(0.5), spin); }

/// Hamiltonian assembled from the product-operator formula.
inline CMatrix hamiltonian(double nu1, double nu2, double nu0, double j12, double j20, double j10) {
  const double tp = 2.0 * std::numbers::pi;
  return iz(0) * complex(-tp * nu1) + iz(1) * complex(-tp * nu2) + iz(2) * complex(-tp * nu0) +
         iz(0) * iz(1) * complex(tp * j12) + iz(1) * iz(2) * complex(tp * j20) +
         iz(0) * iz(2) * complex(tp * j10);
}

/// exp(i theta I_a) on each listed spin.
inline CMatrix rotation(double theta, char axis, const std::vector<int>& spins) {
  CMatrix u = id(8);
  for (int s : spins) {
    const CMatrix g = axis == 'x' ? ix(s) : axis == 'y' ? iy(s) : iz(s);
    u = expm(g * complex(0.0, theta)) * u;
  }
  return u;
}

/// Plain O(n^2) sum X_k = sum_n x_n e^{+2 pi i k n / N}.
inline std::vector<complex> naive_dft(const std::vector<complex>& x) {
  const std::size_t n = x.size();
  std::vector<complex> out(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t t = 0; t < n; ++t)
      out[k] += x[t] * std::exp(complex(0.0, 2.0 * std::numbers::pi * static_cast<double>((k * t) % n) /
                                                static_cast<double>(n)));
  return out;
}

}  // namespace oracle
