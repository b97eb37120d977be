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

// Dense complex kernel: states, operators, tensor products, partial trace,
// measurement statistics and comparison up to a global phase.
//
// Qubit indices used by this header are bit positions of the basis index:
// qubit 0 is the least significant bit. A multi-qubit operator applied to
// targets {t0, t1, ...} sees t0 as the most significant bit of its local
// index, so cnot applied to {c, t} uses c as the control.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mrqdc {

using complex = std::complex<double>;

inline constexpr double kOperatorTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

inline constexpr std::size_t kMaxQubits = 20;

inline std::size_t dimension_of(std::size_t n_qubits) {
  if (n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count " + std::to_string(n_qubits) +
                                " exceeds the dense limit");
  }
  return std::size_t{1} << n_qubits;
}

/// Basis index rendered as a bit string, most significant bit first.
inline std::string to_bitstring(std::uint64_t index, std::size_t n_qubits) {
  std::string s(n_qubits, '0');
  for (std::size_t i = 0; i < n_qubits; ++i) {
    if ((index >> i) & 1U) s[n_qubits - 1 - i] = '1';
  }
  return s;
}

inline std::uint64_t from_bitstring(std::string_view bits) {
  if (bits.empty() || bits.size() > 64) {
    throw std::invalid_argument("bad bit string length");
  }
  std::uint64_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bad bit string");
    v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return v;
}

// Row-major dense complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<complex> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw std::invalid_argument("matrix data size mismatch");
    }
  }
  CMatrix(std::initializer_list<std::initializer_list<complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static CMatrix diagonal(std::span<const complex> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const complex> data() const { return data_; }
  std::span<complex> data() { return data_; }

  CMatrix adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  complex trace() const {
    complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  CMatrix& operator+=(const CMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  CMatrix& operator*=(complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, complex s) { return a *= s; }
  friend CMatrix operator*(complex s, CMatrix a) { return a *= s; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    CMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const complex aik = a(i, k);
        if (aik == complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  void check_same_shape(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw std::invalid_argument("matrix shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex> data_;
};

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const complex s = a(ar, ac);
      if (s == complex{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix shape mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline double hermiticity_error(const CMatrix& m) {
  double e = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      e = std::max(e, std::abs(m(r, c) - std::conj(m(c, r))));
  return e;
}

class DensityMatrix;

class StateVector {
 public:
  StateVector(std::size_t n_qubits, std::vector<complex> amplitudes, double tol = kNormTol)
      : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    if (amps_.size() != dimension_of(n_qubits_)) {
      throw std::invalid_argument("amplitude count must be 2^n_qubits");
    }
    if (std::abs(norm_squared() - 1.0) > tol) {
      throw std::invalid_argument("state vector is not normalized");
    }
  }

  static StateVector basis(std::size_t n_qubits, std::uint64_t index) {
    std::vector<complex> a(dimension_of(n_qubits));
    if (index >= a.size()) throw std::invalid_argument("basis index out of range");
    a[index] = 1.0;
    return {n_qubits, std::move(a)};
  }
  static StateVector from_bits(std::string_view bits) {
    return basis(bits.size(), from_bitstring(bits));
  }

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const complex> amplitudes() const { return amps_; }
  const complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  DensityMatrix to_density() const;

 private:
  std::size_t n_qubits_;
  std::vector<complex> amps_;
};

/// Normalized states carry unit trace; deviation operators (NMR product-operator
/// states) are traceless or otherwise unnormalized and are flagged as such.
enum class TraceKind { normalized, deviation };

class DensityMatrix {
 public:
  DensityMatrix(std::size_t n_qubits, CMatrix elements, TraceKind kind = TraceKind::normalized,
                double tol = kNormTol)
      : n_qubits_(n_qubits), rho_(std::move(elements)), kind_(kind) {
    const std::size_t d = dimension_of(n_qubits_);
    if (rho_.rows() != d || rho_.cols() != d) {
      throw std::invalid_argument("density matrix dimension must be 2^n_qubits");
    }
    // Deviation operators scale with gyromagnetic ratios, so tolerance is relative.
    const double scale = kind_ == TraceKind::deviation ? std::max(1.0, rho_.max_abs()) : 1.0;
    if (hermiticity_error(rho_) > tol * scale) {
      throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (kind_ == TraceKind::normalized && std::abs(rho_.trace() - 1.0) > tol) {
      throw std::invalid_argument("density matrix trace is not 1");
    }
  }

  static DensityMatrix maximally_mixed(std::size_t n_qubits) {
    const std::size_t d = dimension_of(n_qubits);
    return {n_qubits, CMatrix::identity(d) * complex(1.0 / static_cast<double>(d))};
  }

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return rho_.rows(); }
  const CMatrix& matrix() const { return rho_; }
  const complex& operator()(std::size_t r, std::size_t c) const { return rho_(r, c); }
  TraceKind kind() const { return kind_; }
  bool is_deviation() const { return kind_ == TraceKind::deviation; }
  complex trace() const { return rho_.trace(); }

 private:
  std::size_t n_qubits_;
  CMatrix rho_;
  TraceKind kind_;
};

inline DensityMatrix StateVector::to_density() const {
  const std::size_t d = dim();
  CMatrix m(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m(r, c) = amps_[r] * std::conj(amps_[c]);
  return {n_qubits_, std::move(m)};
}

class Operator {
 public:
  Operator(std::size_t n_qubits, CMatrix elements, bool unitary = false,
           double tol = kOperatorTol)
      : n_qubits_(n_qubits), u_(std::move(elements)), unitary_(unitary) {
    const std::size_t d = dimension_of(n_qubits_);
    if (u_.rows() != d || u_.cols() != d) {
      throw std::invalid_argument("operator dimension must be 2^n_qubits");
    }
    if (unitary_ && unitarity_error() > tol) {
      throw std::invalid_argument("operator flagged unitary is not unitary");
    }
  }

  static Operator identity(std::size_t n_qubits) {
    return {n_qubits, CMatrix::identity(dimension_of(n_qubits)), true};
  }

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return u_.rows(); }
  const CMatrix& matrix() const { return u_; }
  const complex& operator()(std::size_t r, std::size_t c) const { return u_(r, c); }
  bool is_unitary() const { return unitary_; }

  double unitarity_error() const {
    return max_abs_diff(u_.adjoint() * u_, CMatrix::identity(u_.rows()));
  }

  Operator adjoint() const { return {n_qubits_, u_.adjoint(), unitary_}; }

  /// Composition: (a * b) applies b first.
  friend Operator operator*(const Operator& a, const Operator& b) {
    if (a.n_qubits_ != b.n_qubits_) throw std::invalid_argument("operator size mismatch");
    // Products of unitaries drift by rounding only; re-check at a loose bound.
    return {a.n_qubits_, a.u_ * b.u_, a.unitary_ && b.unitary_, 1e-9};
  }
  friend Operator operator*(complex s, const Operator& a) {
    return {a.n_qubits_, s * a.u_, a.unitary_ && std::abs(std::abs(s) - 1.0) < 1e-12};
  }

 private:
  std::size_t n_qubits_;
  CMatrix u_;
  bool unitary_;
};

// ---------------------------------------------------------------------------
// tensor_product

inline Operator tensor_product(const Operator& a, const Operator& b) {
  return {a.n_qubits() + b.n_qubits(), kron(a.matrix(), b.matrix()),
          a.is_unitary() && b.is_unitary(), 1e-9};
}

inline StateVector tensor_product(const StateVector& a, const StateVector& b) {
  std::vector<complex> out;
  out.reserve(a.dim() * b.dim());
  for (const auto& x : a.amplitudes())
    for (const auto& y : b.amplitudes()) out.push_back(x * y);
  return {a.n_qubits() + b.n_qubits(), std::move(out), 1e-10};
}

inline DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  const TraceKind kind = a.is_deviation() || b.is_deviation() ? TraceKind::deviation
                                                              : TraceKind::normalized;
  return {a.n_qubits() + b.n_qubits(), kron(a.matrix(), b.matrix()), kind, 1e-10};
}

// ---------------------------------------------------------------------------
// apply

namespace detail {

inline void validate_targets(std::span<const std::size_t> targets, std::size_t op_qubits,
                             std::size_t n_qubits) {
  if (targets.size() != op_qubits) {
    throw std::invalid_argument("operator acts on " + std::to_string(op_qubits) +
                                " qubits but " + std::to_string(targets.size()) +
                                " targets were given");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= n_qubits) throw std::invalid_argument("target qubit out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (targets[i] == targets[j]) throw std::invalid_argument("duplicate target qubit");
  }
}

// Global basis offset of each local index; targets[0] is the local MSB.
inline std::vector<std::size_t> local_offsets(std::span<const std::size_t> targets) {
  const std::size_t k = targets.size();
  std::vector<std::size_t> off(std::size_t{1} << k);
  for (std::size_t l = 0; l < off.size(); ++l) {
    std::size_t o = 0;
    for (std::size_t r = 0; r < k; ++r)
      if ((l >> (k - 1 - r)) & 1U) o |= std::size_t{1} << targets[r];
    off[l] = o;
  }
  return off;
}

/// In-place v <- U v on the embedded targets. Element i of v lives at data[i * stride].
inline void apply_in_place(const CMatrix& u, std::span<const std::size_t> targets,
                           std::size_t n_qubits, complex* data, std::size_t stride = 1,
                           bool conjugate = false) {
  const auto off = local_offsets(targets);
  const std::size_t d = off.size();
  std::size_t mask = 0;
  for (auto t : targets) mask |= std::size_t{1} << t;
  std::vector<complex> in(d), out(d);
  const std::size_t full = std::size_t{1} << n_qubits;
  for (std::size_t base = 0; base < full; ++base) {
    if (base & mask) continue;
    for (std::size_t l = 0; l < d; ++l) in[l] = data[(base | off[l]) * stride];
    for (std::size_t r = 0; r < d; ++r) {
      complex acc = 0.0;
      for (std::size_t c = 0; c < d; ++c)
        acc += (conjugate ? std::conj(u(r, c)) : u(r, c)) * in[c];
      out[r] = acc;
    }
    for (std::size_t l = 0; l < d; ++l) data[(base | off[l]) * stride] = out[l];
  }
}

/// rho <- U rho U^dagger with U embedded on targets; works on unnormalized matrices.
inline void conjugate_in_place(const CMatrix& u, std::span<const std::size_t> targets,
                               std::size_t n_qubits, CMatrix& rho) {
  const std::size_t d = rho.rows();
  complex* p = rho.data().data();
  for (std::size_t c = 0; c < d; ++c) apply_in_place(u, targets, n_qubits, p + c, d);
  // Right multiplication by U^dagger acts on each row as conj(U).
  for (std::size_t r = 0; r < d; ++r) apply_in_place(u, targets, n_qubits, p + r * d, 1, true);
}

}  // namespace detail

inline StateVector apply(const Operator& op, const std::vector<std::size_t>& targets,
                         const StateVector& state) {
  detail::validate_targets(targets, op.n_qubits(), state.n_qubits());
  std::vector<complex> v(state.amplitudes().begin(), state.amplitudes().end());
  detail::apply_in_place(op.matrix(), targets, state.n_qubits(), v.data());
  return {state.n_qubits(), std::move(v), 1e-10};
}

inline DensityMatrix apply(const Operator& op, const std::vector<std::size_t>& targets,
                           const DensityMatrix& rho) {
  detail::validate_targets(targets, op.n_qubits(), rho.n_qubits());
  CMatrix m = rho.matrix();
  detail::conjugate_in_place(op.matrix(), targets, rho.n_qubits(), m);
  return {rho.n_qubits(), std::move(m), rho.kind(), 1e-10};
}

/// Whole-register operator (no embedding).
inline StateVector apply(const Operator& op, const StateVector& state) {
  std::vector<std::size_t> all(op.n_qubits());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = all.size() - 1 - i;
  return apply(op, all, state);
}
inline DensityMatrix apply(const Operator& op, const DensityMatrix& rho) {
  std::vector<std::size_t> all(op.n_qubits());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = all.size() - 1 - i;
  return apply(op, all, rho);
}

// ---------------------------------------------------------------------------
// partial_trace

namespace detail {

struct TraceSplit {
  std::vector<std::size_t> kept_off;
  std::vector<std::size_t> traced_off;
};

// Kept qubits retain their relative significance.
inline TraceSplit split_for_trace(std::size_t n, const std::vector<std::size_t>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial trace needs at least one kept qubit");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= n) throw std::invalid_argument("kept qubit out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (keep[i] == keep[j]) throw std::invalid_argument("duplicate kept qubit");
  }
  std::vector<std::size_t> kept(keep);
  std::sort(kept.begin(), kept.end(), std::greater<>());
  std::vector<std::size_t> traced;
  for (std::size_t q = 0; q < n; ++q)
    if (std::find(kept.begin(), kept.end(), q) == kept.end()) traced.push_back(q);
  return {local_offsets(kept), local_offsets(traced)};
}

}  // namespace detail

inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
  const auto split = detail::split_for_trace(rho.n_qubits(), keep);
  const std::size_t dk = split.kept_off.size();
  CMatrix out(dk, dk);
  for (std::size_t r = 0; r < dk; ++r)
    for (std::size_t c = 0; c < dk; ++c) {
      complex acc = 0.0;
      for (auto t : split.traced_off) acc += rho(split.kept_off[r] | t, split.kept_off[c] | t);
      out(r, c) = acc;
    }
  return {keep.size(), std::move(out), rho.kind(), 1e-10};
}

/// Works on amplitudes directly: rho_rc = sum_t psi(r|t) conj(psi(c|t)).
inline DensityMatrix partial_trace(const StateVector& psi, const std::vector<std::size_t>& keep) {
  const auto split = detail::split_for_trace(psi.n_qubits(), keep);
  const std::size_t dk = split.kept_off.size();
  CMatrix out(dk, dk);
  for (std::size_t r = 0; r < dk; ++r)
    for (std::size_t c = 0; c < dk; ++c) {
      complex acc = 0.0;
      for (auto t : split.traced_off) acc += psi[split.kept_off[r] | t] * std::conj(psi[split.kept_off[c] | t]);
      out(r, c) = acc;
    }
  return {keep.size(), std::move(out), TraceKind::normalized, 1e-10};
}

// ---------------------------------------------------------------------------
// measurement

using Distribution = std::map<std::string, double>;

namespace detail {
inline constexpr double kDropProbability = 1e-15;
}

inline Distribution measure_distribution(const StateVector& psi) {
  if (std::abs(psi.norm_squared() - 1.0) > kOperatorTol) {
    throw std::invalid_argument("measurement requires a normalized state");
  }
  Distribution d;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    const double p = std::norm(psi[i]);
    if (p > detail::kDropProbability) d[to_bitstring(i, psi.n_qubits())] = p;
  }
  return d;
}

inline Distribution measure_distribution(const DensityMatrix& rho) {
  if (rho.is_deviation()) {
    throw std::invalid_argument("measurement statistics are undefined for deviation operators");
  }
  if (std::abs(rho.trace() - 1.0) > kOperatorTol) {
    throw std::invalid_argument("measurement requires unit trace");
  }
  Distribution d;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    const double p = rho(i, i).real();
    if (p > detail::kDropProbability) d[to_bitstring(i, rho.n_qubits())] = p;
  }
  return d;
}

/// Seeded shot sampling from an exact distribution (std::mt19937_64).
inline std::map<std::string, std::size_t> sample(const Distribution& dist, std::size_t shots,
                                                 std::uint64_t seed) {
  std::vector<std::string> keys;
  std::vector<double> weights;
  for (const auto& [k, p] : dist) {
    keys.push_back(k);
    weights.push_back(p);
  }
  std::map<std::string, std::size_t> counts;
  if (keys.empty()) return counts;
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  for (std::size_t s = 0; s < shots; ++s) ++counts[keys[pick(rng)]];
  return counts;
}

// ---------------------------------------------------------------------------
// comparison

/// True iff a = c * b for some unit-modulus c, elementwise within tol.
/// c is taken from the largest-magnitude entry of b.
inline bool equal_up_to_global_phase(std::span<const complex> a, std::span<const complex> b,
                                     double tol = kOperatorTol) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  std::size_t pivot = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (std::abs(b[i]) > best) {
      best = std::abs(b[i]);
      pivot = i;
    }
  }
  complex c = 1.0;
  if (best > 0.0 && std::abs(a[pivot]) > 0.0) {
    c = a[pivot] / b[pivot];
    c /= std::abs(c);
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - c * b[i]) > tol) return false;
  return true;
}

/// Max elementwise deviation min_c |a - c b| with c from the pivot rule above.
inline double phase_aligned_deviation(std::span<const complex> a, std::span<const complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  std::size_t pivot = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (std::abs(b[i]) > best) {
      best = std::abs(b[i]);
      pivot = i;
    }
  complex c = 1.0;
  if (best > 0.0 && std::abs(a[pivot]) > 0.0) {
    c = a[pivot] / b[pivot];
    c /= std::abs(c);
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - c * b[i]));
  return m;
}

inline bool equal_up_to_global_phase(const CMatrix& a, const CMatrix& b,
                                     double tol = kOperatorTol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
  return equal_up_to_global_phase(a.data(), b.data(), tol);
}
inline bool equal_up_to_global_phase(const Operator& a, const Operator& b,
                                     double tol = kOperatorTol) {
  return equal_up_to_global_phase(a.matrix(), b.matrix(), tol);
}
inline bool equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                                     double tol = kOperatorTol) {
  return equal_up_to_global_phase(a.amplitudes(), b.amplitudes(), tol);
}

inline double phase_aligned_deviation(const Operator& a, const Operator& b) {
  return phase_aligned_deviation(a.matrix().data(), b.matrix().data());
}
inline double phase_aligned_deviation(const StateVector& a, const StateVector& b) {
  return phase_aligned_deviation(a.amplitudes(), b.amplitudes());
}

inline double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("size mismatch");
  complex overlap = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) overlap += std::conj(a[i]) * b[i];
  return std::norm(overlap);
}

/// <psi| rho |psi>
inline double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.dim() != psi.dim()) throw std::invalid_argument("size mismatch");
  complex acc = 0.0;
  for (std::size_t r = 0; r < psi.dim(); ++r)
    for (std::size_t c = 0; c < psi.dim(); ++c) acc += std::conj(psi[r]) * rho(r, c) * psi[c];
  return acc.real();
}

}  // namespace mrqdc
