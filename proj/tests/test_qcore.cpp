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

#include <gtest/gtest.h>

#include <random>

#include "mrqdc/gates.hpp"
#include "mrqdc/qcore.hpp"
#include "oracles.hpp"

using namespace mrqdc;
using namespace std::complex_literals;

namespace {

StateVector random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<complex> a(std::size_t{1} << n);
  double norm = 0;
  for (auto& z : a) {
    z = {g(rng), g(rng)};
    norm += std::norm(z);
  }
  for (auto& z : a) z /= std::sqrt(norm);
  return {n, std::move(a)};
}

Operator random_unitary(std::size_t n, std::mt19937_64& rng) {
  // exp(iK) for a random Hermitian K
  std::normal_distribution<double> g;
  const std::size_t d = std::size_t{1} << n;
  CMatrix k(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = r; c < d; ++c) {
      k(r, c) = r == c ? complex(g(rng)) : complex(g(rng), g(rng));
      k(c, r) = std::conj(k(r, c));
    }
  return {n, oracle::expm(k * complex(0.0, 1.0)), true};
}

}  // namespace

TEST(TensorProduct, basis_states) {
  const auto s = tensor_product(StateVector::from_bits("0"), StateVector::from_bits("0"));
  ASSERT_EQ(s.n_qubits(), 2U);
  EXPECT_EQ(s[0], complex(1.0));
  EXPECT_EQ(s[1], complex(0.0));
  EXPECT_EQ(s[2], complex(0.0));
  EXPECT_EQ(s[3], complex(0.0));
}

TEST(TensorProduct, identity_factor_gives_block_diagonal) {
  const auto op = tensor_product(gates::identity(), gates::pauli_x());
  const CMatrix expected{{0.0, 1.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0},
                         {0.0, 0.0, 1.0, 0.0}};
  EXPECT_EQ(op.matrix(), expected);
}

TEST(TensorProduct, iz_iz_is_diagonal_quarter) {
  const Operator iz{1, oracle::z2() * complex(0.5)};
  const auto op = tensor_product(iz, iz);
  const std::vector<complex> d{0.25, -0.25, -0.25, 0.25};
  EXPECT_EQ(op.matrix(), CMatrix::diagonal(d));
}

TEST(TensorProduct, associative_exactly) {
  const auto a = gates::hadamard();
  const auto b = gates::rz(0.3);
  const auto c = gates::pauli_y();
  EXPECT_EQ(tensor_product(tensor_product(a, b), c).matrix(),
            tensor_product(a, tensor_product(b, c)).matrix());
}

// Arguments of different kinds have no overload.
template <class A, class B>
concept Tensorable = requires(A a, B b) { tensor_product(a, b); };
static_assert(Tensorable<Operator, Operator>);
static_assert(Tensorable<StateVector, StateVector>);
static_assert(!Tensorable<Operator, StateVector>);
static_assert(!Tensorable<StateVector, DensityMatrix>);

TEST(Apply, hadamard_on_msb) {
  const auto out = apply(gates::hadamard(), {1}, StateVector::from_bits("00"));
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(out[0b00] - s), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[0b10] - s), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[0b01]), 0.0, 1e-15);
}

TEST(Apply, cnot_makes_bell_pair) {
  const auto plus = apply(gates::hadamard(), {1}, StateVector::from_bits("00"));
  const auto bell = apply(gates::cnot(), {1, 0}, plus);
  const double s = 1.0 / std::sqrt(2.0);
  const StateVector expected{2, {s, 0.0, 0.0, s}};
  EXPECT_TRUE(equal_up_to_global_phase(bell, expected, 1e-15));
  EXPECT_NEAR(std::abs(bell[0] - s), 0.0, 1e-15);
}

TEST(Apply, maximally_mixed_is_invariant) {
  const auto out = apply(gates::pauli_x(), {0}, DensityMatrix::maximally_mixed(1));
  EXPECT_LT(max_abs_diff(out.matrix(), DensityMatrix::maximally_mixed(1).matrix()), 1e-15);
}

TEST(Apply, errors) {
  const auto psi = StateVector::from_bits("000");
  EXPECT_THROW(apply(gates::cnot(), {1}, psi), std::invalid_argument);
  EXPECT_THROW(apply(gates::cnot(), {1, 1}, psi), std::invalid_argument);
  EXPECT_THROW(apply(gates::hadamard(), {3}, psi), std::invalid_argument);
}

TEST(Apply, matches_brute_force_embedding) {
  std::mt19937_64 rng(7);
  const std::vector<std::vector<std::size_t>> layouts{{0}, {3}, {2, 0}, {0, 2}, {3, 1, 2}};
  for (const auto& targets : layouts) {
    const auto u = random_unitary(targets.size(), rng);
    const auto psi = random_state(4, rng);
    const auto got = apply(u, targets, psi);
    const auto full = oracle::embed(u.matrix(), targets, 4);
    const auto want = oracle::matvec(full, {psi.amplitudes().begin(), psi.amplitudes().end()});
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(std::abs(got[i] - want[i]), 0, 1e-12);

    const auto rho = psi.to_density();
    const auto rho_out = apply(u, targets, rho);
    const auto rho_want = full * rho.matrix() * full.adjoint();
    EXPECT_LT(max_abs_diff(rho_out.matrix(), rho_want), 1e-12);
  }
}

TEST(Apply, preserves_norm_trace_and_hermiticity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = random_unitary(2, rng);
    const auto psi = random_state(5, rng);
    const std::vector<std::size_t> t{static_cast<std::size_t>(trial % 5),
                                     static_cast<std::size_t>((trial + 2) % 5)};
    EXPECT_NEAR(apply(u, t, psi).norm_squared(), 1.0, 1e-12);
    const auto rho = apply(u, t, psi.to_density());
    EXPECT_NEAR(std::abs(rho.trace() - 1.0), 0.0, 1e-12);
    EXPECT_LT(hermiticity_error(rho.matrix()), 1e-12);
  }
}

TEST(PartialTrace, bell_state_gives_maximally_mixed) {
  const double s = 1.0 / std::sqrt(2.0);
  const StateVector bell{2, {s, 0.0, 0.0, s}};
  const auto r = partial_trace(bell, {0});
  EXPECT_LT(max_abs_diff(r.matrix(), DensityMatrix::maximally_mixed(1).matrix()), 1e-15);
}

TEST(PartialTrace, product_state_factorizes) {
  const auto rho = tensor_product(StateVector::from_bits("0").to_density(),
                                  StateVector::from_bits("1").to_density());
  const auto r = partial_trace(rho, {1});
  EXPECT_EQ(r.matrix(), StateVector::from_bits("0").to_density().matrix());
  EXPECT_EQ(partial_trace(rho, {0}).matrix(), StateVector::from_bits("1").to_density().matrix());
}

TEST(PartialTrace, three_qubit_keep_two) {
  const auto r = partial_trace(StateVector::from_bits("000"), {1, 2});
  EXPECT_EQ(r.matrix(), StateVector::from_bits("00").to_density().matrix());
}

TEST(PartialTrace, keeps_relative_order_and_trace) {
  std::mt19937_64 rng(3);
  const auto a = random_state(1, rng);
  const auto b = random_state(1, rng);
  const auto c = random_state(1, rng);
  const auto abc = tensor_product(tensor_product(a, b), c);  // a at bit 2, c at bit 0
  const auto ac = partial_trace(abc, {0, 2});
  EXPECT_LT(max_abs_diff(ac.matrix(), tensor_product(a, c).to_density().matrix()), 1e-12);

  const auto rho = random_state(4, rng).to_density();
  for (const std::vector<std::size_t>& keep :
       {std::vector<std::size_t>{0}, {1, 3}, {0, 1, 2}, {2}}) {
    EXPECT_NEAR(std::abs(partial_trace(rho, keep).trace() - rho.trace()), 0.0, 1e-12);
  }
}

TEST(PartialTrace, errors) {
  const auto rho = StateVector::from_bits("00").to_density();
  EXPECT_THROW(partial_trace(rho, {}), std::invalid_argument);
  EXPECT_THROW(partial_trace(rho, {2}), std::invalid_argument);
  EXPECT_THROW(partial_trace(rho, {0, 0}), std::invalid_argument);
}

TEST(MeasureDistribution, basis_state) {
  const auto d = measure_distribution(StateVector::from_bits("110"));
  ASSERT_EQ(d.size(), 1U);
  EXPECT_DOUBLE_EQ(d.at("110"), 1.0);
}

TEST(MeasureDistribution, bell_statistics) {
  const double s = 1.0 / std::sqrt(2.0);
  const auto d = measure_distribution(StateVector{2, {s, 0.0, 0.0, s}});
  ASSERT_EQ(d.size(), 2U);
  EXPECT_NEAR(d.at("00"), 0.5, 1e-15);
  EXPECT_NEAR(d.at("11"), 0.5, 1e-15);
}

TEST(MeasureDistribution, phase_register_before_decoding) {
  // (1, i, -1, -i)/2 on qubits 1,2 with the flying qubit in |0>
  const StateVector psi{3, {0.5, 0.0, 0.5i, 0.0, -0.5, 0.0, -0.5i, 0.0}};
  const auto d = measure_distribution(psi);
  ASSERT_EQ(d.size(), 4U);
  for (const char* bits : {"000", "010", "100", "110"}) EXPECT_NEAR(d.at(bits), 0.25, 1e-15);
}

TEST(MeasureDistribution, rejects_deviation_operators) {
  const DensityMatrix dev{1, oracle::z2() * complex(0.5), TraceKind::deviation};
  EXPECT_THROW(measure_distribution(dev), std::invalid_argument);
}

TEST(MeasureDistribution, sums_to_one_and_sampling_is_seeded) {
  std::mt19937_64 rng(5);
  const auto psi = random_state(5, rng);
  const auto d = measure_distribution(psi);
  double total = 0;
  for (const auto& [k, p] : d) total += p;
  EXPECT_NEAR(total, 1.0, 1e-10);
  const auto a = sample(d, 1000, 42);
  const auto b = sample(d, 1000, 42);
  EXPECT_EQ(a, b);
  std::size_t shots = 0;
  for (const auto& [k, n] : a) shots += n;
  EXPECT_EQ(shots, 1000U);
}

TEST(StateTypes, invariants_are_enforced) {
  EXPECT_THROW(StateVector(2, {1.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(StateVector(1, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(DensityMatrix(1, CMatrix{{0.5, 1.0}, {0.0, 0.5}}), std::invalid_argument);
  EXPECT_THROW(DensityMatrix(1, CMatrix{{1.0, 0.0}, {0.0, 1.0}}), std::invalid_argument);
  EXPECT_NO_THROW(DensityMatrix(1, CMatrix{{1.0, 0.0}, {0.0, -1.0}}, TraceKind::deviation));
  EXPECT_THROW(Operator(1, CMatrix{{1.0, 1.0}, {0.0, 1.0}}, true), std::invalid_argument);
}

TEST(GlobalPhase, examples) {
  EXPECT_TRUE(equal_up_to_global_phase(gates::hadamard(), 1i * gates::hadamard()));
  EXPECT_FALSE(equal_up_to_global_phase(gates::pauli_x(), gates::pauli_y()));

  // CNOT . (I (x) Rz(-pi)) . CNOT = diag(-i, i, i, -i)
  const auto lhs = gates::cnot() * tensor_product(gates::identity(), gates::rz(-std::numbers::pi)) *
                   gates::cnot();
  const std::vector<complex> d{-1i, 1i, 1i, -1i};
  EXPECT_TRUE(equal_up_to_global_phase(lhs, Operator{2, CMatrix::diagonal(d)}));
  // hand multiplication gives the diagonal with no extra phase
  EXPECT_LT(max_abs_diff(lhs.matrix(), CMatrix::diagonal(d)), 1e-15);
}

TEST(GlobalPhase, equivalence_relation_at_zero_tolerance) {
  const std::vector<Operator> ops{gates::hadamard(), 1i * gates::hadamard(), -1.0 * gates::hadamard(),
                                  gates::pauli_x(), -1i * gates::pauli_x(), gates::pauli_z()};
  for (const auto& a : ops) {
    EXPECT_TRUE(equal_up_to_global_phase(a, a, 0.0));
    for (const auto& b : ops) {
      const bool ab = equal_up_to_global_phase(a, b, 0.0);
      EXPECT_EQ(ab, equal_up_to_global_phase(b, a, 0.0));
      for (const auto& c : ops) {
        if (ab && equal_up_to_global_phase(b, c, 0.0)) {
          EXPECT_TRUE(equal_up_to_global_phase(a, c, 0.0));
        }
      }
    }
  }
}
