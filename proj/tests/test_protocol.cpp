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

#include <numbers>

#include "mrqdc/protocol.hpp"
#include "oracles.hpp"

using namespace mrqdc;
using namespace mrqdc::protocol;
using namespace std::complex_literals;
using std::numbers::pi;

namespace {

const StateVector& as_state(const Snapshot& s) { return std::get<StateVector>(s); }

// Two-qubit (j, 0) product ket (|0> + e^{i theta}|1>)/sqrt2 (x) |flying>.
StateVector pair_state(double theta, int flying_bit) {
  std::vector<complex> f{flying_bit == 0 ? 1.0 : 0.0, flying_bit == 1 ? 1.0 : 0.0};
  return {2, oracle::kron(oracle::plus_with_phase(theta), f)};
}

}  // namespace

TEST(PhaseFor, examples) {
  EXPECT_EQ(phase_for(0, 2), 0.0);
  EXPECT_DOUBLE_EQ(phase_for(2, 2), -pi);
  EXPECT_DOUBLE_EQ(phase_for(3, 2), -3 * pi / 2);
  EXPECT_THROW(phase_for(4, 2), std::invalid_argument);
}

TEST(Capacity, examples) {
  EXPECT_EQ(capacity(1).messages, 4U);
  EXPECT_EQ(capacity(1).bits, 2U);
  EXPECT_EQ(capacity(2).messages, 8U);
  EXPECT_EQ(capacity(2).bits, 3U);
  EXPECT_EQ(capacity(7).messages, 256U);
  EXPECT_EQ(capacity(7).bits, 8U);
  EXPECT_THROW(capacity(0), std::invalid_argument);
}

TEST(MessageType, validation) {
  EXPECT_THROW(make_message(2, 4, 0), std::invalid_argument);
  EXPECT_THROW(make_message(2, 1, 2), std::invalid_argument);
  EXPECT_THROW(make_message(0, 0, 0), std::invalid_argument);
  EXPECT_EQ(make_message(3, 5, 1).outcome_bits(), "1011");
}

TEST(RoundUnitary, elementary_round_leaves_phase_on_stationary_qubit) {
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::uint64_t k = 0; k < (1U << m); ++k)
      for (std::size_t j = 1; j < m; ++j) {
        const auto out = apply(round_unitary(j, m, k, 0), StateVector::from_bits("00"));
        const double theta = -std::ldexp(1.0, static_cast<int>(m - j)) * phase_for(k, m);
        EXPECT_TRUE(equal_up_to_global_phase(out, pair_state(theta, 0)))
            << "m=" << m << " k=" << k << " j=" << j;
      }
}

TEST(RoundUnitary, last_round_flips_flying_qubit) {
  const auto out = apply(round_unitary(2, 2, 0, 1), StateVector::from_bits("00"));
  EXPECT_TRUE(equal_up_to_global_phase(out, pair_state(0.0, 1)));
}

TEST(RoundUnitary, single_round_k1) {
  const auto out = apply(round_unitary(1, 1, 1, 0), StateVector::from_bits("00"));
  EXPECT_TRUE(equal_up_to_global_phase(out, pair_state(pi, 0)));
}

TEST(RoundUnitary, rejects_bad_round) {
  EXPECT_THROW(round_unitary(0, 2, 0, 0), std::invalid_argument);
  EXPECT_THROW(round_unitary(3, 2, 0, 0), std::invalid_argument);
}

TEST(RoundUnitary, repetition_equals_single_rotation) {
  for (std::size_t m = 1; m <= 8; ++m)
    for (std::uint64_t k : {std::uint64_t{0}, std::uint64_t{1}, (std::uint64_t{1} << m) - 1})
      for (std::size_t j = 1; j <= m; ++j) EXPECT_NO_THROW(bob_rotation(j, m, k));
}

TEST(RoundProduct, matches_product_form) {
  for (std::size_t m = 1; m <= 5; ++m)
    for (std::uint64_t k = 0; k < (1U << m); ++k)
      for (int b : {0, 1}) {
        const RegisterLayout layout(m);
        StateVector psi = StateVector::basis(m + 1, 0);
        for (std::size_t j = 1; j <= m; ++j)
          psi = apply(round_unitary(j, m, k, b), {layout.position(j), 0}, psi);
        std::vector<complex> want{1.0};
        for (std::size_t j = 1; j <= m; ++j)
          want = oracle::kron(want, oracle::plus_with_phase(
                                        -std::ldexp(1.0, static_cast<int>(m - j)) * phase_for(k, m)));
        want = oracle::kron(want, b ? std::vector<complex>{0.0, 1.0} : std::vector<complex>{1.0, 0.0});
        EXPECT_TRUE(equal_up_to_global_phase(psi, StateVector(m + 1, want, 1e-10)))
            << "m=" << m << " k=" << k << " b=" << b;
      }
}

TEST(PreDecodeState, examples) {
  const StateVector want{3, {0.5, 0.0, 0.5i, 0.0, -0.5, 0.0, -0.5i, 0.0}};
  EXPECT_LT(phase_aligned_deviation(pre_decode_state(make_message(2, 1, 0)), want), 1e-15);

  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_LT(phase_aligned_deviation(pre_decode_state(make_message(1, 0, 0)),
                                    StateVector{2, {s, 0.0, s, 0.0}}),
            1e-15);
  EXPECT_LT(phase_aligned_deviation(pre_decode_state(make_message(2, 0, 1)),
                                    StateVector{3, {0.0, 0.5, 0.0, 0.5, 0.0, 0.5, 0.0, 0.5}}),
            1e-15);
}

TEST(RunProtocol, examples) {
  struct Case {
    std::size_t m;
    std::uint64_t k;
    int b;
    const char* bits;
  };
  for (const Case& c : {Case{1, 0, 0, "00"}, Case{2, 3, 0, "110"}, Case{2, 1, 1, "011"},
                        Case{3, 5, 0, "1010"}}) {
    const auto r = run_protocol(make_message(c.m, c.k, c.b));
    EXPECT_EQ(r.decoded, (Decoded{c.k, c.b}));
    EXPECT_NEAR(r.distribution.at(c.bits), 1.0, 1e-10);
    EXPECT_GE(fidelity(as_state(r.final_state), StateVector::from_bits(c.bits)), 1 - 1e-10);
  }
}

TEST(RunProtocol, m3_k5_matches_matrix_oracle) {
  // Closed-form phases decoded with the textbook circuit, independent of the engine.
  const std::size_t m = 3;
  std::vector<complex> reg(8);
  for (std::size_t n = 0; n < 8; ++n) reg[n] = std::exp(2i * pi * (n * 5.0) / 8.0) / std::sqrt(8.0);
  const auto decoded = oracle::matvec(oracle::qft_circuit(m).adjoint(), reg);
  EXPECT_NEAR(std::norm(decoded[0b101]), 1.0, 1e-12);
  const auto r = run_protocol(make_message(3, 5, 0));
  EXPECT_NEAR(std::norm(as_state(r.final_state)[0b1010]), 1.0, 1e-10);
}

TEST(RunProtocol, engine_agrees_with_closed_form) {
  for (std::size_t m = 1; m <= 6; ++m)
    for (std::uint64_t k = 0; k < (1U << m); ++k)
      for (int b : {0, 1}) {
        const auto msg = make_message(m, k, b);
        const auto r = run_protocol(msg, {}, {.flying_states = false});
        EXPECT_LT(phase_aligned_deviation(as_state(r.pre_decode), pre_decode_state(msg)), 1e-10);
      }
}

TEST(RunProtocol, single_round_reduces_to_usual_dense_coding) {
  // Bob's four manipulations are I, -i sigma_z, sigma_x and sigma_y up to phase.
  const std::vector<CMatrix> manipulations{oracle::id(2), oracle::z2() * complex(-1i), oracle::x2(),
                                           oracle::y2()};
  const char* outputs[] = {"00", "10", "01", "11"};
  int idx = 0;
  for (int b : {0, 1})
    for (std::uint64_t k : {0U, 1U}) {
      EXPECT_TRUE(equal_up_to_global_phase(bob_operation(1, 1, k, b).matrix(),
                                           manipulations[static_cast<std::size_t>(idx)]));
      const auto r = run_protocol(make_message(1, k, b));
      EXPECT_NEAR(r.distribution.at(outputs[idx]), 1.0, 1e-12);
      ++idx;
    }
}

TEST(Transcript, grammar_and_flying_states) {
  const auto r = run_protocol(make_message(2, 3, 1));
  EXPECT_NO_THROW(validate_grammar(r.transcript));
  EXPECT_EQ(r.transcript.events.size(), 1U + 6U * 2U + 2U);

  const auto half = DensityMatrix::maximally_mixed(1).matrix();
  EXPECT_LT(max_abs_diff(flying_qubit_state(r.transcript, 1, Transit::bob_to_alice).matrix(), half),
            1e-12);
  const auto r0 = run_protocol(make_message(2, 0, 0));
  EXPECT_LT(max_abs_diff(flying_qubit_state(r0.transcript, 2, Transit::alice_to_bob).matrix(), half),
            1e-12);
  EXPECT_EQ(flying_qubit_state(r0.transcript, 0, std::nullopt).matrix(),
            StateVector::from_bits("0").to_density().matrix());
}

TEST(Transcript, missing_snapshot_is_an_error) {
  const auto r = run_protocol(make_message(2, 1, 0), {}, {.flying_states = false});
  EXPECT_THROW(flying_qubit_state(r.transcript, 1, Transit::alice_to_bob), std::out_of_range);
  EXPECT_THROW(flying_qubit_state(r.transcript, 3, Transit::alice_to_bob), std::invalid_argument);
}

TEST(Transcript, grammar_rejects_tampering) {
  auto t = run_protocol(make_message(2, 1, 0)).transcript;
  std::swap(t.events[2], t.events[3]);
  EXPECT_THROW(validate_grammar(t), std::invalid_argument);
  auto u = run_protocol(make_message(2, 1, 1)).transcript;
  u.events.pop_back();
  EXPECT_THROW(validate_grammar(u), std::invalid_argument);
}

TEST(SecurityInvariant, flying_qubit_is_maximally_mixed_in_transit) {
  const auto half = DensityMatrix::maximally_mixed(1).matrix();
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::uint64_t k = 0; k < (1U << m); ++k)
      for (int b : {0, 1}) {
        const auto r = run_protocol(make_message(m, k, b));
        for (std::size_t j = 1; j <= m; ++j)
          for (auto dir : {Transit::alice_to_bob, Transit::bob_to_alice})
            EXPECT_LT(max_abs_diff(flying_qubit_state(r.transcript, j, dir).matrix(), half), 1e-12);
      }
}

TEST(ApplyChannel, examples) {
  const double s = 1.0 / std::sqrt(2.0);
  const auto plus = StateVector{1, {s, s}}.to_density();
  EXPECT_EQ(apply_channel({ChannelKind::dephasing, 0.0}, plus).matrix(), plus.matrix());
  EXPECT_EQ(apply_channel({ChannelKind::depolarizing, 0.0}, plus).matrix(), plus.matrix());
  const auto half = DensityMatrix::maximally_mixed(1).matrix();
  EXPECT_LT(max_abs_diff(apply_channel({ChannelKind::depolarizing, 1.0}, plus).matrix(), half),
            1e-15);
  EXPECT_LT(
      max_abs_diff(apply_channel({ChannelKind::depolarizing, 1.0}, StateVector::from_bits("1").to_density())
                       .matrix(),
                   half),
      1e-15);
  EXPECT_LT(max_abs_diff(apply_channel({ChannelKind::dephasing, 0.5}, plus).matrix(), half), 1e-15);
  EXPECT_THROW(apply_channel({ChannelKind::dephasing, 1.5}, plus), std::invalid_argument);
}

TEST(Noise, zero_strength_matches_noiseless_run) {
  const auto clean = run_protocol(make_message(3, 6, 1));
  const auto noisy = run_protocol(make_message(3, 6, 1), {ChannelKind::dephasing, 0.0});
  EXPECT_EQ(noisy.decoded, clean.decoded);
  EXPECT_NEAR(noisy.success_probability, 1.0, 1e-10);
  EXPECT_NO_THROW(validate_grammar(noisy.transcript));
}

TEST(Noise, full_depolarizing_gives_uniform_outcomes) {
  for (std::size_t m = 1; m <= 4; ++m) {
    const auto r = run_protocol(make_message(m, (1U << m) - 1, 1), {ChannelKind::depolarizing, 1.0});
    const double uniform = std::ldexp(1.0, -static_cast<int>(m + 1));
    ASSERT_EQ(r.distribution.size(), std::size_t{1} << (m + 1));
    for (const auto& [bits, p] : r.distribution) EXPECT_NEAR(p, uniform, 1e-12) << bits;
  }
}

TEST(Noise, success_is_non_increasing_in_depolarizing_strength) {
  for (std::size_t m = 1; m <= 3; ++m) {
    double prev = 2.0;
    for (int step = 0; step <= 10; ++step) {
      const double p = step / 10.0;
      const double s = run_protocol(make_message(m, 1, 1), {ChannelKind::depolarizing, p})
                           .success_probability;
      EXPECT_LE(s, prev + 1e-12) << "m=" << m << " p=" << p;
      prev = s;
    }
  }
}

TEST(Noise, dephasing_keeps_bit_value) {
  // Z errors on the flying qubit never flip its computational value.
  const auto r = run_protocol(make_message(2, 2, 1), {ChannelKind::dephasing, 0.3});
  double b_one = 0.0;
  for (const auto& [bits, p] : r.distribution)
    if (bits.back() == '1') b_one += p;
  EXPECT_NEAR(b_one, 1.0, 1e-12);
  EXPECT_LT(r.success_probability, 1.0);
}
