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

// Multiple-round dense coding between Alice (holding m stationary qubits) and
// Bob, who only ever touches the flying qubit 0.
//
// Round j (1 <= j <= m):
//   Alice  H_j
//   Alice  CNOT_j0                  (control j, target 0)
//   Channel transit A->B
//   Bob    Rz(phi_k) repeated 2^(m-j) times; round m also applies O_b
//   Channel transit B->A
//   Alice  CNOT_j0
// followed by the inverse QFT on qubits 1..m and a joint measurement.
// phi_k = -2 pi k / 2^m and O_b is I (b = 0) or sigma_x (b = 1).

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mrqdc/gates.hpp"
#include "mrqdc/layout.hpp"
#include "mrqdc/qcore.hpp"

namespace mrqdc::protocol {

inline constexpr std::size_t kMaxRounds = 12;

struct Message {
  std::size_t m = 1;
  std::uint64_t k = 0;
  int b = 0;

  void validate() const {
    if (m < 1 || m > kMaxRounds) {
      throw std::invalid_argument("round count m must be in [1, " +
                                  std::to_string(kMaxRounds) + "]");
    }
    if (k >= (std::uint64_t{1} << m)) {
      throw std::invalid_argument("k out of range: need 0 <= k < 2^m");
    }
    if (b != 0 && b != 1) throw std::invalid_argument("b must be 0 or 1");
  }

  /// Expected measurement outcome: bits of k (qubit 1 first) followed by b.
  std::string outcome_bits() const { return to_bitstring(k, m) + (b ? "1" : "0"); }
};

inline Message make_message(std::size_t m, std::uint64_t k, int b) {
  Message msg{m, k, b};
  msg.validate();
  return msg;
}

struct Capacity {
  std::uint64_t messages;
  std::size_t bits;
};

inline Capacity capacity(std::size_t m) {
  if (m < 1) throw std::invalid_argument("capacity needs m >= 1");
  if (m > 62) throw std::invalid_argument("capacity overflows 64-bit message count");
  return {std::uint64_t{1} << (m + 1), m + 1};
}

inline double phase_for(std::uint64_t k, std::size_t m) {
  if (m < 1 || m > 62 || k >= (std::uint64_t{1} << m)) {
    throw std::invalid_argument("k out of range: need 0 <= k < 2^m");
  }
  return -2.0 * std::numbers::pi * static_cast<double>(k) /
         static_cast<double>(std::uint64_t{1} << m);
}

// ---------------------------------------------------------------------------
// noise

enum class ChannelKind { none, dephasing, depolarizing };

inline std::string to_string(ChannelKind k) {
  switch (k) {
    case ChannelKind::none: return "none";
    case ChannelKind::dephasing: return "dephasing";
    case ChannelKind::depolarizing: return "depolarizing";
  }
  return "?";
}

inline ChannelKind channel_from_string(const std::string& s) {
  if (s == "none") return ChannelKind::none;
  if (s == "dephasing") return ChannelKind::dephasing;
  if (s == "depolarizing") return ChannelKind::depolarizing;
  throw std::invalid_argument("unknown noise kind '" + s + "'");
}

/// Noise on the flying qubit, applied at every transit.
struct NoiseSpec {
  ChannelKind kind = ChannelKind::none;
  double p = 0.0;

  void validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noise probability must be in [0,1]");
  }
  bool is_noiseless() const { return kind == ChannelKind::none; }
};

namespace detail {

// rho <- channel(rho) on the qubit at bit position `pos`.
inline void apply_channel_on(const NoiseSpec& noise, std::size_t n_qubits, std::size_t pos,
                             CMatrix& rho) {
  noise.validate();
  if (noise.kind == ChannelKind::none || noise.p == 0.0) return;
  const std::vector<std::size_t> t{pos};
  const double p = noise.p;
  if (noise.kind == ChannelKind::dephasing) {
    CMatrix z = rho;
    mrqdc::detail::conjugate_in_place(gates::pauli_z().matrix(), t, n_qubits, z);
    rho = complex(1.0 - p) * rho + complex(p) * z;
    return;
  }
  // (rho + X rho X + Y rho Y + Z rho Z) / 4 = Tr_q(rho) (x) I/2
  CMatrix twirl = rho;
  for (const auto& pauli : {gates::pauli_x(), gates::pauli_y(), gates::pauli_z()}) {
    CMatrix c = rho;
    mrqdc::detail::conjugate_in_place(pauli.matrix(), t, n_qubits, c);
    twirl += c;
  }
  rho = complex(1.0 - p) * rho + complex(p / 4.0) * twirl;
}

}  // namespace detail

/// Single-qubit channel: dephasing (1-p) rho + p Z rho Z, depolarizing (1-p) rho + p I/2.
inline DensityMatrix apply_channel(const NoiseSpec& noise, const DensityMatrix& rho) {
  if (rho.n_qubits() != 1) throw std::invalid_argument("apply_channel expects a one-qubit state");
  CMatrix m = rho.matrix();
  detail::apply_channel_on(noise, 1, 0, m);
  return {1, std::move(m), rho.kind(), 1e-10};
}

// ---------------------------------------------------------------------------
// round operations

/// Bob's phase for round j: Rz(phi_k) composed 2^(m-j) times. The repeated
/// product is checked against the single rotation Rz(2^(m-j) phi_k).
inline Operator bob_rotation(std::size_t j, std::size_t m, std::uint64_t k) {
  if (j < 1 || j > m) throw std::invalid_argument("round index j out of range");
  const double phi = phase_for(k, m);
  const std::uint64_t reps = std::uint64_t{1} << (m - j);
  const Operator step = gates::rz(phi);
  Operator repeated = Operator::identity(1);
  for (std::uint64_t r = 0; r < reps; ++r) repeated = step * repeated;
  const Operator single = gates::rz(static_cast<double>(reps) * phi);
  if (max_abs_diff(repeated.matrix(), single.matrix()) > kOperatorTol) {
    throw std::logic_error("repeated Rz disagrees with the single rotation");
  }
  return single;
}

inline Operator bob_operation(std::size_t j, std::size_t m, std::uint64_t k, int b) {
  Operator op = bob_rotation(j, m, k);
  if (j == m && b == 1) op = gates::pauli_x() * op;
  return op;
}

/// T_j on the local pair (qubit j, qubit 0): CNOT . (I (x) Bob) . CNOT . (H (x) I).
inline Operator round_unitary(std::size_t j, std::size_t m, std::uint64_t k, int b) {
  Message{m, k, b}.validate();
  if (j < 1 || j > m) throw std::invalid_argument("round index j out of range");
  const Operator h = tensor_product(gates::hadamard(), gates::identity());
  const Operator bob = tensor_product(gates::identity(), bob_operation(j, m, k, b));
  const Operator cx = gates::cnot();
  return cx * bob * cx * h;
}

/// Closed-form state before decoding: 2^{-m/2} sum_n e^{2 pi i n k / 2^m} |n> (x) O_b|0>.
inline StateVector pre_decode_state(const Message& msg) {
  msg.validate();
  const std::size_t d = std::size_t{1} << msg.m;
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<complex> amps(2 * d);
  for (std::size_t n = 0; n < d; ++n) {
    const auto nk = static_cast<double>((n * msg.k) % d);
    amps[2 * n + static_cast<std::size_t>(msg.b)] =
        norm * std::exp(complex(0.0, 2.0 * std::numbers::pi * nk / static_cast<double>(d)));
  }
  return {msg.m + 1, std::move(amps), 1e-10};
}

/// |k> O_b |0>
inline StateVector expected_output(const Message& msg) {
  msg.validate();
  return StateVector::basis(msg.m + 1, 2 * msg.k + static_cast<std::uint64_t>(msg.b));
}

// ---------------------------------------------------------------------------
// transcript

enum class Actor { alice, bob, channel };
enum class Transit { alice_to_bob, bob_to_alice };

inline std::string to_string(Actor a) {
  switch (a) {
    case Actor::alice: return "Alice";
    case Actor::bob: return "Bob";
    case Actor::channel: return "Channel";
  }
  return "?";
}

inline Actor actor_from_string(const std::string& s) {
  if (s == "Alice") return Actor::alice;
  if (s == "Bob") return Actor::bob;
  if (s == "Channel") return Actor::channel;
  throw std::invalid_argument("unknown actor '" + s + "'");
}

using Snapshot = std::variant<StateVector, DensityMatrix>;

struct Event {
  std::size_t round = 0;  // 0 marks events outside the round loop (init, decode)
  Actor actor = Actor::alice;
  std::string op;
  std::optional<DensityMatrix> flying_state;
  std::optional<Snapshot> snapshot;
};

struct Decoded {
  std::uint64_t k = 0;
  int b = 0;
  friend bool operator==(const Decoded&, const Decoded&) = default;
};

struct Transcript {
  std::size_t m = 1;
  std::uint64_t k = 0;
  int b = 0;
  NoiseSpec noise;
  std::vector<Event> events;
  Decoded decoded;
  Distribution distribution;
};

struct RecordFlags {
  bool flying_states = true;
  bool snapshots = false;
};

namespace labels {
inline std::string hadamard(std::size_t j) { return "H_" + std::to_string(j); }
inline std::string cnot(std::size_t j) { return "CNOT_" + std::to_string(j) + "0"; }
inline std::string transit(Transit t) {
  return t == Transit::alice_to_bob ? "transit:A->B" : "transit:B->A";
}
inline std::string bob(std::size_t j, std::size_t m, int b) {
  std::string s = "Rz(phi_k)^" + std::to_string(std::uint64_t{1} << (m - j));
  if (j == m) s = std::string(b ? "X" : "I") + "*" + s;
  return s;
}
inline constexpr const char* kInit = "init";
inline constexpr const char* kInverseQft = "InvQFT";
inline constexpr const char* kMeasure = "measure";
}  // namespace labels

/// Checks the fixed per-round event grammar; throws std::invalid_argument on violation.
inline void validate_grammar(const Transcript& t) {
  std::size_t idx = 0;
  const auto& ev = t.events;
  auto expect = [&](std::size_t round, Actor actor, const std::string& op) {
    if (idx >= ev.size()) throw std::invalid_argument("transcript ends early, expected " + op);
    const Event& e = ev[idx];
    if (e.round != round || e.actor != actor || e.op != op) {
      throw std::invalid_argument("transcript event " + std::to_string(idx) + " is '" + e.op +
                                  "' in round " + std::to_string(e.round) + ", expected '" + op +
                                  "' in round " + std::to_string(round));
    }
    ++idx;
  };
  expect(0, Actor::alice, labels::kInit);
  for (std::size_t j = 1; j <= t.m; ++j) {
    expect(j, Actor::alice, labels::hadamard(j));
    expect(j, Actor::alice, labels::cnot(j));
    expect(j, Actor::channel, labels::transit(Transit::alice_to_bob));
    expect(j, Actor::bob, labels::bob(j, t.m, t.b));
    expect(j, Actor::channel, labels::transit(Transit::bob_to_alice));
    expect(j, Actor::alice, labels::cnot(j));
  }
  expect(0, Actor::alice, labels::kInverseQft);
  expect(0, Actor::alice, labels::kMeasure);
  if (idx != ev.size()) throw std::invalid_argument("trailing events after measurement");
}

/// Reduced state of the flying qubit at a transit of round j; round 0 with no
/// transit gives the qubit at rest before the first round.
inline DensityMatrix flying_qubit_state(const Transcript& t, std::size_t round,
                                        std::optional<Transit> transit) {
  std::string want;
  if (round == 0) {
    if (transit) throw std::invalid_argument("no transit happens outside the rounds");
    want = labels::kInit;
  } else {
    if (round > t.m) throw std::invalid_argument("round index out of range");
    if (!transit) throw std::invalid_argument("a transit direction is required for round >= 1");
    want = labels::transit(*transit);
  }
  for (const auto& e : t.events) {
    if (e.round == round && e.op == want) {
      if (!e.flying_state) throw std::out_of_range("flying-qubit snapshot not recorded");
      return *e.flying_state;
    }
  }
  throw std::out_of_range("flying-qubit snapshot not recorded");
}

struct RunResult {
  Decoded decoded;
  Distribution distribution;
  double success_probability = 0.0;
  Transcript transcript;
  Snapshot pre_decode;
  Snapshot final_state;
};

namespace detail {

inline DensityMatrix reduced_flying(const StateVector& psi) {
  return partial_trace(psi, {0});
}
inline DensityMatrix reduced_flying(const DensityMatrix& rho) { return partial_trace(rho, {0}); }

template <class State>
class Engine {
 public:
  Engine(const Message& msg, const NoiseSpec& noise, const RecordFlags& flags, State initial)
      : msg_(msg), noise_(noise), flags_(flags), layout_(msg.m), state_(std::move(initial)) {}

  RunResult run() {
    record(0, Actor::alice, labels::kInit);
    const std::size_t flying = RegisterLayout::flying();
    for (std::size_t j = 1; j <= msg_.m; ++j) {
      const std::size_t qj = layout_.position(j);
      state_ = mrqdc::apply(gates::hadamard(), {qj}, state_);
      record(j, Actor::alice, labels::hadamard(j));
      state_ = gates::apply(gates::cnot(qj, flying), state_);
      record(j, Actor::alice, labels::cnot(j));
      transit(j, Transit::alice_to_bob);
      state_ = mrqdc::apply(bob_operation(j, msg_.m, msg_.k, msg_.b), {flying}, state_);
      record(j, Actor::bob, labels::bob(j, msg_.m, msg_.b));
      transit(j, Transit::bob_to_alice);
      state_ = gates::apply(gates::cnot(qj, flying), state_);
      record(j, Actor::alice, labels::cnot(j));
    }
    RunResult result{.decoded = {}, .distribution = {}, .success_probability = 0.0, .transcript = {},
                     .pre_decode = state_, .final_state = state_};
    state_ = mrqdc::apply(gates::inverse_qft(msg_.m), layout_.stationary(), state_);
    record(0, Actor::alice, labels::kInverseQft);
    result.final_state = state_;

    result.distribution = measure_distribution(state_);
    std::string best;
    double best_p = -1.0;
    for (const auto& [bits, p] : result.distribution) {
      if (p > best_p) {
        best_p = p;
        best = bits;
      }
    }
    const std::uint64_t word = from_bitstring(best);
    result.decoded = {word >> 1, static_cast<int>(word & 1U)};
    const auto hit = result.distribution.find(msg_.outcome_bits());
    result.success_probability = hit == result.distribution.end() ? 0.0 : hit->second;
    record(0, Actor::alice, labels::kMeasure);

    transcript_.m = msg_.m;
    transcript_.k = msg_.k;
    transcript_.b = msg_.b;
    transcript_.noise = noise_;
    transcript_.decoded = result.decoded;
    transcript_.distribution = result.distribution;
    result.transcript = std::move(transcript_);
    return result;
  }

 private:
  void transit(std::size_t j, Transit dir) {
    if constexpr (std::is_same_v<State, DensityMatrix>) {
      CMatrix m = state_.matrix();
      apply_channel_on(noise_, state_.n_qubits(), RegisterLayout::flying(), m);
      state_ = DensityMatrix(state_.n_qubits(), std::move(m), TraceKind::normalized, 1e-9);
    }
    record(j, Actor::channel, labels::transit(dir), true);
  }

  void record(std::size_t round, Actor actor, std::string op, bool in_transit = false) {
    Event e{round, actor, std::move(op), std::nullopt, std::nullopt};
    const bool at_rest = round == 0 && e.op == labels::kInit;
    if (flags_.flying_states && (in_transit || at_rest)) e.flying_state = reduced_flying(state_);
    if (flags_.snapshots) e.snapshot = state_;
    transcript_.events.push_back(std::move(e));
  }

  Message msg_;
  NoiseSpec noise_;
  RecordFlags flags_;
  RegisterLayout layout_;
  State state_;
  Transcript transcript_;
};

}  // namespace detail

/// Runs the protocol. Noiseless runs use a state vector; noisy runs evolve a
/// density matrix with the channel applied at both transits of every round.
inline RunResult run_protocol(const Message& msg, const NoiseSpec& noise = {},
                              const RecordFlags& flags = {}) {
  msg.validate();
  noise.validate();
  const std::size_t n = msg.m + 1;
  if (noise.is_noiseless()) {
    return detail::Engine<StateVector>(msg, noise, flags, StateVector::basis(n, 0)).run();
  }
  return detail::Engine<DensityMatrix>(msg, noise, flags, StateVector::basis(n, 0).to_density())
      .run();
}

}  // namespace mrqdc::protocol
