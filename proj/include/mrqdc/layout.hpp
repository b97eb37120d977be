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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mrqdc {

/// Maps protocol qubit labels onto bit positions of an (m+1)-qubit register.
///
/// The ket is written |x_1 x_2 ... x_m x_0>: stationary qubit 1 is the most
/// significant bit, stationary qubit m the least significant of the stationary
/// block, and the flying qubit 0 is appended as bit 0. The three-spin NMR
/// register is the m = 2 case with C1 = 1, C2 = 2, H0 = 0.
class RegisterLayout {
 public:
  explicit RegisterLayout(std::size_t m) : m_(m) {
    if (m_ == 0) throw std::invalid_argument("register needs at least one stationary qubit");
  }

  std::size_t m() const { return m_; }
  std::size_t n_qubits() const { return m_ + 1; }

  std::size_t position(std::size_t label) const {
    if (label > m_) throw std::invalid_argument("qubit label out of range");
    return label == 0 ? 0 : m_ + 1 - label;
  }

  static constexpr std::size_t flying() { return 0; }

  /// Positions of qubits 1..m, qubit 1 first (the register's MSB-first order).
  std::vector<std::size_t> stationary() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 1; j <= m_; ++j) out.push_back(position(j));
    return out;
  }

 private:
  std::size_t m_;
};

}  // namespace mrqdc
