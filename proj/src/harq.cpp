// SPDX-License-Identifier: Apache-2.0
//
// divmux: link-level outage simulator for MIMO-OFDM transmit diversity and
// spatial multiplexing
// Copyright (C) 2026 The divmux authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "divmux/harq.hpp"

#include <string>

#include "divmux/errors.hpp"

namespace divmux {

HarqOutcome termination_round(std::span<const double> accumulated, double initial_rate) {
  for (std::size_t k = 1; k < accumulated.size(); ++k) {
    if (accumulated[k] < accumulated[k - 1]) {
      throw ContractViolation("termination_round: accumulated MI decreases at round " +
                              std::to_string(k + 1));
    }
  }
  HarqOutcome outcome;
  outcome.initial_rate = initial_rate;
  for (std::size_t k = 0; k < accumulated.size(); ++k) {
    if (accumulated[k] > initial_rate) {
      outcome.terminated_round = static_cast<int>(k) + 1;
      break;
    }
  }
  return outcome;
}

double effective_rate(double r_eps, double expected_rounds, int max_rounds) {
  if (max_rounds < 1) throw ContractViolation("effective_rate: max_rounds must be positive");
  if (!(expected_rounds >= 1.0) || expected_rounds > max_rounds) {
    throw ContractViolation("effective_rate: expected rounds must lie in [1, max_rounds]");
  }
  return max_rounds * r_eps / expected_rounds;
}

}  // namespace divmux
