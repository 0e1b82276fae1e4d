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

#pragma once

#include <optional>
#include <span>

#include "divmux/strategies.hpp"

namespace divmux {

/// Result of replaying one block through incremental-redundancy H-ARQ.
struct HarqOutcome {
  std::optional<int> terminated_round;  // empty means OUTAGE
  double initial_rate = 0.0;            // accumulated-MI threshold, bits

  bool outage() const { return !terminated_round.has_value(); }
  /// Rounds consumed; an outage uses all of them.
  int rounds_used(int max_rounds) const { return terminated_round.value_or(max_rounds); }
};

/// Smallest k with M_k > initial_rate (strict), else OUTAGE. Ties fail.
HarqOutcome termination_round(std::span<const double> accumulated, double initial_rate);
inline HarqOutcome termination_round(const MiRecord& record, double initial_rate) {
  return termination_round(record.accumulated, initial_rate);
}

/// max_rounds * r_eps / E[K]: the long-term average transmitted rate.
double effective_rate(double r_eps, double expected_rounds, int max_rounds = 6);

}  // namespace divmux
