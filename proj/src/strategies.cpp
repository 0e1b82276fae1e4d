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

#include "divmux/strategies.hpp"

#include <algorithm>
#include <string>

namespace divmux {

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::OptimalSM: return "optimal-sm";
    case StrategyKind::TransmitDiversity: return "transmit-diversity";
    case StrategyKind::MmseSic: return "mmse-sic";
    case StrategyKind::NonMimo: return "non-mimo";
  }
  return "unknown";
}

StrategyKind parse_strategy(std::string_view name) {
  for (const StrategyKind k : kAllStrategies) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown strategy '" + std::string(name) +
                    "' (expected optimal-sm, transmit-diversity, mmse-sic or non-mimo)");
}

namespace {

// Per-stream accumulated MI after each round: result[k][m].
std::vector<std::vector<double>> sic_stream_accumulation(const ChannelBlock& block, int rounds,
                                                         double snr) {
  const int n_t = block.n_t();
  const double inv_slots = 1.0 / block.slots_per_round();
  std::vector<std::vector<double>> acc(static_cast<std::size_t>(rounds),
                                       std::vector<double>(static_cast<std::size_t>(n_t), 0.0));
  std::vector<double> running(static_cast<std::size_t>(n_t), 0.0);
  for (int k = 0; k < rounds; ++k) {
    std::vector<double> round_sum(static_cast<std::size_t>(n_t), 0.0);
    for (int i = 0; i < block.slots_per_round(); ++i) {
      const auto logs = mmse_sic_stream_mi(block.matrix(k, i), snr);
      for (int m = 0; m < n_t; ++m) round_sum[m] += logs[m];
    }
    for (int m = 0; m < n_t; ++m) {
      running[m] += round_sum[m] * inv_slots;
      acc[k][m] = running[m];
    }
  }
  return acc;
}

template <typename SlotMi>
MiRecord accumulate_slot_mi(const ChannelBlock& block, SlotMi&& slot_mi) {
  MiRecord record;
  record.accumulated.reserve(static_cast<std::size_t>(block.rounds()));
  double running = 0.0;
  for (int k = 0; k < block.rounds(); ++k) {
    double sum = 0.0;
    for (int i = 0; i < block.slots_per_round(); ++i) sum += slot_mi(block.matrix(k, i));
    running += sum / block.slots_per_round();
    record.accumulated.push_back(running);
  }
  return record;
}

}  // namespace

double mi_mmse_sic_aggregate(const ChannelBlock& block, int rounds, double snr) {
  if (rounds < 1 || rounds > block.rounds()) {
    throw ContractViolation("mi_mmse_sic_aggregate: round count out of range");
  }
  const auto acc = sic_stream_accumulation(block, rounds, snr);
  const auto& last = acc.back();
  return block.n_t() * *std::min_element(last.begin(), last.end());
}

MiRecord mi_per_round(StrategyKind strategy, const ChannelBlock& block, double snr) {
  if (block.empty()) throw ContractViolation("mi_per_round: empty channel block");
  if (!(snr >= 0.0) || !std::isfinite(snr)) {
    throw ContractViolation("mi_per_round: snr must be finite and non-negative");
  }
  switch (strategy) {
    case StrategyKind::OptimalSM:
      return accumulate_slot_mi(block, [snr](const auto& h) { return mi_optimal(h, snr); });
    case StrategyKind::NonMimo:
      if (block.n_t() != 1) {
        throw ConfigError("non-mimo strategy needs a single transmit antenna, block has " +
                          std::to_string(block.n_t()));
      }
      [[fallthrough]];
    case StrategyKind::TransmitDiversity:
      return accumulate_slot_mi(block,
                                [snr](const auto& h) { return mi_transmit_diversity(h, snr); });
    case StrategyKind::MmseSic: {
      const auto acc = sic_stream_accumulation(block, block.rounds(), snr);
      MiRecord record;
      for (const auto& per_stream : acc) {
        record.accumulated.push_back(block.n_t() *
                                     *std::min_element(per_stream.begin(), per_stream.end()));
      }
      record.stream_totals = acc.back();
      return record;
    }
  }
  throw ContractViolation("mi_per_round: unknown strategy");
}

}  // namespace divmux
