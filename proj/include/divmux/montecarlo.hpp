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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "divmux/config.hpp"
#include "divmux/strategies.hpp"

namespace divmux {

/// Experiment tag of the channel-block substreams. Trial t of any rate
/// experiment draws its block from (master_seed, kBlockTag, t), so every
/// strategy and SNR point sees the same fading realizations.
inline constexpr std::string_view kBlockTag = "channel-block";

struct TrialEnsemble {
  StrategyKind strategy = StrategyKind::OptimalSM;
  double snr_db = 0.0;
  int max_rounds = 1;
  std::uint64_t seed = 0;
  std::vector<MiRecord> samples;

  std::size_t trial_count() const { return samples.size(); }
  /// M_max of every trial, in trial order.
  std::vector<double> final_values() const;
};

struct RateCurvePoint {
  double snr_db = 0.0;
  double r_eps = 0.0;
  double effective_rate = 0.0;
  double expected_rounds = 1.0;
  double outage_estimate = 0.0;
};

/// Ensembles for every (strategy, snr) pair from one set of channel blocks.
/// Result index is strategy-major: [s * snr_db.size() + p]. Bit-identical
/// for any worker count.
std::vector<TrialEnsemble> run_trial_grid(const SystemConfig& config,
                                          std::span<const StrategyKind> strategies,
                                          std::span<const double> snr_db, std::size_t trials,
                                          std::uint64_t master_seed, unsigned workers = 1);

TrialEnsemble run_trials(const SystemConfig& config, StrategyKind strategy, double snr_db,
                         std::size_t trials, std::uint64_t master_seed, unsigned workers = 1);

/// Order statistic s_(k), k = floor(epsilon N) + 1, of the samples: at most a
/// fraction epsilon of them lie strictly below the returned value. Throws
/// ConfigError if epsilon N < 1.
double epsilon_quantile(std::span<const double> samples, double epsilon);

/// Largest rate whose empirical outage does not exceed epsilon. Without
/// retransmissions this is epsilon_quantile of the block MI. With H-ARQ it is
/// 1/max_rounds of the quantile of M_max, lowered by a few ulps so that the
/// tie-fails termination rule also stays within epsilon. The guarantee
/// outage_prob(ensemble, result) <= epsilon is checked on every call.
double outage_rate(const TrialEnsemble& ensemble, double epsilon);

/// Fraction of trials whose M_max lies strictly below max_rounds * rate.
double outage_prob(const TrialEnsemble& ensemble, double rate);

/// R_eps, then E[K] and the outage frequency from replaying every trial
/// through H-ARQ at threshold max_rounds * R_eps (outages count as
/// max_rounds). Single-round ensembles report the outage_prob of R_eps.
RateCurvePoint summarize(const TrialEnsemble& ensemble, double epsilon);

RateCurvePoint sweep_point(const SystemConfig& config, StrategyKind strategy, double snr_db,
                           double epsilon, std::size_t trials, std::uint64_t master_seed,
                           unsigned workers = 1);

/// Mean per-slot MI over all slots, rounds and trials. For MMSE-SIC, where
/// streams share one rate, nT times the smallest per-stream mean.
double ergodic_rate(const TrialEnsemble& ensemble);
double ergodic_rate(const SystemConfig& config, StrategyKind strategy, double snr_db,
                    std::size_t trials, std::uint64_t master_seed, unsigned workers = 1);

/// Number of outage_rate guarantee checks performed in this process.
std::uint64_t outage_guarantee_checks();

}  // namespace divmux
