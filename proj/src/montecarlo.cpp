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

#include "divmux/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "divmux/channel.hpp"
#include "divmux/errors.hpp"
#include "divmux/harq.hpp"
#include "divmux/linalg.hpp"
#include "divmux/parallel.hpp"

namespace divmux {
namespace {

std::atomic<std::uint64_t> g_guarantee_checks{0};

void require_quantile_support(std::size_t n, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  if (epsilon * static_cast<double>(n) < 1.0) {
    throw ConfigError("need epsilon * trials >= 1 for the outage quantile (trials = " +
                      std::to_string(n) + ")");
  }
}

}  // namespace

std::vector<double> TrialEnsemble::final_values() const {
  std::vector<double> v;
  v.reserve(samples.size());
  for (const MiRecord& r : samples) v.push_back(r.final_value());
  return v;
}

std::vector<TrialEnsemble> run_trial_grid(const SystemConfig& config,
                                          std::span<const StrategyKind> strategies,
                                          std::span<const double> snr_db, std::size_t trials,
                                          std::uint64_t master_seed, unsigned workers) {
  if (trials < 1) throw ContractViolation("run_trials: trial_count must be at least 1");
  const ChannelModel model(config, resolve_profile(config), interspersed_allocation(config));
  const bool need_single_tx =
      std::find(strategies.begin(), strategies.end(), StrategyKind::NonMimo) != strategies.end();

  std::vector<double> snr_linear(snr_db.size());
  std::transform(snr_db.begin(), snr_db.end(), snr_linear.begin(), db_to_linear);

  std::vector<TrialEnsemble> out(strategies.size() * snr_db.size());
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    for (std::size_t p = 0; p < snr_db.size(); ++p) {
      TrialEnsemble& e = out[s * snr_db.size() + p];
      e.strategy = strategies[s];
      e.snr_db = snr_db[p];
      e.max_rounds = config.harq_rounds;
      e.seed = master_seed;
      e.samples.resize(trials);
    }
  }

  parallel_for(trials, workers, [&](std::size_t t) {
    RngStream rng = make_stream(master_seed, kBlockTag, t);
    const ChannelBlock block = model.draw(rng);
    const ChannelBlock single_tx =
        need_single_tx ? block.leading_columns(1) : ChannelBlock{};
    for (std::size_t s = 0; s < strategies.size(); ++s) {
      const ChannelBlock& source = strategies[s] == StrategyKind::NonMimo ? single_tx : block;
      for (std::size_t p = 0; p < snr_linear.size(); ++p) {
        out[s * snr_linear.size() + p].samples[t] = mi_per_round(strategies[s], source, snr_linear[p]);
      }
    }
  });
  return out;
}

TrialEnsemble run_trials(const SystemConfig& config, StrategyKind strategy, double snr_db,
                         std::size_t trials, std::uint64_t master_seed, unsigned workers) {
  const StrategyKind strategies[] = {strategy};
  const double snrs[] = {snr_db};
  return std::move(run_trial_grid(config, strategies, snrs, trials, master_seed, workers).front());
}

double epsilon_quantile(std::span<const double> samples, double epsilon) {
  require_quantile_support(samples.size(), epsilon);
  std::vector<double> sorted(samples.begin(), samples.end());
  const auto k = static_cast<std::size_t>(std::floor(epsilon * static_cast<double>(sorted.size())));
  const auto nth = sorted.begin() + static_cast<std::ptrdiff_t>(std::min(k, sorted.size() - 1));
  std::nth_element(sorted.begin(), nth, sorted.end());
  return *nth;
}

double outage_rate(const TrialEnsemble& ensemble, double epsilon) {
  const std::vector<double> finals = ensemble.final_values();
  const double q = epsilon_quantile(finals, epsilon);
  double rate = q;
  if (ensemble.max_rounds > 1) {
    const double rounds = ensemble.max_rounds;
    rate = q / rounds;
    while (rate > 0.0 && rounds * rate >= q) rate = std::nextafter(rate, 0.0);
  }
  g_guarantee_checks.fetch_add(1, std::memory_order_relaxed);
  if (const double p = outage_prob(ensemble, rate); p > epsilon) {
    throw NumericalError("outage_rate guarantee violated: outage " + std::to_string(p) +
                         " exceeds epsilon " + std::to_string(epsilon));
  }
  return rate;
}

double outage_prob(const TrialEnsemble& ensemble, double rate) {
  if (ensemble.samples.empty()) throw ContractViolation("outage_prob: empty ensemble");
  const double threshold = static_cast<double>(ensemble.max_rounds) * rate;
  std::size_t below = 0;
  for (const MiRecord& r : ensemble.samples) below += r.final_value() < threshold ? 1 : 0;
  return static_cast<double>(below) / static_cast<double>(ensemble.samples.size());
}

RateCurvePoint summarize(const TrialEnsemble& ensemble, double epsilon) {
  RateCurvePoint point;
  point.snr_db = ensemble.snr_db;
  point.r_eps = outage_rate(ensemble, epsilon);
  const int rounds = ensemble.max_rounds;
  if (rounds == 1) {
    point.expected_rounds = 1.0;
    point.outage_estimate = outage_prob(ensemble, point.r_eps);
  } else {
    const double threshold = rounds * point.r_eps;
    std::size_t outages = 0;
    double rounds_sum = 0.0;
    for (const MiRecord& r : ensemble.samples) {
      const HarqOutcome outcome = termination_round(r, threshold);
      outages += outcome.outage() ? 1 : 0;
      rounds_sum += outcome.rounds_used(rounds);
    }
    const auto n = static_cast<double>(ensemble.samples.size());
    point.expected_rounds = rounds_sum / n;
    point.outage_estimate = static_cast<double>(outages) / n;
  }
  point.effective_rate = effective_rate(point.r_eps, point.expected_rounds, rounds);
  return point;
}

RateCurvePoint sweep_point(const SystemConfig& config, StrategyKind strategy, double snr_db,
                           double epsilon, std::size_t trials, std::uint64_t master_seed,
                           unsigned workers) {
  require_quantile_support(trials, epsilon);
  return summarize(run_trials(config, strategy, snr_db, trials, master_seed, workers), epsilon);
}

double ergodic_rate(const TrialEnsemble& ensemble) {
  if (ensemble.samples.empty()) throw ContractViolation("ergodic_rate: empty ensemble");
  const auto n = static_cast<double>(ensemble.samples.size());
  const double rounds = ensemble.max_rounds;
  if (ensemble.strategy == StrategyKind::MmseSic) {
    const std::size_t streams = ensemble.samples.front().stream_totals.size();
    std::vector<double> mean(streams, 0.0);
    for (const MiRecord& r : ensemble.samples) {
      for (std::size_t m = 0; m < streams; ++m) mean[m] += r.stream_totals[m];
    }
    const double weakest = *std::min_element(mean.begin(), mean.end());
    return static_cast<double>(streams) * weakest / (n * rounds);
  }
  double total = 0.0;
  for (const MiRecord& r : ensemble.samples) total += r.final_value();
  return total / (n * rounds);
}

double ergodic_rate(const SystemConfig& config, StrategyKind strategy, double snr_db,
                    std::size_t trials, std::uint64_t master_seed, unsigned workers) {
  return ergodic_rate(run_trials(config, strategy, snr_db, trials, master_seed, workers));
}

std::uint64_t outage_guarantee_checks() { return g_guarantee_checks.load(); }

}  // namespace divmux
