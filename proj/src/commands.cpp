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

#include "divmux/commands.hpp"

#include <cmath>
#include <numbers>

#include "divmux/channel.hpp"
#include "divmux/csv.hpp"
#include "divmux/dmt.hpp"
#include "divmux/errors.hpp"
#include "divmux/linalg.hpp"
#include "divmux/uncoded.hpp"

namespace divmux {
namespace {

constexpr double kFirstBesselZero = 2.404825557695773;

std::vector<StrategyKind> configured_strategies(const SystemConfig& config) {
  if (!config.strategies.empty()) return config.strategies;
  return {kAllStrategies.begin(), kAllStrategies.end()};
}

std::vector<std::string> long_header() {
  return {"experiment", "strategy", "snr_db", "metric", "value", "trials", "seed"};
}

}  // namespace

SystemConfig default_config(std::string_view command) {
  if (command == "flat-sweep") return preset("flat-4x4");
  if (command == "uncoded-ser") return preset("uncoded-2x2");
  SystemConfig c = preset("lte-tu-4x4");
  if (command == "speed-sweep") c.snr_grid_db = {20.0};
  if (command == "channel-stats") c.trials = 10000;
  return c;
}

std::vector<StrategyCurve> rate_curves(const SystemConfig& config, unsigned workers) {
  validate(config);
  const auto strategies = configured_strategies(config);
  const auto ensembles = run_trial_grid(config, strategies, config.snr_grid_db, config.trials,
                                        config.master_seed, workers);
  std::vector<StrategyCurve> curves;
  const std::size_t n_snr = config.snr_grid_db.size();
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    StrategyCurve curve{strategies[s], {}, {}};
    for (std::size_t p = 0; p < n_snr; ++p) {
      const TrialEnsemble& e = ensembles[s * n_snr + p];
      curve.points.push_back(summarize(e, config.epsilon));
      curve.ergodic.push_back(ergodic_rate(e));
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::string cmd_flat_sweep(const SystemConfig& config, unsigned workers) {
  validate(config);
  if (config.harq_rounds != 1) throw ConfigError("flat-sweep needs harq_rounds = 1");
  if (resolve_profile(config).size() != 1) {
    throw ConfigError("flat-sweep needs a single-tap (frequency-flat) profile");
  }
  CsvTable csv(long_header());
  for (const StrategyCurve& curve : rate_curves(config, workers)) {
    for (const RateCurvePoint& p : curve.points) {
      csv.add_row({"flat-sweep", to_string(curve.strategy), p.snr_db, "r_eps", p.r_eps,
                   config.trials, config.master_seed});
      csv.add_row({"flat-sweep", to_string(curve.strategy), p.snr_db, "outage_estimate",
                   p.outage_estimate, config.trials, config.master_seed});
    }
  }
  return csv.str();
}

std::string cmd_rich_sweep(const SystemConfig& config, unsigned workers) {
  validate(config);
  if (config.harq_rounds < 2) {
    throw ConfigError("rich-sweep needs H-ARQ (harq_rounds >= 2); use flat-sweep otherwise");
  }
  CsvTable csv(long_header());
  for (const StrategyCurve& curve : rate_curves(config, workers)) {
    for (const RateCurvePoint& p : curve.points) {
      const auto name = to_string(curve.strategy);
      csv.add_row({"rich-sweep", name, p.snr_db, "effective_rate", p.effective_rate,
                   config.trials, config.master_seed});
      csv.add_row({"rich-sweep", name, p.snr_db, "r_eps", p.r_eps, config.trials,
                   config.master_seed});
      csv.add_row({"rich-sweep", name, p.snr_db, "expected_rounds", p.expected_rounds,
                   config.trials, config.master_seed});
      csv.add_row({"rich-sweep", name, p.snr_db, "outage_estimate", p.outage_estimate,
                   config.trials, config.master_seed});
    }
  }
  return csv.str();
}

std::string cmd_speed_sweep(const SystemConfig& config, std::span<const double> velocities_kmh,
                            unsigned workers) {
  validate(config);
  if (velocities_kmh.empty()) throw ConfigError("speed-sweep needs at least one velocity");
  CsvTable csv({"experiment", "strategy", "velocity_kmh", "doppler_hz", "snr_db", "metric",
                "value", "trials", "seed"});
  for (const double v : velocities_kmh) {
    SystemConfig at_speed = config;
    at_speed.velocity_kmh = v;
    validate(at_speed);
    const double fd = at_speed.doppler_hz();
    for (const StrategyCurve& curve : rate_curves(at_speed, workers)) {
      for (const RateCurvePoint& p : curve.points) {
        const auto name = to_string(curve.strategy);
        csv.add_row({"speed-sweep", name, v, fd, p.snr_db, "effective_rate", p.effective_rate,
                     config.trials, config.master_seed});
        csv.add_row({"speed-sweep", name, v, fd, p.snr_db, "r_eps", p.r_eps, config.trials,
                     config.master_seed});
        csv.add_row({"speed-sweep", name, v, fd, p.snr_db, "expected_rounds",
                     p.expected_rounds, config.trials, config.master_seed});
      }
    }
  }
  return csv.str();
}

std::string cmd_ergodic_compare(const SystemConfig& config, unsigned workers) {
  CsvTable csv({"experiment", "strategy", "snr_db", "r_eps", "ergodic_rate", "relative_gap",
                "trials", "seed"});
  for (const StrategyCurve& curve : rate_curves(config, workers)) {
    for (std::size_t p = 0; p < curve.points.size(); ++p) {
      const double r = curve.points[p].r_eps;
      const double erg = curve.ergodic[p];
      const double gap = erg > 0.0 ? (erg - r) / erg : 0.0;
      csv.add_row({"ergodic-compare", to_string(curve.strategy), curve.points[p].snr_db, r, erg,
                   gap, config.trials, config.master_seed});
    }
  }
  return csv.str();
}

std::string cmd_uncoded_ser(const SystemConfig& config, unsigned workers) {
  validate(config);
  if (config.n_t != 2 || config.n_r != 2) {
    throw ConfigError("uncoded-ser models the 2x2 link only (n_t = n_r = 2)");
  }
  CsvTable csv({"experiment", "scheme", "snr_db", "ser", "errors", "symbols", "trials", "seed"});
  SerOptions options;
  options.workers = workers;
  for (const UncodedScheme scheme : {UncodedScheme::Alamouti16, UncodedScheme::SmMl4}) {
    for (const SerPoint& p :
         ser_sweep(scheme, config.snr_grid_db, config.trials, config.master_seed, options)) {
      csv.add_row({"uncoded-ser", to_string(scheme), p.snr_db, p.ser, p.errors, p.symbols,
                   p.trials, config.master_seed});
    }
  }
  return csv.str();
}

std::string cmd_dmt(int n_t, int n_r) {
  if (n_t < 1 || n_r < 1) throw ConfigError("dmt needs positive antenna counts");
  CsvTable csv({"r", "d"});
  const DmtCurve curve = dmt_curve(n_t, n_r);
  for (const DmtPoint& p : curve.points()) csv.add_row({p.r, p.d});
  return csv.str();
}

std::string cmd_channel_stats(const SystemConfig& config) {
  validate(config);
  const PowerDelayProfile profile = resolve_profile(config);
  const DopplerSpec doppler{config.doppler_hz(), config.generator_order};
  const std::uint64_t seed = config.master_seed;
  CsvTable csv({"section", "index", "abscissa", "value", "reference"});

  double power_sum = 0.0;
  const auto taps = profile.taps();
  for (std::size_t j = 0; j < taps.size(); ++j) {
    csv.add_row({"tap_power", j, taps[j].delay_s * 1e6, taps[j].power,
                 10.0 * std::log10(taps[j].power)});
    power_sum += taps[j].power;
  }
  csv.add_row({"tap_power_sum", 0, 0.0, power_sum, 1.0});
  csv.add_row({"rms_delay_spread_us", 0, 0.0, profile.rms_delay_spread() * 1e6, 1.0});

  // Autocorrelation on a 0.5 ms grid up to 30 ms, then the first Bessel
  // zero and the H-ARQ round spacing.
  std::vector<double> lags;
  for (int i = 0; i <= 60; ++i) lags.push_back(i * 0.5e-3);
  lags.push_back(kFirstBesselZero / (2.0 * std::numbers::pi * doppler.max_doppler_hz));
  lags.push_back(config.round_spacing_ms * 1e-3);
  RngStream autocorr_rng = make_stream(seed, "stats-autocorrelation", 0);
  const auto autocorr = empirical_autocorrelation(doppler, lags, config.trials, autocorr_rng);
  for (std::size_t k = 0; k < lags.size(); ++k) {
    const double x = 2.0 * std::numbers::pi * doppler.max_doppler_hz * lags[k];
    csv.add_row({"autocorrelation", k, lags[k] * 1e3, autocorr[k].real(),
                 std::cyl_bessel_j(0.0, x)});
  }

  const ToneAllocation allocation = interspersed_allocation(config);
  const double tone_gap =
      allocation.allocated.size() > 1
          ? (allocation.allocated[1] - allocation.allocated[0]) * config.tone_spacing_hz
          : config.tone_spacing_hz;
  std::vector<double> dfs;
  for (std::size_t k = 0; k < allocation.allocated.size(); ++k) dfs.push_back(k * tone_gap);
  RngStream freq_rng = make_stream(seed, "stats-frequency-correlation", 0);
  const auto freqcorr = empirical_frequency_correlation(profile, dfs, 10 * config.trials, freq_rng);
  for (std::size_t k = 0; k < dfs.size(); ++k) {
    csv.add_row({"frequency_correlation", k, dfs[k] * 1e-3, std::abs(freqcorr[k]),
                 std::abs(profile.frequency_correlation(dfs[k]))});
  }

  // One SISO realization: all usable tones at t = 0, and tone 0 over 30 ms.
  RngStream trace_rng = make_stream(seed, "stats-trace", 0);
  std::vector<SumOfSinusoids> processes;
  for (std::size_t j = 0; j < taps.size(); ++j) processes.emplace_back(doppler, trace_rng);
  std::vector<std::complex<double>> gains(taps.size());
  for (std::size_t j = 0; j < taps.size(); ++j) gains[j] = processes[j](0.0);
  std::vector<double> all_tones(static_cast<std::size_t>(config.usable_tones));
  for (std::size_t k = 0; k < all_tones.size(); ++k) all_tones[k] = k * config.tone_spacing_hz;
  const Eigen::VectorXcd over_tones = frequency_response(profile, gains, all_tones);
  std::size_t next_allocated = 0;
  for (std::size_t k = 0; k < all_tones.size(); ++k) {
    bool allocated = false;
    if (next_allocated < allocation.allocated.size() &&
        allocation.allocated[next_allocated] == static_cast<int>(k)) {
      allocated = true;
      ++next_allocated;
    }
    csv.add_row({"trace_tones", k, all_tones[k] * 1e-6,
                 10.0 * std::log10(std::norm(over_tones[static_cast<Eigen::Index>(k)])),
                 allocated ? 1.0 : 0.0});
  }
  const double zero_freq[] = {0.0};
  for (int i = 0; i <= 300; ++i) {
    const double t = i * 1e-4;
    for (std::size_t j = 0; j < taps.size(); ++j) gains[j] = processes[j](t);
    const std::complex<double> h = frequency_response(profile, gains, zero_freq)[0];
    const double in_round = std::fmod(t * 1e3 + 1e-9, config.round_spacing_ms);
    const bool marked = in_round < config.rb_ms &&
                        t * 1e3 < config.harq_rounds * config.round_spacing_ms;
    csv.add_row({"trace_time", i, t * 1e3, 10.0 * std::log10(std::norm(h)),
                 marked ? 1.0 : 0.0});
  }
  return csv.str();
}

}  // namespace divmux
