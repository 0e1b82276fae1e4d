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

#include <complex>
#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "divmux/config.hpp"
#include "divmux/rng.hpp"

namespace divmux {

struct Tap {
  double delay_s;
  double power;  // linear, normalized so the profile sums to one
};

/// Tapped-delay-line power delay profile with unit total power.
class PowerDelayProfile {
 public:
  /// Delays must be strictly increasing and non-negative, powers positive.
  /// Powers are normalized to unit sum. Throws ConfigError otherwise.
  explicit PowerDelayProfile(std::vector<Tap> taps);

  static PowerDelayProfile from_db(std::span<const double> delays_us,
                                   std::span<const double> powers_db);

  std::span<const Tap> taps() const { return taps_; }
  std::size_t size() const { return taps_.size(); }

  double mean_delay() const;
  double rms_delay_spread() const;

  /// E[h(f) h*(f + df)] for unit-variance uncorrelated taps.
  std::complex<double> frequency_correlation(double df_hz) const;

 private:
  std::vector<Tap> taps_;
};

/// 12-ray typical-urban profile.
PowerDelayProfile build_tu_profile();
/// Single tap at zero delay.
PowerDelayProfile build_flat_profile();

/// JSON object mapping profile names to arrays of {"delay_us", "power_db"}.
std::map<std::string, PowerDelayProfile> parse_profile_catalog(std::string_view json_text);
std::map<std::string, PowerDelayProfile> load_profile_catalog(const std::filesystem::path& path);

/// "TU12" and "FLAT" are built in; other names are looked up in the catalog.
PowerDelayProfile resolve_profile(const SystemConfig& config);

struct DopplerSpec {
  double max_doppler_hz = 185.0;
  int generator_order = 64;

  void validate() const;
};

/// One Clarke-Jakes tap process synthesized as a sum of sinusoids. The
/// in-phase and quadrature rails each use `generator_order` sinusoids with
/// uniform arrival angles and phases, giving unit variance and
/// E[c(t) c*(t + tau)] = J0(2 pi f_d tau) in expectation over draws.
class SumOfSinusoids {
 public:
  SumOfSinusoids(const DopplerSpec& spec, RngStream& rng);

  std::complex<double> operator()(double t) const;

  void sample(std::span<const double> times, std::span<std::complex<double>> out) const;

  /// out[o * local.size() + l] = c(offsets[o] + local[l]). Equivalent to
  /// sample() on the flattened times, with far fewer trig evaluations.
  void sample_grid(std::span<const double> offsets, std::span<const double> local,
                   std::span<std::complex<double>> out) const;

 private:
  std::vector<double> omega_;  // I rail first, then Q rail
  std::vector<double> phase_;
  int order_;
  double scale_;
};

/// Samples of one tap process at `sample_times` (non-decreasing).
std::vector<std::complex<double>> generate_tap_gains(const DopplerSpec& spec,
                                                     std::span<const double> sample_times,
                                                     RngStream& rng);

/// sum_j sqrt(alpha_j) c_j exp(-i 2 pi f tau_j) at each frequency.
Eigen::VectorXcd frequency_response(const PowerDelayProfile& profile,
                                    std::span<const std::complex<double>> tap_gains,
                                    std::span<const double> tone_freqs_hz);

struct ToneAllocation {
  int usable_tones = 600;
  std::vector<int> allocated;
  double tone_spacing_hz = 15e3;

  void validate() const;
  std::vector<double> frequencies_hz() const;
};

/// rb_tones indices spread uniformly over the usable band (every 50th tone in
/// the case study).
ToneAllocation interspersed_allocation(const SystemConfig& config);

/// nR x nT channel matrices for every slot of every H-ARQ round of one coded
/// block. Slot index is symbol-major: slot = symbol * tones + tone.
class ChannelBlock {
 public:
  ChannelBlock() = default;
  ChannelBlock(int rounds, int slots_per_round, int n_r, int n_t);

  int rounds() const { return rounds_; }
  int slots_per_round() const { return slots_; }
  int n_r() const { return n_r_; }
  int n_t() const { return n_t_; }
  bool empty() const { return data_.empty(); }

  Eigen::Map<Eigen::MatrixXcd> matrix(int round, int slot) {
    return {data_.data() + offset(round, slot), n_r_, n_t_};
  }
  Eigen::Map<const Eigen::MatrixXcd> matrix(int round, int slot) const {
    return {data_.data() + offset(round, slot), n_r_, n_t_};
  }

  /// Block restricted to the first `count` transmit antennas.
  ChannelBlock leading_columns(int count) const;

 private:
  std::size_t offset(int round, int slot) const {
    return (static_cast<std::size_t>(round) * slots_ + slot) * n_r_ * n_t_;
  }

  int rounds_ = 0;
  int slots_ = 0;
  int n_r_ = 0;
  int n_t_ = 0;
  std::vector<std::complex<double>> data_;
};

/// Precomputed sampling geometry for repeated block draws under one config.
class ChannelModel {
 public:
  ChannelModel(const SystemConfig& config, PowerDelayProfile profile, ToneAllocation allocation);

  /// Every antenna pair gets its own substream keyed by (receive, transmit)
  /// index, so a block drawn with fewer transmit antennas equals the leading
  /// columns of a larger one drawn from the same stream state.
  ChannelBlock draw(RngStream& rng) const;

  const PowerDelayProfile& profile() const { return profile_; }
  const ToneAllocation& allocation() const { return allocation_; }
  const DopplerSpec& doppler() const { return doppler_; }

  /// Symbol-midpoint instants within a round and the round start offsets.
  std::span<const double> symbol_times() const { return symbol_times_; }
  std::span<const double> round_offsets() const { return round_offsets_; }

 private:
  PowerDelayProfile profile_;
  ToneAllocation allocation_;
  DopplerSpec doppler_;
  int n_r_;
  int n_t_;
  std::vector<double> symbol_times_;
  std::vector<double> round_offsets_;
  Eigen::MatrixXcd steering_;  // taps x tones, includes sqrt(alpha_j)
};

ChannelBlock generate_block(const SystemConfig& config, const ToneAllocation& allocation,
                            RngStream& rng);

// Validation statistics.

/// Mean of c(0) c*(lag) over `processes` independent tap processes.
std::complex<double> empirical_autocorrelation(const DopplerSpec& spec, double lag_s,
                                               std::size_t processes, RngStream& rng);

/// As above for several lags, each process evaluated at every lag.
std::vector<std::complex<double>> empirical_autocorrelation(const DopplerSpec& spec,
                                                            std::span<const double> lags_s,
                                                            std::size_t processes,
                                                            RngStream& rng);

/// Mean of h(0) h*(df) over i.i.d. unit-variance tap draws.
std::complex<double> empirical_frequency_correlation(const PowerDelayProfile& profile,
                                                     double df_hz, std::size_t realizations,
                                                     RngStream& rng);
std::vector<std::complex<double>> empirical_frequency_correlation(
    const PowerDelayProfile& profile, std::span<const double> df_hz, std::size_t realizations,
    RngStream& rng);

}  // namespace divmux
