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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "divmux/strategy_kind.hpp"

namespace divmux {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Link and experiment parameters. Defaults reproduce the LTE-like case study:
/// 15 kHz tones, 12-tone resource blocks spread over 600 usable tones, 14 OFDM
/// symbols per 1 ms block, six incremental-redundancy rounds spaced 6 ms apart.
struct SystemConfig {
  double tone_spacing_hz = 15e3;
  double symbol_duration_s = 71.5e-6;
  int usable_tones = 600;
  int rb_tones = 12;
  double rb_ms = 1.0;
  int symbols_per_rb = 14;
  int harq_rounds = 6;
  double round_spacing_ms = 6.0;

  // velocity_kmh, when set, takes precedence over max_doppler_hz.
  std::optional<double> max_doppler_hz = 185.0;
  std::optional<double> velocity_kmh;
  double carrier_hz = 2e9;
  int generator_order = 64;

  std::string profile = "TU12";
  std::optional<std::filesystem::path> profile_catalog;

  int n_t = 4;
  int n_r = 4;
  double epsilon = 0.01;
  std::vector<double> snr_grid_db;
  std::vector<double> velocities_kmh;
  std::vector<StrategyKind> strategies;
  std::size_t trials = 2000;
  std::uint64_t master_seed = 1;

  int slots_per_round() const { return rb_tones * symbols_per_rb; }
  double doppler_hz() const;
  /// First symbol of round one to end of the last round, in ms.
  double temporal_span_ms() const;
};

double doppler_from_velocity(double velocity_kmh, double carrier_hz);

/// Throws ConfigError naming the first offending field.
void validate(const SystemConfig& config);

/// Built-in presets: "lte-tu-4x4", "flat-4x4", "uncoded-2x2".
SystemConfig preset(std::string_view name);
std::vector<std::string> preset_names();

/// Overlays the keys of a JSON object onto `base`. A "preset" key, if present,
/// replaces `base` before the remaining keys are applied.
SystemConfig parse_config(std::string_view json_text, SystemConfig base);
SystemConfig load_config(const std::filesystem::path& path, SystemConfig base);

std::vector<double> parse_number_list(std::string_view text);
std::vector<StrategyKind> parse_strategy_list(std::string_view text);

}  // namespace divmux
