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

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divmux/config.hpp"
#include "divmux/montecarlo.hpp"

namespace divmux {

inline constexpr std::array<std::string_view, 7> kCommandNames = {
    "flat-sweep", "rich-sweep", "speed-sweep", "ergodic-compare",
    "uncoded-ser", "dmt", "channel-stats"};

/// Preset plus per-command adjustments used when no config file is given.
SystemConfig default_config(std::string_view command);

/// Rate curve and ergodic rate of one strategy across the SNR grid.
struct StrategyCurve {
  StrategyKind strategy;
  std::vector<RateCurvePoint> points;
  std::vector<double> ergodic;
};

/// One pass over shared channel blocks for every configured strategy and
/// SNR. Strategies default to all four when the config lists none.
std::vector<StrategyCurve> rate_curves(const SystemConfig& config, unsigned workers = 1);

// Each command validates its config and returns the full CSV text.
std::string cmd_flat_sweep(const SystemConfig& config, unsigned workers = 1);
std::string cmd_rich_sweep(const SystemConfig& config, unsigned workers = 1);
std::string cmd_speed_sweep(const SystemConfig& config, std::span<const double> velocities_kmh,
                            unsigned workers = 1);
std::string cmd_ergodic_compare(const SystemConfig& config, unsigned workers = 1);
std::string cmd_uncoded_ser(const SystemConfig& config, unsigned workers = 1);
std::string cmd_dmt(int n_t, int n_r);
std::string cmd_channel_stats(const SystemConfig& config);

}  // namespace divmux
