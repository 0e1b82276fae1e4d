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
#include <string>
#include <string_view>

namespace divmux {

enum class StrategyKind { OptimalSM, TransmitDiversity, MmseSic, NonMimo };

inline constexpr std::array<StrategyKind, 4> kAllStrategies = {
    StrategyKind::MmseSic, StrategyKind::TransmitDiversity, StrategyKind::NonMimo,
    StrategyKind::OptimalSM};

std::string_view to_string(StrategyKind kind);

/// Accepts the names produced by to_string(). Throws ConfigError otherwise.
StrategyKind parse_strategy(std::string_view name);

}  // namespace divmux
