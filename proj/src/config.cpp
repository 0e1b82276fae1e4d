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

#include "divmux/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "divmux/errors.hpp"
#include "divmux/linalg.hpp"

namespace divmux {
namespace {

std::vector<double> linear_grid(double first, double last, double step) {
  std::vector<double> grid;
  const auto count = static_cast<int>(std::lround((last - first) / step));
  grid.reserve(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) grid.push_back(first + step * i);
  return grid;
}

[[noreturn]] void reject(const std::string& field, const std::string& why) {
  throw ConfigError("config." + field + ": " + why);
}

template <typename T>
T get_as(const nlohmann::json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception& e) {
    reject(key, std::string("wrong type (") + e.what() + ")");
  }
}

}  // namespace

double doppler_from_velocity(double velocity_kmh, double carrier_hz) {
  return velocity_kmh / 3.6 * carrier_hz / kSpeedOfLight;
}

double SystemConfig::doppler_hz() const {
  if (velocity_kmh) return doppler_from_velocity(*velocity_kmh, carrier_hz);
  return max_doppler_hz.value_or(0.0);
}

double SystemConfig::temporal_span_ms() const {
  return harq_rounds * round_spacing_ms - round_spacing_ms + rb_ms;
}

void validate(const SystemConfig& c) {
  if (!(c.tone_spacing_hz > 0.0)) reject("tone_spacing_hz", "must be positive");
  if (!(c.symbol_duration_s > 0.0)) reject("symbol_duration_s", "must be positive");
  if (c.rb_tones < 1) reject("rb_tones", "must be at least 1");
  if (c.usable_tones < c.rb_tones) reject("usable_tones", "must be at least rb_tones");
  if (c.symbols_per_rb < 1) reject("symbols_per_rb", "must be at least 1");
  if (!(c.rb_ms > 0.0)) reject("rb_ms", "must be positive");
  if (c.harq_rounds < 1) reject("harq_rounds", "must be at least 1");
  if (c.harq_rounds > 1 && !(c.round_spacing_ms >= c.rb_ms)) {
    reject("round_spacing_ms", "rounds must not overlap (spacing >= rb_ms)");
  }
  if (c.temporal_span_ms() > 32.0) {
    reject("harq_rounds", "coded block spans " + std::to_string(c.temporal_span_ms()) +
                              " ms, more than the 32 ms limit");
  }
  if (c.velocity_kmh) {
    if (!(*c.velocity_kmh > 0.0)) {
      reject("velocity_kmh",
             "must be positive; near-zero velocities belong to the low-velocity regime where "
             "channel-state feedback, not incremental redundancy, governs the link and these "
             "curves are not meaningful");
    }
  } else if (!c.max_doppler_hz || !(*c.max_doppler_hz > 0.0)) {
    reject("max_doppler_hz", "must be positive");
  }
  if (!(c.carrier_hz > 0.0)) reject("carrier_hz", "must be positive");
  if (c.generator_order < 8) reject("generator_order", "must be at least 8");
  if (c.profile.empty()) reject("profile", "must name a power delay profile");
  if (c.n_t < 1 || c.n_t > kMaxAntennas) reject("n_t", "must be in [1, 8]");
  if (c.n_r < 1 || c.n_r > kMaxAntennas) reject("n_r", "must be in [1, 8]");
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) reject("epsilon", "must be in (0, 1)");
  if (c.trials < 1) reject("trials", "must be at least 1");
  if (c.epsilon * static_cast<double>(c.trials) < 1.0) {
    reject("trials", "epsilon * trials must be at least 1 for the outage quantile");
  }
  if (c.snr_grid_db.empty()) reject("snr_grid_db", "must not be empty");
  for (const double s : c.snr_grid_db) {
    if (!std::isfinite(s)) reject("snr_grid_db", "entries must be finite");
  }
  for (const double v : c.velocities_kmh) {
    if (!(v > 0.0)) {
      reject("velocities_kmh",
             "entries must be positive; zero velocity is the low-velocity regime, where these "
             "curves are not meaningful");
    }
  }
}

SystemConfig preset(std::string_view name) {
  SystemConfig c;
  c.strategies.assign(kAllStrategies.begin(), kAllStrategies.end());
  if (name == "lte-tu-4x4") {
    c.snr_grid_db = linear_grid(0.0, 30.0, 5.0);
    c.velocities_kmh = {50.0, 100.0, 150.0, 200.0, 250.0, 300.0};
    return c;
  }
  if (name == "flat-4x4") {
    // One quasi-static realization per coded block, no retransmissions.
    c.profile = "FLAT";
    c.harq_rounds = 1;
    c.rb_tones = 1;
    c.symbols_per_rb = 1;
    c.snr_grid_db = linear_grid(0.0, 40.0, 2.5);
    return c;
  }
  if (name == "uncoded-2x2") {
    c.profile = "FLAT";
    c.harq_rounds = 1;
    c.n_t = 2;
    c.n_r = 2;
    c.trials = 1000000;
    c.snr_grid_db = linear_grid(0.0, 30.0, 2.5);
    return c;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"lte-tu-4x4", "flat-4x4", "uncoded-2x2"}; }

SystemConfig parse_config(std::string_view json_text, SystemConfig base) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  SystemConfig c = doc.contains("preset") ? preset(get_as<std::string>(doc["preset"], "preset"))
                                          : std::move(base);
  for (const auto& [key, value] : doc.items()) {
    if (key == "preset") continue;
    if (key == "tone_spacing_hz") c.tone_spacing_hz = get_as<double>(value, key);
    else if (key == "symbol_duration_s") c.symbol_duration_s = get_as<double>(value, key);
    else if (key == "usable_tones") c.usable_tones = get_as<int>(value, key);
    else if (key == "rb_tones") c.rb_tones = get_as<int>(value, key);
    else if (key == "rb_ms") c.rb_ms = get_as<double>(value, key);
    else if (key == "symbols_per_rb") c.symbols_per_rb = get_as<int>(value, key);
    else if (key == "harq_rounds") c.harq_rounds = get_as<int>(value, key);
    else if (key == "round_spacing_ms") c.round_spacing_ms = get_as<double>(value, key);
    else if (key == "max_doppler_hz") {
      c.max_doppler_hz = get_as<double>(value, key);
      c.velocity_kmh.reset();
    } else if (key == "velocity_kmh") c.velocity_kmh = get_as<double>(value, key);
    else if (key == "carrier_hz") c.carrier_hz = get_as<double>(value, key);
    else if (key == "generator_order") c.generator_order = get_as<int>(value, key);
    else if (key == "profile") c.profile = get_as<std::string>(value, key);
    else if (key == "profile_catalog") c.profile_catalog = get_as<std::string>(value, key);
    else if (key == "n_t") c.n_t = get_as<int>(value, key);
    else if (key == "n_r") c.n_r = get_as<int>(value, key);
    else if (key == "epsilon") c.epsilon = get_as<double>(value, key);
    else if (key == "snr_grid_db") c.snr_grid_db = get_as<std::vector<double>>(value, key);
    else if (key == "velocities_kmh") c.velocities_kmh = get_as<std::vector<double>>(value, key);
    else if (key == "strategies") {
      c.strategies.clear();
      for (const auto& s : get_as<std::vector<std::string>>(value, key)) {
        c.strategies.push_back(parse_strategy(s));
      }
    } else if (key == "trials") c.trials = get_as<std::size_t>(value, key);
    else if (key == "master_seed") c.master_seed = get_as<std::uint64_t>(value, key);
    else reject(key, "unknown key");
  }
  return c;
}

SystemConfig load_config(const std::filesystem::path& path, SystemConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  SystemConfig c = parse_config(text.str(), std::move(base));
  if (c.profile_catalog && c.profile_catalog->is_relative()) {
    c.profile_catalog = path.parent_path() / *c.profile_catalog;
  }
  return c;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string item(text.substr(pos, end - pos));
    if (!item.empty()) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(item, &used);
      } catch (const std::exception&) {
        throw ConfigError("not a number: '" + item + "'");
      }
      if (used != item.size()) throw ConfigError("not a number: '" + item + "'");
      values.push_back(v);
    }
    pos = end + 1;
  }
  return values;
}

std::vector<StrategyKind> parse_strategy_list(std::string_view text) {
  std::vector<StrategyKind> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto item = text.substr(pos, end - pos);
    if (!item.empty()) out.push_back(parse_strategy(item));
    pos = end + 1;
  }
  if (out.empty()) throw ConfigError("strategy list is empty");
  return out;
}

}  // namespace divmux
