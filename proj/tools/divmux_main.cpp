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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "divmux/commands.hpp"
#include "divmux/config.hpp"
#include "divmux/errors.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> snr_db;
  std::optional<std::string> strategies;
  std::string out;
  unsigned workers = 0;
};

void add_common(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--config", o.config_path, "JSON configuration file");
  sub->add_option("--preset", o.preset, "Named preset used as the base configuration");
  sub->add_option("--seed", o.seed, "Master seed");
  sub->add_option("--trials", o.trials, "Monte-Carlo trials per point");
  sub->add_option("--snr-db", o.snr_db, "Comma-separated SNR grid in dB");
  sub->add_option("--strategies", o.strategies, "Comma-separated strategy names");
  sub->add_option("--out", o.out, "Write CSV here instead of stdout");
  sub->add_option("--workers", o.workers, "Worker threads (0 = hardware concurrency)");
}

divmux::SystemConfig resolve(std::string_view command, const CommonOptions& o) {
  divmux::SystemConfig c =
      o.preset.empty() ? divmux::default_config(command) : divmux::preset(o.preset);
  if (!o.config_path.empty()) c = divmux::load_config(o.config_path, c);
  if (o.seed) c.master_seed = *o.seed;
  if (o.trials) c.trials = *o.trials;
  if (o.snr_db) c.snr_grid_db = divmux::parse_number_list(*o.snr_db);
  if (o.strategies) c.strategies = divmux::parse_strategy_list(*o.strategies);
  divmux::validate(c);
  return c;
}

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw divmux::ConfigError("cannot open output file " + path);
  file << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divmux: outage simulator for MIMO-OFDM diversity and multiplexing"};
  app.require_subcommand(1);

  CommonOptions flat, rich, speed, ergodic, uncoded, stats;
  auto* flat_cmd = app.add_subcommand("flat-sweep", "Flat-fading epsilon-outage rate sweep");
  add_common(flat_cmd, flat);
  auto* rich_cmd = app.add_subcommand("rich-sweep", "Frequency-selective H-ARQ sweep");
  add_common(rich_cmd, rich);
  auto* speed_cmd = app.add_subcommand("speed-sweep", "H-ARQ rate versus terminal speed");
  add_common(speed_cmd, speed);
  std::optional<std::string> velocities;
  speed_cmd->add_option("--velocities", velocities, "Comma-separated speeds in km/h");
  auto* ergodic_cmd = app.add_subcommand("ergodic-compare", "Outage rate against ergodic rate");
  add_common(ergodic_cmd, ergodic);
  auto* uncoded_cmd = app.add_subcommand("uncoded-ser", "Uncoded 2x2 symbol error rates");
  add_common(uncoded_cmd, uncoded);
  auto* dmt_cmd = app.add_subcommand("dmt", "Diversity-multiplexing tradeoff corner points");
  int dmt_nt = 0;
  int dmt_nr = 0;
  std::string dmt_out;
  dmt_cmd->add_option("n_t", dmt_nt, "Transmit antennas")->required();
  dmt_cmd->add_option("n_r", dmt_nr, "Receive antennas")->required();
  dmt_cmd->add_option("--out", dmt_out, "Write CSV here instead of stdout");
  auto* stats_cmd = app.add_subcommand("channel-stats", "Channel-model diagnostics");
  add_common(stats_cmd, stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (flat_cmd->parsed()) {
      emit(divmux::cmd_flat_sweep(resolve("flat-sweep", flat), worker_count(flat.workers)),
           flat.out);
    } else if (rich_cmd->parsed()) {
      emit(divmux::cmd_rich_sweep(resolve("rich-sweep", rich), worker_count(rich.workers)),
           rich.out);
    } else if (speed_cmd->parsed()) {
      divmux::SystemConfig c = resolve("speed-sweep", speed);
      std::vector<double> v = velocities ? divmux::parse_number_list(*velocities)
                                         : c.velocities_kmh;
      emit(divmux::cmd_speed_sweep(c, v, worker_count(speed.workers)), speed.out);
    } else if (ergodic_cmd->parsed()) {
      emit(divmux::cmd_ergodic_compare(resolve("ergodic-compare", ergodic),
                                       worker_count(ergodic.workers)),
           ergodic.out);
    } else if (uncoded_cmd->parsed()) {
      emit(divmux::cmd_uncoded_ser(resolve("uncoded-ser", uncoded),
                                   worker_count(uncoded.workers)),
           uncoded.out);
    } else if (dmt_cmd->parsed()) {
      emit(divmux::cmd_dmt(dmt_nt, dmt_nr), dmt_out);
    } else if (stats_cmd->parsed()) {
      emit(divmux::cmd_channel_stats(resolve("channel-stats", stats)), stats.out);
    }
  } catch (const divmux::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
