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
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace divmux {

/// Square QAM with unit average energy and per-axis Gray labels.
class Constellation {
 public:
  static Constellation square_qam(int order);

  std::span<const std::complex<double>> points() const { return points_; }
  std::span<const unsigned> labels() const { return labels_; }
  std::size_t size() const { return points_.size(); }
  int bits_per_symbol() const { return bits_; }
  double min_distance() const { return min_distance_; }

  /// Index of the closest point (minimum Euclidean distance).
  std::size_t nearest(std::complex<double> z) const;

 private:
  std::vector<std::complex<double>> points_;
  std::vector<unsigned> labels_;
  int bits_ = 0;
  double min_distance_ = 0.0;
};

enum class UncodedScheme {
  Alamouti16,  // 2x2 Alamouti, 16-QAM
  SmMl4,       // 2x2 spatial multiplexing, 4-QAM, joint ML detection
};

std::string_view to_string(UncodedScheme scheme);
const Constellation& constellation_for(UncodedScheme scheme);
/// Information bits per channel use (per MIMO vector symbol).
double bits_per_channel_use(UncodedScheme scheme);

struct SerPoint {
  double snr_db = 0.0;
  double ser = 0.0;
  std::uint64_t errors = 0;
  std::uint64_t symbols = 0;
  std::uint64_t trials = 0;
};

struct SerOptions {
  unsigned workers = 1;
  /// Replaces the Rayleigh draw with a fixed channel in every trial.
  std::optional<Eigen::Matrix2cd> fixed_channel;
};

/// Output of Alamouti orthogonal combining over one two-slot block.
struct AlamoutiCombined {
  std::array<std::complex<double>, 2> symbols;  // signal_gain * s + noise
  double signal_gain = 0.0;
  double noise_variance = 0.0;

  double effective_snr() const {
    return noise_variance > 0.0 ? signal_gain * signal_gain / noise_variance : 0.0;
  }
};

/// Slot one sends amplitude * (s1, s2), slot two amplitude * (-s2*, s1*).
AlamoutiCombined alamouti_combine(const Eigen::Matrix2cd& h, const Eigen::Vector2cd& y1,
                                  const Eigen::Vector2cd& y2, double amplitude);

/// ||y - amplitude * H (c1, c2)||^2.
double ml_metric(const Eigen::Matrix2cd& h, const Eigen::Vector2cd& y,
                 const Constellation& constellation, std::size_t c1, std::size_t c2,
                 double amplitude);

/// Exhaustive joint ML search over all constellation pairs.
std::array<std::size_t, 2> ml_detect(const Eigen::Matrix2cd& h, const Eigen::Vector2cd& y,
                                     const Constellation& constellation, double amplitude);

/// Symbol error rate at linear total transmit SNR `snr` (unit noise).
SerPoint alamouti_ser(double snr, std::uint64_t trials, std::uint64_t seed,
                      const SerOptions& options = {});
SerPoint sm_ml_ser(double snr, std::uint64_t trials, std::uint64_t seed,
                   const SerOptions& options = {});

/// One SerPoint per grid entry. Every point reuses the same channel, symbol
/// and noise draws, scaled to its SNR.
std::vector<SerPoint> ser_sweep(UncodedScheme scheme, std::span<const double> snr_db,
                                std::uint64_t trials, std::uint64_t seed,
                                const SerOptions& options = {});

}  // namespace divmux
