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

#include <span>
#include <vector>

namespace divmux {

struct DmtPoint {
  double r;  // multiplexing gain
  double d;  // diversity order
};

/// Optimal quasi-static tradeoff d(r) = (nT - r)(nR - r) at the integer
/// gains r = 0..min(nT, nR), linearly interpolated in between.
class DmtCurve {
 public:
  explicit DmtCurve(std::vector<DmtPoint> points) : points_(std::move(points)) {}

  const std::vector<DmtPoint>& points() const { return points_; }
  double max_multiplexing_gain() const { return points_.back().r; }
  /// Piecewise-linear interpolant; zero beyond the largest gain.
  double diversity(double r) const;

 private:
  std::vector<DmtPoint> points_;
};

DmtCurve dmt_curve(int n_t, int n_r);

struct CurveSample {
  double snr_db;
  double value;
};

/// Least-squares slope of rate against SNR in 3 dB units (bits/s/Hz per
/// 3 dB) over samples within `window_db` of the highest SNR.
double estimate_multiplexing_slope(std::span<const CurveSample> curve, double window_db = 10.0);

/// Negative least-squares slope of log10(P) against SNR in 10 dB units over
/// the top `window_db` of the curve. Non-positive probabilities are skipped.
double estimate_diversity_order(std::span<const CurveSample> curve, double window_db = 10.0);

}  // namespace divmux
