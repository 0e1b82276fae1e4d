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

#include "divmux/dmt.hpp"

#include <algorithm>
#include <cmath>

#include "divmux/errors.hpp"

namespace divmux {
namespace {

// 10 log10(2): one doubling of SNR in dB.
constexpr double kThreeDb = 3.0102999566398119521;

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw ContractViolation("slope fit needs at least two distinct SNR values");
  return sxy / sxx;
}

void require_increasing(std::span<const CurveSample> curve) {
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (!(curve[i].snr_db > curve[i - 1].snr_db)) {
      throw ContractViolation("curve SNR values must be strictly increasing");
    }
  }
}

}  // namespace

double DmtCurve::diversity(double r) const {
  if (r <= points_.front().r) return points_.front().d;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (r <= points_[i].r) {
      const DmtPoint& a = points_[i - 1];
      const DmtPoint& b = points_[i];
      return a.d + (b.d - a.d) * (r - a.r) / (b.r - a.r);
    }
  }
  return 0.0;
}

DmtCurve dmt_curve(int n_t, int n_r) {
  if (n_t < 1 || n_r < 1) throw ContractViolation("dmt_curve: antenna counts must be positive");
  std::vector<DmtPoint> points;
  for (int r = 0; r <= std::min(n_t, n_r); ++r) {
    points.push_back({static_cast<double>(r), static_cast<double>((n_t - r) * (n_r - r))});
  }
  return DmtCurve(std::move(points));
}

double estimate_multiplexing_slope(std::span<const CurveSample> curve, double window_db) {
  if (curve.size() < 2) throw ContractViolation("multiplexing slope needs at least two points");
  require_increasing(curve);
  const double lo = curve.back().snr_db - window_db;
  std::vector<double> x;
  std::vector<double> y;
  for (const CurveSample& s : curve) {
    if (s.snr_db >= lo) {
      x.push_back(s.snr_db / kThreeDb);
      y.push_back(s.value);
    }
  }
  if (x.size() < 2) throw ContractViolation("fewer than two points inside the fitting window");
  return least_squares_slope(x, y);
}

double estimate_diversity_order(std::span<const CurveSample> curve, double window_db) {
  require_increasing(curve);
  if (curve.empty()) throw ContractViolation("diversity order needs a non-empty curve");
  const double lo = curve.back().snr_db - window_db;
  std::vector<CurveSample> kept;
  std::copy_if(curve.begin(), curve.end(), std::back_inserter(kept),
               [lo](const CurveSample& s) { return s.value > 0.0 && s.snr_db >= lo; });
  std::vector<double> x;
  std::vector<double> y;
  for (const CurveSample& s : kept) {
    x.push_back(s.snr_db / 10.0);
    y.push_back(std::log10(s.value));
  }
  if (x.size() < 2) {
    throw ContractViolation("diversity order needs two non-zero probabilities in the window");
  }
  return -least_squares_slope(x, y);
}

}  // namespace divmux
