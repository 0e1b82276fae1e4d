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

#include <cmath>
#include <complex>
#include <vector>

#include "divmux/errors.hpp"
#include "divmux/rng.hpp"
#include "divmux/uncoded.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace divmux;
using divmux::testing::square_qam_ser;

namespace {

Eigen::Matrix2cd random_h(RngStream& rng) {
  ComplexGaussian g;
  Eigen::Matrix2cd h;
  h << g(rng), g(rng), g(rng), g(rng);
  return h;
}

double standard_error(double p, std::uint64_t n) {
  return std::sqrt(std::max(p * (1.0 - p), 1e-12) / static_cast<double>(n));
}

}  // namespace

TEST_CASE("square qam constellations") {
  for (int order : {4, 16, 64}) {
    const Constellation c = Constellation::square_qam(order);
    REQUIRE(c.size() == static_cast<std::size_t>(order));
    double energy = 0.0;
    for (const auto& p : c.points()) energy += std::norm(p);
    CHECK(std::abs(energy / order - 1.0) < 1e-12);
    CHECK(c.bits_per_symbol() == static_cast<int>(std::lround(std::log2(order))));

    // Gray labels: nearest neighbours differ in exactly one bit.
    const auto pts = c.points();
    const auto labels = c.labels();
    std::vector<bool> seen(order, false);
    for (std::size_t a = 0; a < pts.size(); ++a) {
      CHECK(labels[a] < static_cast<unsigned>(order));
      seen[labels[a]] = true;
      for (std::size_t b = 0; b < pts.size(); ++b) {
        if (std::abs(std::abs(pts[a] - pts[b]) - c.min_distance()) < 1e-9) {
          CHECK(__builtin_popcount(labels[a] ^ labels[b]) == 1);
        }
      }
      CHECK(c.nearest(pts[a] + std::complex<double>(0.3, -0.2) * c.min_distance()) == a);
    }
    for (bool s : seen) CHECK(s);
  }
  CHECK_THROWS_AS(Constellation::square_qam(8), ContractViolation);
  CHECK_THROWS_AS(Constellation::square_qam(2), ContractViolation);
}

TEST_CASE("both schemes carry four bits per channel use") {
  CHECK(bits_per_channel_use(UncodedScheme::Alamouti16) == 4.0);
  CHECK(bits_per_channel_use(UncodedScheme::SmMl4) == 4.0);
  CHECK(constellation_for(UncodedScheme::Alamouti16).size() == 16);
  CHECK(constellation_for(UncodedScheme::SmMl4).size() == 4);
}

TEST_CASE("alamouti combining") {
  RngStream rng(1);
  const Constellation& qam = constellation_for(UncodedScheme::Alamouti16);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Matrix2cd h = random_h(rng);
    const double snr = std::pow(10.0, (trial % 5) - 1.0);
    const double a = std::sqrt(snr / 2.0);
    const auto s1 = qam.points()[trial % 16];
    const auto s2 = qam.points()[(trial * 7) % 16];
    const Eigen::Vector2cd y1 = a * (h * Eigen::Vector2cd(s1, s2));
    const Eigen::Vector2cd y2 = a * (h * Eigen::Vector2cd(-std::conj(s2), std::conj(s1)));
    const AlamoutiCombined c = alamouti_combine(h, y1, y2, a);
    const double expected = snr / 2.0 * h.squaredNorm();
    CHECK(std::abs(c.effective_snr() - expected) <= 1e-12 * std::max(1.0, expected));
    CHECK(std::abs(c.symbols[0] - c.signal_gain * s1) < 1e-12 * std::max(1.0, c.signal_gain));
    CHECK(std::abs(c.symbols[1] - c.signal_gain * s2) < 1e-12 * std::max(1.0, c.signal_gain));
  }
}

TEST_CASE("ml detection is exhaustive") {
  RngStream rng(2);
  ComplexGaussian g;
  const Constellation& qam = constellation_for(UncodedScheme::SmMl4);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Matrix2cd h = random_h(rng);
    const Eigen::Vector2cd y(g(rng) * 2.0, g(rng) * 2.0);
    const double a = 0.5 + trial % 4;
    const auto best = ml_detect(h, y, qam, a);
    const double best_metric = ml_metric(h, y, qam, best[0], best[1], a);
    for (std::size_t c1 = 0; c1 < qam.size(); ++c1) {
      for (std::size_t c2 = 0; c2 < qam.size(); ++c2) {
        CHECK(ml_metric(h, y, qam, c1, c2, a) >= best_metric);
      }
    }
  }
}

TEST_CASE("ml detection decouples on orthogonal columns") {
  RngStream rng(3);
  ComplexGaussian g;
  const Constellation& qam = constellation_for(UncodedScheme::SmMl4);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::complex<double> p = g(rng), q = g(rng);
    Eigen::Matrix2cd h;
    h << p, -std::conj(q), q, std::conj(p);
    h.col(1) *= 0.3 + (trial % 5) * 0.4;
    const double a = 1.5;
    const Eigen::Vector2cd y(g(rng) * 1.5, g(rng) * 1.5);
    const auto ml = ml_detect(h, y, qam, a);
    for (int m = 0; m < 2; ++m) {
      const std::complex<double> z =
          (h.col(m).adjoint() * y).value() / (a * h.col(m).squaredNorm());
      CHECK(ml[m] == qam.nearest(z));
    }
  }
}

TEST_CASE("zero-snr limits") {
  const SerPoint a = alamouti_ser(0.0, 50000, 4);
  const SerPoint s = sm_ml_ser(0.0, 50000, 4);
  CHECK(std::abs(a.ser - 15.0 / 16.0) <= 0.02);
  CHECK(std::abs(s.ser - 3.0 / 4.0) <= 0.02);
  CHECK(a.symbols == 100000);
  CHECK(a.trials == 50000);
}

TEST_CASE("unfaded channel") {
  SerOptions identity;
  identity.fixed_channel = Eigen::Matrix2cd::Identity();
  CHECK(alamouti_ser(1e4, 20000, 5, identity).ser < 1e-3);

  SUBCASE("alamouti matches the closed-form 16-qam ser") {
    // With H = I the combined SNR equals snr.
    for (double gamma : {10.0, 20.0, 40.0}) {
      const SerPoint p = alamouti_ser(gamma, 100000, 6, identity);
      const double ref = square_qam_ser(16, gamma);
      INFO("gamma = " << gamma << " ser = " << p.ser << " ref = " << ref);
      CHECK(std::abs(p.ser - ref) <= 4.0 * standard_error(ref, p.symbols));
    }
  }
  SUBCASE("sm-ml matches two scalar 4-qam detections") {
    for (double snr : {4.0, 10.0, 20.0}) {
      const SerPoint p = sm_ml_ser(snr, 100000, 7, identity);
      const double ref = square_qam_ser(4, snr / 2.0);
      INFO("snr = " << snr << " ser = " << p.ser << " ref = " << ref);
      CHECK(std::abs(p.ser - ref) <= 4.0 * standard_error(ref, p.symbols));
    }
  }
}

TEST_CASE("fading ser sweeps") {
  const std::vector<double> grid = {0.0, 5.0, 10.0, 15.0, 20.0};
  for (UncodedScheme scheme : {UncodedScheme::Alamouti16, UncodedScheme::SmMl4}) {
    const auto points = ser_sweep(scheme, grid, 20000, 8);
    REQUIRE(points.size() == grid.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
      CHECK(points[k].snr_db == grid[k]);
      CHECK(points[k].ser >= 0.0);
      CHECK(points[k].ser <= 1.0);
      if (k > 0) {
        const double slack = 2.0 * (standard_error(points[k].ser, points[k].symbols) +
                                    standard_error(points[k - 1].ser, points[k - 1].symbols));
        CHECK(points[k].ser <= points[k - 1].ser + slack);
      }
    }
  }
}

TEST_CASE("ser reproducibility") {
  SerOptions one, three;
  three.workers = 3;
  const SerPoint a = sm_ml_ser(10.0, 10000, 9, one);
  const SerPoint b = sm_ml_ser(10.0, 10000, 9, three);
  CHECK(a.errors == b.errors);
  CHECK_THROWS_AS(sm_ml_ser(10.0, 0, 9), ContractViolation);
}
