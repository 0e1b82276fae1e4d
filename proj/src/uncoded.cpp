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

#include "divmux/uncoded.hpp"

#include <cmath>
#include <limits>

#include "divmux/errors.hpp"
#include "divmux/linalg.hpp"
#include "divmux/parallel.hpp"
#include "divmux/rng.hpp"

namespace divmux {
namespace {

constexpr std::uint64_t kTrialsPerChunk = 4096;

std::size_t draw_index(RngStream& rng, std::size_t size) {
  return static_cast<std::size_t>((rng() >> 32) % size);
}

Eigen::Matrix2cd draw_channel(RngStream& rng, ComplexGaussian& gauss, const SerOptions& options) {
  if (options.fixed_channel) return *options.fixed_channel;
  Eigen::Matrix2cd h;
  h << gauss(rng), gauss(rng), gauss(rng), gauss(rng);
  return h;
}

// Symbol errors over `count` trials drawn from one chunk stream.
std::uint64_t alamouti_errors(RngStream& rng, std::uint64_t count, double snr,
                              const SerOptions& options) {
  const Constellation& qam = constellation_for(UncodedScheme::Alamouti16);
  const auto pts = qam.points();
  const double amplitude = std::sqrt(snr / 2.0);
  ComplexGaussian gauss;
  std::uint64_t errors = 0;
  for (std::uint64_t n = 0; n < count; ++n) {
    const Eigen::Matrix2cd h = draw_channel(rng, gauss, options);
    const std::size_t i1 = draw_index(rng, qam.size());
    const std::size_t i2 = draw_index(rng, qam.size());
    const Eigen::Vector2cd x1(pts[i1], pts[i2]);
    const Eigen::Vector2cd x2(-std::conj(pts[i2]), std::conj(pts[i1]));
    const Eigen::Vector2cd n1(gauss(rng), gauss(rng));
    const Eigen::Vector2cd n2(gauss(rng), gauss(rng));
    const Eigen::Vector2cd y1 = amplitude * (h * x1) + n1;
    const Eigen::Vector2cd y2 = amplitude * (h * x2) + n2;
    const AlamoutiCombined c = alamouti_combine(h, y1, y2, amplitude);
    const double scale = c.signal_gain > 0.0 ? 1.0 / c.signal_gain : 1.0;
    errors += qam.nearest(c.symbols[0] * scale) != i1 ? 1 : 0;
    errors += qam.nearest(c.symbols[1] * scale) != i2 ? 1 : 0;
  }
  return errors;
}

std::uint64_t sm_errors(RngStream& rng, std::uint64_t count, double snr,
                        const SerOptions& options) {
  const Constellation& qam = constellation_for(UncodedScheme::SmMl4);
  const auto pts = qam.points();
  const double amplitude = std::sqrt(snr / 2.0);
  ComplexGaussian gauss;
  std::uint64_t errors = 0;
  for (std::uint64_t n = 0; n < count; ++n) {
    const Eigen::Matrix2cd h = draw_channel(rng, gauss, options);
    const std::size_t i1 = draw_index(rng, qam.size());
    const std::size_t i2 = draw_index(rng, qam.size());
    const Eigen::Vector2cd noise(gauss(rng), gauss(rng));
    const Eigen::Vector2cd y = amplitude * (h * Eigen::Vector2cd(pts[i1], pts[i2])) + noise;
    const auto detected = ml_detect(h, y, qam, amplitude);
    errors += detected[0] != i1 ? 1 : 0;
    errors += detected[1] != i2 ? 1 : 0;
  }
  return errors;
}

template <typename ChunkErrors>
SerPoint run_ser(double snr, std::uint64_t trials, std::uint64_t seed, std::string_view tag,
                 const SerOptions& options, ChunkErrors&& chunk_errors) {
  if (trials < 1) throw ContractViolation("SER simulation needs at least one trial");
  if (!(snr >= 0.0) || !std::isfinite(snr)) {
    throw ContractViolation("SER simulation: snr must be finite and non-negative");
  }
  const std::uint64_t chunks = (trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
  std::vector<std::uint64_t> per_chunk(chunks, 0);
  parallel_for(chunks, options.workers, [&](std::size_t c) {
    RngStream rng = make_stream(seed, tag, c);
    const std::uint64_t first = c * kTrialsPerChunk;
    const std::uint64_t count = std::min(kTrialsPerChunk, trials - first);
    per_chunk[c] = chunk_errors(rng, count, snr, options);
  });
  SerPoint point;
  point.snr_db = snr > 0.0 ? 10.0 * std::log10(snr) : -std::numeric_limits<double>::infinity();
  point.trials = trials;
  point.symbols = 2 * trials;
  for (const std::uint64_t e : per_chunk) point.errors += e;
  point.ser = static_cast<double>(point.errors) / static_cast<double>(point.symbols);
  return point;
}

}  // namespace

Constellation Constellation::square_qam(int order) {
  const int side = static_cast<int>(std::lround(std::sqrt(order)));
  if (order < 4 || side * side != order || (side & (side - 1)) != 0) {
    throw ContractViolation("square_qam: order must be an even power of two, at least 4");
  }
  Constellation c;
  const int axis_bits = static_cast<int>(std::lround(std::log2(side)));
  c.bits_ = 2 * axis_bits;
  const double scale = 1.0 / std::sqrt(2.0 * (order - 1) / 3.0);
  for (int i = 0; i < side; ++i) {
    for (int q = 0; q < side; ++q) {
      const auto gray_i = static_cast<unsigned>(i ^ (i >> 1));
      const auto gray_q = static_cast<unsigned>(q ^ (q >> 1));
      c.points_.emplace_back(scale * (2 * i - side + 1), scale * (2 * q - side + 1));
      c.labels_.push_back((gray_i << axis_bits) | gray_q);
    }
  }
  c.min_distance_ = 2.0 * scale;
  return c;
}

std::size_t Constellation::nearest(std::complex<double> z) const {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < points_.size(); ++k) {
    const double d = std::norm(z - points_[k]);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

std::string_view to_string(UncodedScheme scheme) {
  return scheme == UncodedScheme::Alamouti16 ? "alamouti-16qam" : "sm-ml-4qam";
}

const Constellation& constellation_for(UncodedScheme scheme) {
  static const Constellation qam16 = Constellation::square_qam(16);
  static const Constellation qam4 = Constellation::square_qam(4);
  return scheme == UncodedScheme::Alamouti16 ? qam16 : qam4;
}

double bits_per_channel_use(UncodedScheme scheme) {
  const int bits = constellation_for(scheme).bits_per_symbol();
  // Alamouti: two symbols over two channel uses. SM: two symbols per use.
  return scheme == UncodedScheme::Alamouti16 ? 2.0 * bits / 2.0 : 2.0 * bits;
}

AlamoutiCombined alamouti_combine(const Eigen::Matrix2cd& h, const Eigen::Vector2cd& y1,
                                  const Eigen::Vector2cd& y2, double amplitude) {
  AlamoutiCombined out;
  out.symbols = {0.0, 0.0};
  for (int r = 0; r < 2; ++r) {
    out.symbols[0] += std::conj(h(r, 0)) * y1[r] + h(r, 1) * std::conj(y2[r]);
    out.symbols[1] += std::conj(h(r, 1)) * y1[r] - h(r, 0) * std::conj(y2[r]);
  }
  // Each output combines four unit-variance noise samples with weights whose
  // squared magnitudes sum to ||H||_F^2.
  out.noise_variance = h.squaredNorm();
  out.signal_gain = amplitude * out.noise_variance;
  return out;
}

double ml_metric(const Eigen::Matrix2cd& h, const Eigen::Vector2cd& y,
                 const Constellation& constellation, std::size_t c1, std::size_t c2,
                 double amplitude) {
  const auto pts = constellation.points();
  return (y - amplitude * (h * Eigen::Vector2cd(pts[c1], pts[c2]))).squaredNorm();
}

std::array<std::size_t, 2> ml_detect(const Eigen::Matrix2cd& h, const Eigen::Vector2cd& y,
                                     const Constellation& constellation, double amplitude) {
  const auto pts = constellation.points();
  const std::size_t m = pts.size();
  const Eigen::Vector2cd g0 = amplitude * h.col(0);
  const Eigen::Vector2cd g1 = amplitude * h.col(1);
  std::array<std::size_t, 2> best{0, 0};
  double best_metric = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < m; ++a) {
    const Eigen::Vector2cd residual = y - g0 * pts[a];
    for (std::size_t b = 0; b < m; ++b) {
      const double metric = (residual - g1 * pts[b]).squaredNorm();
      if (metric < best_metric) {
        best_metric = metric;
        best = {a, b};
      }
    }
  }
  return best;
}

SerPoint alamouti_ser(double snr, std::uint64_t trials, std::uint64_t seed,
                      const SerOptions& options) {
  return run_ser(snr, trials, seed, "uncoded-alamouti", options, alamouti_errors);
}

SerPoint sm_ml_ser(double snr, std::uint64_t trials, std::uint64_t seed,
                   const SerOptions& options) {
  return run_ser(snr, trials, seed, "uncoded-sm-ml", options, sm_errors);
}

std::vector<SerPoint> ser_sweep(UncodedScheme scheme, std::span<const double> snr_db,
                                std::uint64_t trials, std::uint64_t seed,
                                const SerOptions& options) {
  std::vector<SerPoint> out;
  out.reserve(snr_db.size());
  for (const double db : snr_db) {
    SerPoint p = scheme == UncodedScheme::Alamouti16
                     ? alamouti_ser(db_to_linear(db), trials, seed, options)
                     : sm_ml_ser(db_to_linear(db), trials, seed, options);
    p.snr_db = db;
    out.push_back(p);
  }
  return out;
}

}  // namespace divmux
