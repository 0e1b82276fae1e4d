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

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace divmux {

using RngStream = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// FNV-1a; stable across platforms so experiment tags map to fixed streams.
std::uint64_t tag_hash(std::string_view tag);

/// Seed of substream `index` of experiment `tag` under `master`.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index);
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

inline RngStream make_stream(std::uint64_t master, std::string_view tag, std::uint64_t index) {
  return RngStream(derive_seed(master, tag, index));
}

/// Circularly symmetric complex Gaussian with unit variance.
class ComplexGaussian {
 public:
  std::complex<double> operator()(RngStream& rng) {
    const double re = normal_(rng);
    const double im = normal_(rng);
    return {re, im};
  }

 private:
  std::normal_distribution<double> normal_{0.0, 0.70710678118654752440};
};

}  // namespace divmux
