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

#include "divmux/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "divmux/errors.hpp"
#include "divmux/linalg.hpp"

namespace divmux {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr std::array<double, 12> kTuDelaysUs = {0.0, 0.1, 0.3, 0.5, 0.8, 1.1,
                                                1.3, 1.7, 2.3, 3.1, 3.2, 5.0};
constexpr std::array<double, 12> kTuPowersDb = {-4.0, -3.0, 0.0,  -2.6, -3.0,  -5.0,
                                                -7.0, -5.0, -6.5, -8.6, -11.0, -10.0};

}  // namespace

PowerDelayProfile::PowerDelayProfile(std::vector<Tap> taps) : taps_(std::move(taps)) {
  if (taps_.empty()) throw ConfigError("power delay profile has no taps");
  double total = 0.0;
  for (std::size_t j = 0; j < taps_.size(); ++j) {
    const Tap& tap = taps_[j];
    if (!(tap.delay_s >= 0.0) || !std::isfinite(tap.delay_s)) {
      throw ConfigError("tap delays must be finite and non-negative");
    }
    if (j > 0 && !(tap.delay_s > taps_[j - 1].delay_s)) {
      throw ConfigError("tap delays must be strictly increasing");
    }
    if (!(tap.power > 0.0) || !std::isfinite(tap.power)) {
      throw ConfigError("tap powers must be finite and positive");
    }
    total += tap.power;
  }
  for (Tap& tap : taps_) tap.power /= total;
}

PowerDelayProfile PowerDelayProfile::from_db(std::span<const double> delays_us,
                                             std::span<const double> powers_db) {
  if (delays_us.size() != powers_db.size()) {
    throw ConfigError("profile delay and power lists differ in length");
  }
  std::vector<Tap> taps;
  taps.reserve(delays_us.size());
  for (std::size_t j = 0; j < delays_us.size(); ++j) {
    taps.push_back({delays_us[j] * 1e-6, db_to_linear(powers_db[j])});
  }
  return PowerDelayProfile(std::move(taps));
}

double PowerDelayProfile::mean_delay() const {
  double m = 0.0;
  for (const Tap& tap : taps_) m += tap.power * tap.delay_s;
  return m;
}

double PowerDelayProfile::rms_delay_spread() const {
  const double m = mean_delay();
  double v = 0.0;
  for (const Tap& tap : taps_) v += tap.power * (tap.delay_s - m) * (tap.delay_s - m);
  return std::sqrt(v);
}

std::complex<double> PowerDelayProfile::frequency_correlation(double df_hz) const {
  std::complex<double> r = 0.0;
  for (const Tap& tap : taps_) r += tap.power * std::polar(1.0, kTwoPi * df_hz * tap.delay_s);
  return r;
}

PowerDelayProfile build_tu_profile() {
  return PowerDelayProfile::from_db(kTuDelaysUs, kTuPowersDb);
}

PowerDelayProfile build_flat_profile() { return PowerDelayProfile({Tap{0.0, 1.0}}); }

std::map<std::string, PowerDelayProfile> parse_profile_catalog(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("profile catalog is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("profile catalog must be a JSON object");
  std::map<std::string, PowerDelayProfile> catalog;
  for (const auto& [name, rays] : doc.items()) {
    if (!rays.is_array()) throw ConfigError("profile '" + name + "' must be an array of rays");
    std::vector<double> delays;
    std::vector<double> powers;
    for (const auto& ray : rays) {
      if (!ray.is_object() || !ray.contains("delay_us") || !ray.contains("power_db") ||
          !ray["delay_us"].is_number() || !ray["power_db"].is_number()) {
        throw ConfigError("profile '" + name + "': each ray needs numeric delay_us and power_db");
      }
      delays.push_back(ray["delay_us"].get<double>());
      powers.push_back(ray["power_db"].get<double>());
    }
    catalog.emplace(name, PowerDelayProfile::from_db(delays, powers));
  }
  return catalog;
}

std::map<std::string, PowerDelayProfile> load_profile_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open profile catalog " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_profile_catalog(text.str());
}

PowerDelayProfile resolve_profile(const SystemConfig& config) {
  if (config.profile == "TU12") return build_tu_profile();
  if (config.profile == "FLAT") return build_flat_profile();
  if (config.profile_catalog) {
    auto catalog = load_profile_catalog(*config.profile_catalog);
    if (auto it = catalog.find(config.profile); it != catalog.end()) return it->second;
  }
  throw ConfigError("unknown power delay profile '" + config.profile + "'");
}

void DopplerSpec::validate() const {
  if (!(max_doppler_hz > 0.0) || !std::isfinite(max_doppler_hz)) {
    throw ConfigError("max Doppler frequency must be positive");
  }
  if (generator_order < 8) throw ConfigError("generator order must be at least 8");
}

SumOfSinusoids::SumOfSinusoids(const DopplerSpec& spec, RngStream& rng)
    : omega_(2 * static_cast<std::size_t>(spec.generator_order)),
      phase_(omega_.size()),
      order_(spec.generator_order),
      scale_(1.0 / std::sqrt(static_cast<double>(spec.generator_order))) {
  spec.validate();
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  const double w_max = kTwoPi * spec.max_doppler_hz;
  for (std::size_t n = 0; n < omega_.size(); ++n) {
    omega_[n] = w_max * std::cos(angle(rng));
    phase_[n] = angle(rng);
  }
}

std::complex<double> SumOfSinusoids::operator()(double t) const {
  double re = 0.0;
  double im = 0.0;
  for (int n = 0; n < order_; ++n) re += std::cos(omega_[n] * t + phase_[n]);
  for (std::size_t n = order_; n < omega_.size(); ++n) im += std::cos(omega_[n] * t + phase_[n]);
  return {scale_ * re, scale_ * im};
}

void SumOfSinusoids::sample(std::span<const double> times,
                            std::span<std::complex<double>> out) const {
  if (out.size() != times.size()) throw ContractViolation("sample: output size mismatch");
  for (std::size_t k = 0; k < times.size(); ++k) out[k] = (*this)(times[k]);
}

void SumOfSinusoids::sample_grid(std::span<const double> offsets, std::span<const double> local,
                                 std::span<std::complex<double>> out) const {
  const std::size_t n_local = local.size();
  if (out.size() != offsets.size() * n_local) {
    throw ContractViolation("sample_grid: output size mismatch");
  }
  std::vector<double> re(out.size(), 0.0);
  std::vector<double> im(out.size(), 0.0);
  std::vector<std::complex<double>> local_phasor(n_local);
  for (std::size_t n = 0; n < omega_.size(); ++n) {
    const double w = omega_[n];
    for (std::size_t l = 0; l < n_local; ++l) local_phasor[l] = std::polar(1.0, w * local[l]);
    std::vector<double>& rail = n < static_cast<std::size_t>(order_) ? re : im;
    for (std::size_t o = 0; o < offsets.size(); ++o) {
      const std::complex<double> base = std::polar(1.0, w * offsets[o] + phase_[n]);
      double* dst = rail.data() + o * n_local;
      for (std::size_t l = 0; l < n_local; ++l) dst[l] += (base * local_phasor[l]).real();
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = {scale_ * re[k], scale_ * im[k]};
}

std::vector<std::complex<double>> generate_tap_gains(const DopplerSpec& spec,
                                                     std::span<const double> sample_times,
                                                     RngStream& rng) {
  if (!std::is_sorted(sample_times.begin(), sample_times.end())) {
    throw ContractViolation("generate_tap_gains: sample times must be non-decreasing");
  }
  if (sample_times.empty()) return {};
  const SumOfSinusoids process(spec, rng);
  std::vector<std::complex<double>> gains(sample_times.size());
  process.sample(sample_times, gains);
  return gains;
}

Eigen::VectorXcd frequency_response(const PowerDelayProfile& profile,
                                    std::span<const std::complex<double>> tap_gains,
                                    std::span<const double> tone_freqs_hz) {
  if (tap_gains.size() != profile.size()) {
    throw ContractViolation("frequency_response: expected " + std::to_string(profile.size()) +
                            " tap gains, got " + std::to_string(tap_gains.size()));
  }
  Eigen::VectorXcd response = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(tone_freqs_hz.size()));
  const auto taps = profile.taps();
  for (std::size_t k = 0; k < tone_freqs_hz.size(); ++k) {
    std::complex<double> h = 0.0;
    for (std::size_t j = 0; j < taps.size(); ++j) {
      h += std::sqrt(taps[j].power) * tap_gains[j] *
           std::polar(1.0, -kTwoPi * tone_freqs_hz[k] * taps[j].delay_s);
    }
    response[static_cast<Eigen::Index>(k)] = h;
  }
  return response;
}

void ToneAllocation::validate() const {
  if (allocated.empty()) throw ConfigError("tone allocation is empty");
  for (std::size_t i = 0; i < allocated.size(); ++i) {
    if (allocated[i] < 0 || allocated[i] >= usable_tones) {
      throw ConfigError("allocated tone index out of range");
    }
    if (i > 0 && allocated[i] <= allocated[i - 1]) {
      throw ConfigError("allocated tone indices must be strictly increasing");
    }
  }
  if (!(tone_spacing_hz > 0.0)) throw ConfigError("tone spacing must be positive");
}

std::vector<double> ToneAllocation::frequencies_hz() const {
  std::vector<double> f(allocated.size());
  std::transform(allocated.begin(), allocated.end(), f.begin(),
                 [this](int i) { return i * tone_spacing_hz; });
  return f;
}

ToneAllocation interspersed_allocation(const SystemConfig& config) {
  ToneAllocation a;
  a.usable_tones = config.usable_tones;
  a.tone_spacing_hz = config.tone_spacing_hz;
  const int stride = config.usable_tones / config.rb_tones;
  for (int i = 0; i < config.rb_tones; ++i) a.allocated.push_back(i * stride);
  a.validate();
  return a;
}

ChannelBlock::ChannelBlock(int rounds, int slots_per_round, int n_r, int n_t)
    : rounds_(rounds),
      slots_(slots_per_round),
      n_r_(n_r),
      n_t_(n_t),
      data_(static_cast<std::size_t>(rounds) * slots_per_round * n_r * n_t) {
  if (rounds < 1 || slots_per_round < 1 || n_r < 1 || n_t < 1) {
    throw ContractViolation("ChannelBlock: all dimensions must be positive");
  }
}

ChannelBlock ChannelBlock::leading_columns(int count) const {
  if (count < 1 || count > n_t_) throw ContractViolation("leading_columns: bad column count");
  ChannelBlock out(rounds_, slots_, n_r_, count);
  for (int k = 0; k < rounds_; ++k) {
    for (int i = 0; i < slots_; ++i) out.matrix(k, i) = matrix(k, i).leftCols(count);
  }
  return out;
}

ChannelModel::ChannelModel(const SystemConfig& config, PowerDelayProfile profile,
                           ToneAllocation allocation)
    : profile_(std::move(profile)),
      allocation_(std::move(allocation)),
      doppler_{config.doppler_hz(), config.generator_order},
      n_r_(config.n_r),
      n_t_(config.n_t) {
  doppler_.validate();
  allocation_.validate();
  for (int s = 0; s < config.symbols_per_rb; ++s) {
    symbol_times_.push_back((s + 0.5) * config.symbol_duration_s);
  }
  for (int k = 0; k < config.harq_rounds; ++k) {
    round_offsets_.push_back(k * config.round_spacing_ms * 1e-3);
  }
  const auto freqs = allocation_.frequencies_hz();
  const auto taps = profile_.taps();
  steering_.resize(static_cast<Eigen::Index>(taps.size()), static_cast<Eigen::Index>(freqs.size()));
  for (std::size_t j = 0; j < taps.size(); ++j) {
    for (std::size_t f = 0; f < freqs.size(); ++f) {
      steering_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(f)) =
          std::sqrt(taps[j].power) * std::polar(1.0, -kTwoPi * freqs[f] * taps[j].delay_s);
    }
  }
}

ChannelBlock ChannelModel::draw(RngStream& rng) const {
  const int rounds = static_cast<int>(round_offsets_.size());
  const int symbols = static_cast<int>(symbol_times_.size());
  const int tones = static_cast<int>(allocation_.allocated.size());
  const auto n_taps = static_cast<Eigen::Index>(profile_.size());
  const Eigen::Index n_times = static_cast<Eigen::Index>(rounds) * symbols;

  ChannelBlock block(rounds, symbols * tones, n_r_, n_t_);
  const std::uint64_t base = rng();
  Eigen::MatrixXcd gains(n_times, n_taps);
  std::vector<std::complex<double>> samples(static_cast<std::size_t>(n_times));
  for (int r = 0; r < n_r_; ++r) {
    for (int t = 0; t < n_t_; ++t) {
      RngStream pair_rng(derive_seed(base, static_cast<std::uint64_t>(r * kMaxAntennas + t)));
      for (Eigen::Index j = 0; j < n_taps; ++j) {
        const SumOfSinusoids process(doppler_, pair_rng);
        process.sample_grid(round_offsets_, symbol_times_, samples);
        gains.col(j) = Eigen::Map<const Eigen::VectorXcd>(samples.data(), n_times);
      }
      const Eigen::MatrixXcd response = gains * steering_;  // times x tones
      for (int k = 0; k < rounds; ++k) {
        for (int s = 0; s < symbols; ++s) {
          for (int f = 0; f < tones; ++f) {
            block.matrix(k, s * tones + f)(r, t) = response(k * symbols + s, f);
          }
        }
      }
    }
  }
  return block;
}

ChannelBlock generate_block(const SystemConfig& config, const ToneAllocation& allocation,
                            RngStream& rng) {
  return ChannelModel(config, resolve_profile(config), allocation).draw(rng);
}

std::vector<std::complex<double>> empirical_autocorrelation(const DopplerSpec& spec,
                                                            std::span<const double> lags_s,
                                                            std::size_t processes,
                                                            RngStream& rng) {
  if (processes == 0) throw ContractViolation("empirical_autocorrelation: no processes");
  std::vector<std::complex<double>> acc(lags_s.size(), 0.0);
  for (std::size_t p = 0; p < processes; ++p) {
    const SumOfSinusoids c(spec, rng);
    const std::complex<double> c0 = c(0.0);
    for (std::size_t k = 0; k < lags_s.size(); ++k) acc[k] += c0 * std::conj(c(lags_s[k]));
  }
  for (auto& a : acc) a /= static_cast<double>(processes);
  return acc;
}

std::complex<double> empirical_autocorrelation(const DopplerSpec& spec, double lag_s,
                                               std::size_t processes, RngStream& rng) {
  const double lags[] = {lag_s};
  return empirical_autocorrelation(spec, lags, processes, rng).front();
}

std::vector<std::complex<double>> empirical_frequency_correlation(
    const PowerDelayProfile& profile, std::span<const double> df_hz, std::size_t realizations,
    RngStream& rng) {
  if (realizations == 0) throw ContractViolation("empirical_frequency_correlation: no draws");
  const auto taps = profile.taps();
  Eigen::MatrixXcd rotation(static_cast<Eigen::Index>(df_hz.size()),
                            static_cast<Eigen::Index>(taps.size()));
  for (std::size_t k = 0; k < df_hz.size(); ++k) {
    for (std::size_t j = 0; j < taps.size(); ++j) {
      rotation(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
          std::polar(1.0, -kTwoPi * df_hz[k] * taps[j].delay_s);
    }
  }
  ComplexGaussian gauss;
  Eigen::VectorXcd c(static_cast<Eigen::Index>(taps.size()));
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(df_hz.size()));
  for (std::size_t n = 0; n < realizations; ++n) {
    for (std::size_t j = 0; j < taps.size(); ++j) {
      c[static_cast<Eigen::Index>(j)] = std::sqrt(taps[j].power) * gauss(rng);
    }
    const std::complex<double> h0 = c.sum();
    acc += h0 * (rotation * c).conjugate();
  }
  acc /= static_cast<double>(realizations);
  return {acc.data(), acc.data() + acc.size()};
}

std::complex<double> empirical_frequency_correlation(const PowerDelayProfile& profile,
                                                     double df_hz, std::size_t realizations,
                                                     RngStream& rng) {
  const double dfs[] = {df_hz};
  return empirical_frequency_correlation(profile, dfs, realizations, rng).front();
}

}  // namespace divmux
