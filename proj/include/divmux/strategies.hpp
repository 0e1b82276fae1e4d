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

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "divmux/channel.hpp"
#include "divmux/errors.hpp"
#include "divmux/linalg.hpp"
#include "divmux/strategy_kind.hpp"

namespace divmux {

/// Accumulated mutual information M_1..M_K of one coded block, in bits per
/// symbol. For MMSE-SIC, `stream_totals` holds each stream's accumulation
/// after the last round (the quantities the min is taken over).
struct MiRecord {
  std::vector<double> accumulated;
  std::vector<double> stream_totals;

  double final_value() const { return accumulated.empty() ? 0.0 : accumulated.back(); }
};

namespace detail {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& h, double snr, const char* who) {
  if (!h.allFinite()) throw ContractViolation(std::string(who) + ": non-finite channel entry");
  if (!(snr >= 0.0) || !std::isfinite(snr)) {
    throw ContractViolation(std::string(who) + ": snr must be finite and non-negative");
  }
}

inline double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

/// 2 log2 of the diagonal of the Cholesky factor of I + rho G^H G. With the
/// columns of G reversed, entry p is log2(1 + SINR) of the stream decoded
/// (n - p)-th from last.
template <typename Derived>
Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxAntennas, 1> cholesky_log_diag(
    const Eigen::MatrixBase<Derived>& g, double rho) {
  const Eigen::Index n = g.cols();
  CMatrix w = CMatrix::Identity(n, n);
  w.noalias() += rho * (g.adjoint() * g);
  Eigen::LLT<CMatrix> llt(w);
  if (llt.info() != Eigen::Success) throw NumericalError("Cholesky factorization failed");
  Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxAntennas, 1> out(n);
  const CMatrix& l = llt.matrixLLT();
  for (Eigen::Index p = 0; p < n; ++p) out[p] = 2.0 * std::log2(l(p, p).real());
  return out;
}

}  // namespace detail

/// log2 det(I + (snr / nT) H H^H), via Cholesky of the smaller Gram matrix.
template <typename Derived>
double mi_optimal(const Eigen::MatrixBase<Derived>& h, double snr) {
  detail::require_finite(h, snr, "mi_optimal");
  const double rho = snr / static_cast<double>(h.cols());
  const auto logs = h.cols() <= h.rows() ? detail::cholesky_log_diag(h, rho)
                                         : detail::cholesky_log_diag(h.adjoint(), rho);
  return std::max(0.0, logs.sum());
}

/// log2(1 + (snr / nT) Tr{H H^H}): the effective scalar channel of an
/// orthogonal transmit-diversity scheme (Alamouti for nT = 2).
template <typename Derived>
double mi_transmit_diversity(const Eigen::MatrixBase<Derived>& h, double snr) {
  detail::require_finite(h, snr, "mi_transmit_diversity");
  return detail::log2_1p(snr / static_cast<double>(h.cols()) * h.squaredNorm());
}

/// MMSE output SINR of stream m (1-based) with streams 1..m-1 cancelled:
/// h_m^H (H_{>m} H_{>m}^H + (nT / snr) I)^{-1} h_m.
template <typename Derived>
double mmse_sic_stream_sinr(const Eigen::MatrixBase<Derived>& h, double snr, int m) {
  detail::require_finite(h, snr, "mmse_sic_stream_sinr");
  const auto n_t = static_cast<int>(h.cols());
  if (m < 1 || m > n_t) throw ContractViolation("mmse_sic_stream_sinr: stream index out of range");
  if (snr == 0.0) return 0.0;
  const Eigen::Index n_r = h.rows();
  const CVector col = h.col(m - 1);
  CMatrix a = (static_cast<double>(n_t) / snr) * CMatrix::Identity(n_r, n_r);
  if (m < n_t) {
    const CMatrix rest = h.rightCols(n_t - m);
    a.noalias() += rest * rest.adjoint();
  }
  const Eigen::LLT<CMatrix> llt(a);
  if (llt.info() != Eigen::Success) throw NumericalError("MMSE filter factorization failed");
  return std::max(0.0, (col.adjoint() * llt.solve(col)).value().real());
}

/// log2(1 + SINR_m) for every stream m = 1..nT from a single Cholesky
/// factorization (chain rule of the log-det). Agrees with
/// mmse_sic_stream_sinr and is exact for SINRs far below one.
template <typename Derived>
Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxAntennas, 1> mmse_sic_stream_mi(
    const Eigen::MatrixBase<Derived>& h, double snr) {
  detail::require_finite(h, snr, "mmse_sic_stream_mi");
  const double rho = snr / static_cast<double>(h.cols());
  const auto logs = detail::cholesky_log_diag(h.rowwise().reverse(), rho);
  return logs.reverse().cwiseMax(0.0);
}

/// nT * min_m sum_{l < rounds} mean_i log2(1 + SINR_{i,m}(l)).
double mi_mmse_sic_aggregate(const ChannelBlock& block, int rounds, double snr);

/// Per-round accumulated MI of `strategy` over `block`. NonMimo requires a
/// single-transmit-antenna block; throws ConfigError otherwise.
MiRecord mi_per_round(StrategyKind strategy, const ChannelBlock& block, double snr);

}  // namespace divmux
