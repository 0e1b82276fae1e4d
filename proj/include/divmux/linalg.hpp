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

#include <Eigen/Dense>

namespace divmux {

/// Upper bound on antenna counts. Matrices up to this size live on the stack.
inline constexpr int kMaxAntennas = 8;

template <typename Scalar>
using BasicCMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::ColMajor, kMaxAntennas, kMaxAntennas>;
template <typename Scalar>
using BasicCVector =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxAntennas, 1>;

using CMatrix = BasicCMatrix<double>;
using CVector = BasicCVector<double>;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace divmux
