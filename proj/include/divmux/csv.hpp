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

#include <concepts>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace divmux {

/// Nine significant digits, shortest form ("%.9g").
std::string format_number(double value);

/// One rendered CSV field. Floating values use format_number, integers are
/// exact, strings are quoted only when they contain a separator.
class Cell {
 public:
  Cell(double v);  // NOLINT(google-explicit-constructor)
  template <std::integral T>
  Cell(T v) : text_(std::to_string(v)) {}  // NOLINT(google-explicit-constructor)
  Cell(std::string_view v);  // NOLINT(google-explicit-constructor)
  Cell(const char* v) : Cell(std::string_view(v)) {}  // NOLINT(google-explicit-constructor)
  Cell(const std::string& v) : Cell(std::string_view(v)) {}  // NOLINT(google-explicit-constructor)

  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

/// Comma-separated table with a header row and LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  /// Throws ContractViolation when the cell count differs from the header.
  void add_row(std::initializer_list<Cell> cells);

  std::size_t rows() const { return rows_; }
  const std::string& str() const { return text_; }

 private:
  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string text_;
};

}  // namespace divmux
