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

#include "divmux/csv.hpp"

#include <cstdio>

#include "divmux/errors.hpp"

namespace divmux {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

Cell::Cell(double v) : text_(format_number(v)) {}

Cell::Cell(std::string_view v) {
  if (v.find_first_of(",\"\n") == std::string_view::npos) {
    text_ = v;
    return;
  }
  text_ = "\"";
  for (const char c : v) {
    if (c == '"') text_ += '"';
    text_ += c;
  }
  text_ += '"';
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void CsvTable::add_row(std::initializer_list<Cell> cells) {
  if (cells.size() != columns_) {
    throw ContractViolation("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(columns_));
  }
  bool first = true;
  for (const Cell& c : cells) {
    if (!first) text_ += ',';
    text_ += c.text();
    first = false;
  }
  text_ += '\n';
  ++rows_;
}

}  // namespace divmux
