// Copyright 2026 The qproto-bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qproto/csv.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qproto::csv {
namespace {

std::string escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return escape(std::get<std::string>(cell));
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void Table::add(Row row) {
  if (!rows_.empty()) {
    const auto& first = rows_.front();
    bool same = first.size() == row.size();
    for (auto a = first.begin(), b = row.cbegin(); same && a != first.end(); ++a, ++b) {
      same = a->first == b->first;
    }
    if (!same) throw std::invalid_argument("csv row columns differ from the header");
  }
  rows_.push_back(std::move(row));
}

std::vector<std::string> Table::columns() const {
  std::vector<std::string> cols;
  if (rows_.empty()) return cols;
  for (const auto& [name, _] : rows_.front()) cols.push_back(name);
  return cols;
}

void Table::write(std::ostream& out) const {
  const auto cols = columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << escape(cols[i]);
  out << '\n';
  for (const auto& row : rows_) {
    std::size_t i = 0;
    for (const auto& [_, cell] : row) out << (i++ ? "," : "") << render(cell);
    out << '\n';
  }
}

std::string Table::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace qproto::csv
