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


#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace qproto::csv {

using Cell = std::variant<double, std::int64_t, std::string>;
using Row = std::map<std::string, Cell>;

/// Rows keyed by column name. Columns are written in byte-wise
/// lexicographic order; every row must carry the same columns.
class Table {
 public:
  void add(Row row);
  const std::vector<Row>& rows() const { return rows_; }
  std::vector<std::string> columns() const;
  void write(std::ostream& out) const;
  std::string str() const;

 private:
  std::vector<Row> rows_;
};

/// Shortest round-trip decimal form with '.' regardless of locale.
std::string format_double(double x);

}  // namespace qproto::csv
