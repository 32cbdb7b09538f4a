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

#include <stdexcept>
#include <string>

namespace qproto {

/// Input was well-formed but too small or degenerate to process, e.g. a
/// sifted key with too few bits to sample. Maps to CLI exit code 3.
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Security bound requested in a regime where the protocol guarantees
/// nothing (money parameter c below the 0.875 threshold).
class InsecureRegime : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace qproto
