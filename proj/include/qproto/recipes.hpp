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
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qproto/csv.hpp"

// Built-in experiment presets and the TOML configuration they accept.
namespace qproto::recipes {

/// Bad recipe name, parameter or config file. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RecipeInfo {
  std::string name;
  std::string protocol;
  std::string anchor;  // the figure or table it regenerates
  std::string description;
  std::string trials_meaning;  // what --trials overrides
  std::map<std::string, double> defaults;
};

const std::vector<RecipeInfo>& all_recipes();
const RecipeInfo& find_recipe(const std::string& name);
/// One line per recipe: name, protocol, anchor, description.
std::string list_recipes();

struct ExperimentSpec {
  std::string protocol;
  std::string recipe;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> trials;
  unsigned threads = 0;  // 0 = all cores
  std::string out;
  std::map<std::string, double> params;  // overrides of the recipe defaults
};

/// Reads `seed`, `trials`, `threads`, `protocol`, `recipe`, `out` and a
/// `[params]` table from a TOML file into `spec`. Throws ConfigError.
void apply_config_file(const std::filesystem::path& path, ExperimentSpec& spec);

struct ExperimentResult {
  csv::Table table;
  std::string summary;
};

/// Runs the recipe. Throws ConfigError for unknown recipes, protocol
/// mismatches or unknown parameters; DegenerateInput propagates.
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace qproto::recipes
