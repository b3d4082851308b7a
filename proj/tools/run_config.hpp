// Copyright 2026 AnnealForge contributors
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
#include <string>

#include <json.hpp>

namespace annealforge::cli {

/// The fully-resolved parameter record of one command invocation.  Every
/// output file carries its hash so a run can be matched to its exact
/// configuration; rerunning with the same record reproduces the outputs
/// byte for byte.
class RunConfig {
 public:
  RunConfig(std::string command, nlohmann::json values);

  const std::string& command() const { return command_; }
  const nlohmann::json& values() const { return values_; }

  /// FNV-1a over the canonical serialization, as 16 hex digits.
  std::string hash() const;

  /// Writes {command, run_config_hash, config} to <dir>/meta.json.
  void write_meta(const std::string& out_dir) const;

 private:
  std::string command_;
  nlohmann::json values_;
};

/// ANNEALFORGE_SEED, when set, overrides any configured seed.
std::uint64_t apply_seed_env(std::uint64_t seed);

}  // namespace annealforge::cli
