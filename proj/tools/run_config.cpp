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

#include "run_config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace annealforge::cli {

RunConfig::RunConfig(std::string command, nlohmann::json values)
    : command_(std::move(command)), values_(std::move(values)) {}

std::string RunConfig::hash() const {
  const std::string canonical = command_ + "\n" + values_.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void RunConfig::write_meta(const std::string& out_dir) const {
  nlohmann::json meta{{"command", command_},
                      {"run_config_hash", hash()},
                      {"config", values_}};
  const std::string path = out_dir + "/meta.json";
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << meta.dump(2) << "\n";
}

std::uint64_t apply_seed_env(std::uint64_t seed) {
  const char* env = std::getenv("ANNEALFORGE_SEED");
  if (env == nullptr || *env == '\0') return seed;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0') {
    throw std::runtime_error("ANNEALFORGE_SEED must be an unsigned integer");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace annealforge::cli
