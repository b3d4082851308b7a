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

#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace annealforge::cli {

/// CLI11 config formatter for flat JSON objects: {"flag": value, ...}.
/// Command-line flags take precedence over config values.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool,
                        std::string) const override {
    nlohmann::json j = nlohmann::json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string name = opt->get_lnames().front();
      if (!opt->results().empty()) {
        j[name] = opt->results().size() == 1 ? nlohmann::json(opt->results().front())
                                             : nlohmann::json(opt->results());
      } else if (default_also) {
        j[name] = opt->get_default_str();
      }
    }
    return j.dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      input >> j;
    } catch (const std::exception& e) {
      throw CLI::FileError(std::string("bad JSON config: ") + e.what());
    }
    if (!j.is_object()) {
      throw CLI::FileError("config must be a flat JSON object");
    }
    std::vector<CLI::ConfigItem> items;
    for (auto it = j.begin(); it != j.end(); ++it) {
      CLI::ConfigItem item;
      item.name = it.key();
      const nlohmann::json& v = it.value();
      if (v.is_array()) {
        for (const auto& elem : v) {
          item.inputs.push_back(elem.is_string() ? elem.get<std::string>()
                                                 : elem.dump());
        }
      } else if (v.is_string()) {
        item.inputs.push_back(v.get<std::string>());
      } else {
        item.inputs.push_back(v.dump());
      }
      items.push_back(std::move(item));
    }
    return items;
  }
};

}  // namespace annealforge::cli
