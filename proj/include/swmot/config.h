/* Copyright 2026 The swmot Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SWMOT_CONFIG_H_
#define SWMOT_CONFIG_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "swmot/tracker.h"

namespace swmot {

struct MetricsConfig {
  double iou_threshold = 0.5;
  friend bool operator==(const MetricsConfig&, const MetricsConfig&) = default;
};

// Default input and output locations; command-line flags take precedence.
struct PathsConfig {
  std::string det;
  std::string features;
  std::string heatmaps;
  std::string gt;
  std::string result;
  std::string out;
  friend bool operator==(const PathsConfig&, const PathsConfig&) = default;
};

struct Config {
  TrackerConfig tracker;
  // auto | iou | reference. auto picks reference when features are loaded.
  std::string scorer = "auto";
  MetricsConfig metrics;
  PathsConfig paths;

  void Validate() const;
  friend bool operator==(const Config&, const Config&) = default;
};

// INI text with sections [scg], [tracker], [metrics] and [paths]. Keys
// absent from the file keep their defaults; unknown sections or keys throw
// ConfigError, as do unparsable or out-of-range values.
Config ParseConfig(std::string_view text);
Config LoadConfig(const std::filesystem::path& path);
std::string DumpConfig(const Config& config);

// Environment variable naming the config file used when --config is absent.
inline constexpr const char* kConfigEnvVar = "SWMOT_CONFIG";

}  // namespace swmot

#endif  // SWMOT_CONFIG_H_
