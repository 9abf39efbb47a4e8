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

#include "swmot/config.h"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "swmot/errors.h"
#include "swmot/motio.h"

namespace swmot {
namespace {

double ParseReal(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  return v;
}

int ParseInt(const std::string& key, const std::string& text) {
  int v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
  return v;
}

struct Field {
  std::string section;
  std::string key;
  std::function<std::string(const Config&)> get;
  std::function<void(Config&, const std::string& name, const std::string&)> set;
};

template <typename Getter>
Field RealField(std::string section, std::string key, Getter member) {
  return {section, key,
          [member](const Config& c) {
            Config copy = c;
            return FormatNumber(member(copy));
          },
          [member](Config& c, const std::string& name, const std::string& v) {
            member(c) = ParseReal(name, v);
          }};
}

template <typename Getter>
Field IntField(std::string section, std::string key, Getter member) {
  return {section, key,
          [member](const Config& c) {
            Config copy = c;
            return std::to_string(member(copy));
          },
          [member](Config& c, const std::string& name, const std::string& v) {
            member(c) = ParseInt(name, v);
          }};
}

template <typename Getter>
Field StringField(std::string section, std::string key, Getter member) {
  return {section, key,
          [member](const Config& c) {
            Config copy = c;
            return member(copy);
          },
          [member](Config& c, const std::string&, const std::string& v) {
            member(c) = v;
          }};
}

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = {
      RealField("scg", "alpha", [](Config& c) -> double& { return c.tracker.scg.alpha; }),
      RealField("scg", "beta", [](Config& c) -> double& { return c.tracker.scg.beta; }),
      RealField("scg", "edge_iou_threshold",
                [](Config& c) -> double& { return c.tracker.scg.edge_iou_threshold; }),
      IntField("scg", "exact_component_limit",
               [](Config& c) -> int& { return c.tracker.scg.exact_component_limit; }),
      StringField("tracker", "scorer", [](Config& c) -> std::string& { return c.scorer; }),
      RealField("tracker", "gate", [](Config& c) -> double& { return c.tracker.gate; }),
      RealField("tracker", "decay", [](Config& c) -> double& { return c.tracker.decay; }),
      RealField("tracker", "drop_threshold",
                [](Config& c) -> double& { return c.tracker.drop_threshold; }),
      RealField("tracker", "predict_threshold",
                [](Config& c) -> double& { return c.tracker.predict_threshold; }),
      IntField("tracker", "max_lost_frames",
               [](Config& c) -> int& { return c.tracker.max_lost_frames; }),
      RealField("tracker", "init_threshold",
                [](Config& c) -> double& { return c.tracker.init_threshold; }),
      RealField("metrics", "iou_threshold",
                [](Config& c) -> double& { return c.metrics.iou_threshold; }),
      StringField("paths", "det", [](Config& c) -> std::string& { return c.paths.det; }),
      StringField("paths", "features",
                  [](Config& c) -> std::string& { return c.paths.features; }),
      StringField("paths", "heatmaps",
                  [](Config& c) -> std::string& { return c.paths.heatmaps; }),
      StringField("paths", "gt", [](Config& c) -> std::string& { return c.paths.gt; }),
      StringField("paths", "result", [](Config& c) -> std::string& { return c.paths.result; }),
      StringField("paths", "out", [](Config& c) -> std::string& { return c.paths.out; }),
  };
  return fields;
}

}  // namespace

void Config::Validate() const {
  tracker.Validate();
  if (scorer != "auto" && scorer != "iou" && scorer != "reference") {
    throw ConfigError("tracker.scorer must be auto, iou or reference");
  }
  if (!(metrics.iou_threshold > 0.0 && metrics.iou_threshold <= 1.0)) {
    throw ConfigError("metrics.iou_threshold must be in (0,1]");
  }
}

Config ParseConfig(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  Config config;
  for (const auto& [section, entries] : tree) {
    if (entries.empty() && !entries.data().empty()) {
      throw ConfigError("key '" + section + "' outside of a section");
    }
    for (const auto& [key, value] : entries) {
      const std::string name = section + "." + key;
      const auto it = std::find_if(Fields().begin(), Fields().end(), [&](const Field& f) {
        return f.section == section && f.key == key;
      });
      if (it == Fields().end()) throw ConfigError("unknown config key '" + name + "'");
      it->set(config, name, value.data());
    }
  }
  config.Validate();
  return config;
}

Config LoadConfig(const std::filesystem::path& path) {
  return ParseConfig(ReadTextFile(path));
}

std::string DumpConfig(const Config& config) {
  std::ostringstream out;
  std::string section;
  for (const Field& f : Fields()) {
    if (f.section != section) {
      if (!section.empty()) out << '\n';
      section = f.section;
      out << '[' << section << "]\n";
    }
    const std::string value = f.get(config);
    out << f.key << (value.empty() ? " =" : " = " + value) << '\n';
  }
  return out.str();
}

}  // namespace swmot
