// Copyright 2026 The AFN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "afn/config.h"

#include <fstream>
#include <sstream>
#include <type_traits>

#include "afn/error.h"

namespace afn {

using nlohmann::json;

ParamOverrides ExperimentConfig::overrides() const {
  ParamOverrides o;
  o.N = N;
  o.k = k;
  o.m = m;
  o.const_N = const_N;
  o.const_k = const_k;
  o.const_m = const_m;
  o.c_N = c_N;
  o.shortcut = shortcut;
  return o;
}

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
T read_value(const json& v, const char* key) {
  if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
    if (!v.is_number_unsigned()) {
      throw InputError(std::string("config key '") + key + "' must be a non-negative integer");
    }
  }
  return v.get<T>();
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  out = read_value<T>(j.at(key), key);
}

template <typename T>
void read_field(const json& j, const char* key, std::optional<T>& out) {
  const json& v = j.at(key);
  if (v.is_null()) {
    out.reset();
  } else {
    out = read_value<T>(v, key);
  }
}

}  // namespace

json config_to_json(const ExperimentConfig& c) {
  return json{{"n", c.n},
              {"d", c.d},
              {"c", c.c},
              {"eps", c.eps},
              {"seed", c.seed},
              {"trials", c.trials},
              {"const_N", c.const_N},
              {"const_k", c.const_k},
              {"const_m", c.const_m},
              {"c_N", c.c_N},
              {"N", optional_json(c.N)},
              {"k", optional_json(c.k)},
              {"m", optional_json(c.m)},
              {"oracle", c.oracle},
              {"dataset", c.dataset},
              {"shortcut", c.shortcut},
              {"output", c.output},
              {"mode", c.mode},
              {"x", optional_json(c.x)},
              {"ranking", c.ranking},
              {"target", c.target},
              {"strategy", c.strategy},
              {"rounds", c.rounds},
              {"transcript", c.transcript}};
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  ExperimentConfig c;
  const json known = config_to_json(c);
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw InputError("unknown config key '" + key + "'");
  }
  json merged = known;
  merged.update(j);
  try {
    read_field(merged, "n", c.n);
    read_field(merged, "d", c.d);
    read_field(merged, "c", c.c);
    read_field(merged, "eps", c.eps);
    read_field(merged, "seed", c.seed);
    read_field(merged, "trials", c.trials);
    read_field(merged, "const_N", c.const_N);
    read_field(merged, "const_k", c.const_k);
    read_field(merged, "const_m", c.const_m);
    read_field(merged, "c_N", c.c_N);
    read_field(merged, "N", c.N);
    read_field(merged, "k", c.k);
    read_field(merged, "m", c.m);
    read_field(merged, "oracle", c.oracle);
    read_field(merged, "dataset", c.dataset);
    read_field(merged, "shortcut", c.shortcut);
    read_field(merged, "output", c.output);
    read_field(merged, "mode", c.mode);
    read_field(merged, "x", c.x);
    read_field(merged, "ranking", c.ranking);
    read_field(merged, "target", c.target);
    read_field(merged, "strategy", c.strategy);
    read_field(merged, "rounds", c.rounds);
    read_field(merged, "transcript", c.transcript);
  } catch (const json::exception& e) {
    throw InputError(std::string("bad config value: ") + e.what());
  }
  return c;
}

std::string config_to_text(const ExperimentConfig& config) {
  return config_to_json(config).dump(2) + "\n";
}

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("config is not valid JSON: ") + e.what(), e.byte);
  }
  return config_from_json(j);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

}  // namespace afn
