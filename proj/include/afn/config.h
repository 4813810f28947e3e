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

// Experiment configuration. The text form is a JSON object whose keys are
// the field names below; missing keys keep their defaults and unknown keys
// are rejected.

#ifndef AFN_CONFIG_H_
#define AFN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "afn/params.h"

namespace afn {

struct ExperimentConfig {
  std::size_t n = 1024;
  std::size_t d = 64;
  double c = 2.0;
  double eps = 0.0;
  std::uint64_t seed = 1;
  // 0 picks the command default: 1000 queries for bench, 100 seeds for
  // attack, 1 game for duel.
  std::size_t trials = 0;
  double const_N = 4.0;
  double const_k = 1.0;
  double const_m = 2.0;
  std::size_t c_N = 8;
  std::optional<std::size_t> N;
  std::optional<std::size_t> k;
  std::optional<std::size_t> m;
  std::string oracle = "exact";  // exact | perturbed
  std::string dataset = "gaussian";
  bool shortcut = true;
  std::string output;

  // attack
  std::string mode = "certified";  // certified | paper
  std::optional<double> x;
  std::string ranking = "absolute";  // absolute | signed

  // duel
  std::string target = "robust";  // robust | oblivious
  std::string strategy = "whitebox_attack";
  std::size_t rounds = 200;
  std::string transcript;

  ParamOverrides overrides() const;
  std::size_t trials_or(std::size_t fallback) const { return trials != 0 ? trials : fallback; }

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

nlohmann::json config_to_json(const ExperimentConfig& config);
// Throws InputError on unknown keys or wrongly typed values.
ExperimentConfig config_from_json(const nlohmann::json& j);

std::string config_to_text(const ExperimentConfig& config);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace afn

#endif  // AFN_CONFIG_H_
