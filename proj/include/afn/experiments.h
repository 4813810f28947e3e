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

// Experiment drivers behind the CLI. Each returns a JSON report; see
// docs/report_schema.json. Everything outside "timings" is a deterministic
// function of the config.

#ifndef AFN_EXPERIMENTS_H_
#define AFN_EXPERIMENTS_H_

#include <ostream>

#include <json.hpp>

#include "afn/config.h"

namespace afn {

inline constexpr int kReportSchemaVersion = 1;

// Robust index on the configured dataset, `trials` random queries scored
// against brute force. Gate: at least 99% of answers within c (1 + eps).
nlohmann::json run_bench(const ExperimentConfig& config);

// White-box attack on the oblivious baseline over the attack dataset, one
// fresh set of projection vectors per seed. Gate: at least 95% of seeds
// succeed with ratio >= 10, and every success has only copies of p- in its
// candidate slots.
nlohmann::json run_attack(const ExperimentConfig& config);

// Adaptive game against the robust or oblivious index. Gate: at most one
// violation per 4000 rounds, rounded up. Writes JSON lines to `transcript`
// when it is not null.
nlohmann::json run_duel(const ExperimentConfig& config, std::ostream* transcript);

bool gate_passed(const nlohmann::json& report);

}  // namespace afn

#endif  // AFN_EXPERIMENTS_H_
