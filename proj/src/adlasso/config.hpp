/*
Copyright 2026 The adlasso Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <string>

#include "adlasso/concentration.hpp"
#include "adlasso/harness.hpp"
#include "adlasso/io.hpp"

namespace adlasso {

// JSON configs for the batch entry points. Unknown keys are rejected with
// kInvalidArgument; every parser also returns the resolved config (defaults
// filled in) for echoing into output manifests.

SyntheticConfig parse_gen_config(const json& j, json* resolved = nullptr);

struct SolveConfig {
  std::string lambda = "auto";  // "auto" or a number
  double c = 1.0;               // scaled-policy constant
  bool appendix_lambda1 = false;
  std::size_t pilot_n = 20000;
  SolverOptions solver;
};
SolveConfig parse_solve_config(const json& j, json* resolved = nullptr);

// `ratios` may be a list or "start:stop:count" (linear spacing).
SweepConfig parse_sweep_config(const json& j, json* resolved = nullptr);

struct VerifyConfig {
  ClaimId claim = ClaimId::kB2Spectral;
  TailParams params;
  std::size_t trials = 2000;
  Vector delta_grid;  // empty: default grid
  std::uint64_t seed = 0;
  int jobs = 1;
};
VerifyConfig parse_verify_config(const json& j, json* resolved = nullptr);

struct F1Config {
  std::string data;
  std::string target;
  RealPipelineConfig pipeline;
  std::uint64_t seed = 0;
};
F1Config parse_f1_config(const json& j, json* resolved = nullptr);

std::vector<double> parse_ratio_spec(const std::string& s);
LambdaPolicy parse_lambda_policy(const json& j);
json lambda_policy_json(const LambdaPolicy& p);

}  // namespace adlasso
