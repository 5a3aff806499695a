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

#include "adlasso/config.hpp"

namespace adlasso {

// Solve with the configured λ policy. The report has keys "config",
// "lambda_policy", "warnings", "solution" and, when truth is retained,
// "theory", "certificate", "claims".
json solve_report(const ProblemInstance& inst, const SolveConfig& cfg, LassoSolution* out = nullptr);

struct TextReport {
  std::string body;  // CSV or JSON text
  json manifest;
};

TextReport sweep_command(const json& config);
TextReport verify_command(const json& config);
json f1_command(const json& config);

}  // namespace adlasso
