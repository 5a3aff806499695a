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

#include <json.hpp>

#include "adlasso/concentration.hpp"
#include "adlasso/harness.hpp"
#include "adlasso/lasso.hpp"
#include "adlasso/theory.hpp"
#include "adlasso/types.hpp"

namespace adlasso {

using json = nlohmann::ordered_json;

// Non-finite values become the strings "inf", "-inf", "nan".
json num(double v);
double num_from(const json& j);

std::string format_double(double v);  // %.17g

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json corruption_to_json(const CorruptionSpec& c);
CorruptionSpec corruption_from_json(const json& j);
json truth_to_json(const PopulationSpec& t);
PopulationSpec truth_from_json(const json& j);

json solution_to_json(const LassoSolution& s);
json certificate_to_json(const PdwCertificate& c);
json bundle_to_json(const TheoryBundle& b);
json claims_to_json(const ClaimReport& c);
json pipeline_to_json(const PipelineReport& r);
json guess_to_json(const SupportGuess& g);

std::string sweep_csv(const SweepResult& r);
std::string tail_csv(const TailBoundReport& r);

void write_matrix_csv(const std::string& path, const Matrix& m);
Matrix read_matrix_csv(const std::string& path);
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

// Writes instance.json plus X.csv, y.csv and, when retained, X_star.csv,
// E_x.csv, e_y.csv. `config` is echoed into the manifest.
void save_instance(const ProblemInstance& inst, const std::string& dir, const json& config = json::object());
ProblemInstance load_instance(const std::string& dir, json* manifest = nullptr);

}  // namespace adlasso
