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

#include <cstdint>
#include <optional>
#include <string>

#include "adlasso/linalg.hpp"

namespace adlasso {

struct PopulationSpec {
  std::size_t p = 0;
  std::size_t k = 0;
  Index support;  // sorted
  Vector w_star;
  Matrix sigma_cov;
  double sigma_proxy = 1.0;

  void validate() const;
};

enum class CorruptionMode { kNone, kGaussian, kMixture, kCorrelated, kRealScaledMixture, kRealScaledCorrelated };

const char* mode_name(CorruptionMode m);
CorruptionMode parse_mode(const std::string& s);

struct CorruptionSpec {
  CorruptionMode mode = CorruptionMode::kNone;
  double budget_r = 0.0;
  Matrix sigma_e;  // p×p, empty means zero
  double sigma_ey = 0.0;
  double mix_weight = 0.5;

  void validate(std::size_t p) const;
  // Σ_e materialized as p×p (zeros when unset).
  Matrix sigma_e_or_zero(std::size_t p) const;
};

struct ProblemInstance {
  Matrix X;
  Vector y;
  std::optional<Matrix> X_star;
  std::optional<Matrix> E_x;
  std::optional<Vector> e_y;
  std::optional<PopulationSpec> truth;
  CorruptionSpec corruption;
  std::uint64_t seed = 0;

  std::size_t n() const { return X.rows(); }
  std::size_t p() const { return X.cols(); }
  void validate() const;
};

}  // namespace adlasso
