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
#include <string>
#include <vector>

#include "adlasso/rng.hpp"
#include "adlasso/types.hpp"

namespace adlasso {

struct SyntheticConfig {
  std::size_t p = 0;
  std::size_t k = 0;
  std::size_t n = 0;
  double sigma1 = 0.0;  // response noise std
  double sigma2 = 0.0;  // isotropic perturbation std (gaussian mode)
  CorruptionMode mode = CorruptionMode::kNone;
  double budget_r = 0.0;  // per-row norm for mixture/correlated modes
  double mix_weight = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

struct TabularDataset {
  Matrix X_raw;
  Vector y_raw;
  std::vector<std::string> column_names;
  std::string target_name;
  Vector feature_std;
};

enum class RealVariant { kMixture, kCorrelated };

PopulationSpec sample_ground_truth(std::size_t p, std::size_t k, RngStream& rng);

// Corruption for the synthetic protocol. Gaussian mode stores Σ_e = σ₂²I with
// proxy r = 1; norm-budget modes store the analytic Σ_e = (r²/p)I.
CorruptionSpec synthetic_corruption(const SyntheticConfig& cfg);

Vector perturb_mixture(const Vector& x_star_row, double r, double mix_weight, RngStream& rng);
Vector perturb_correlated(const Vector& x_star_row, double r, double mix_weight, RngStream& rng);
Vector perturb_real_scaled(const Vector& x_star_row, double r, double mix_weight, const Vector& feature_std,
                           RealVariant variant, RngStream& rng);

// Streams rows of (x*, e_x, y*, e_y). generate_instance is a loop over this,
// so harness code that only keeps sufficient statistics sees the same draws.
class RowSampler {
 public:
  RowSampler(const PopulationSpec& truth, const CorruptionSpec& corruption, const RngStream& base);

  void next(double* x_star, double* e_x, double& y_star, double& e_y);
  std::size_t p() const { return p_; }

 private:
  void correlate(const Matrix& l, bool diag, double* out);

  const PopulationSpec& truth_;
  const CorruptionSpec& corruption_;
  std::size_t p_;
  Matrix l_x_;
  bool l_x_diag_;
  Matrix l_e_;
  bool l_e_diag_;
  Vector feature_std_;
  RngStream x_rng_;
  RngStream e_rng_;
  RngStream y_rng_;
  Vector scratch_;
  Vector row_;
};

ProblemInstance generate_instance(const PopulationSpec& truth, const CorruptionSpec& corruption, std::size_t n,
                                  const RngStream& rng);

// Truth from stream (seed, 1), data from stream (seed, 2).
ProblemInstance generate_synthetic(const SyntheticConfig& cfg);

// Non-zero-mean attack: adds mu_support to every column in S and
// mu_nonsupport to every column in S^c, through E_x.
void apply_mean_shift(ProblemInstance& inst, double mu_support, double mu_nonsupport);

TabularDataset load_tabular(const std::string& path, const std::string& target_column);

Vector column_std(const Matrix& x);

}  // namespace adlasso
