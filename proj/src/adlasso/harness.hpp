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
#include <map>
#include <string>
#include <vector>

#include "adlasso/datagen.hpp"
#include "adlasso/lasso.hpp"

namespace adlasso {

enum class LambdaPolicyKind { kTwiceLowerBound, kFixed, kScaled };

struct LambdaPolicy {
  LambdaPolicyKind kind = LambdaPolicyKind::kTwiceLowerBound;
  double value = 1.0;  // λ for fixed, c for scaled
};

const char* policy_name(LambdaPolicyKind k);

// c·√(log p / n)
double scaled_lambda(double c, std::size_t p, std::size_t n);

struct SweepConfig {
  std::vector<std::size_t> p_list;
  std::size_t k = 0;
  std::vector<double> ratio_grid;
  std::size_t trials = 1;
  CorruptionMode mode = CorruptionMode::kGaussian;
  double sigma1 = 0.05;
  double sigma2 = 0.1;
  double budget_r = 0.1;
  double mix_weight = 0.5;
  LambdaPolicy lambda_policy;
  std::uint64_t master_seed = 0;
  int jobs = 1;
  SolverOptions solver;
  // Trial t draws w* from a stream keyed by (seed, t) alone, so every cell
  // sees the same set of ground truths.
  bool paired_truth = true;

  void validate() const;
};

struct SweepRow {
  std::size_t p = 0, k = 0, n = 0;
  double ratio = 0.0;
  std::size_t trials = 0, successes = 0;
  double prob = 0.0;
  double mean_f1 = 0.0;
  std::size_t errors = 0;
  std::size_t incoherent_successes = 0;  // success without sign consistency
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::map<std::string, std::size_t> error_tags;
};

SweepResult run_sweep(const SweepConfig& cfg);

// Pool-adjacent-violators fit, nondecreasing.
Vector isotonic_fit(const Vector& y);
// max_i |y_i − iso(y)_i|
double isotonic_deviation(const Vector& y);
// First ratio where prob reaches `level`, linear in log(ratio) between grid
// points. Returns +inf when the level is never reached.
double crossing_ratio(const std::vector<double>& ratios, const std::vector<double>& prob, double level);

struct F1Score {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

// Verbatim denominators: recall over |P|, precision over |T|. `conventional`
// swaps them.
F1Score f1_score(const Index& true_support, const Index& perturbed_support, bool conventional = false);

enum class RealPerturbation { kNone, kGaussianVar, kScaledMixture, kScaledCorrelated };

const char* perturbation_name(RealPerturbation p);
RealPerturbation parse_perturbation(const std::string& s);

struct RealPipelineConfig {
  RealPerturbation perturbation = RealPerturbation::kGaussianVar;
  double noise_frac = 0.1;  // Gaussian noise variance as a fraction of each feature's variance
  double budget_r = 1000.0;
  double mix_weight = 0.5;
  LambdaPolicy lambda_policy{LambdaPolicyKind::kScaled, 1.0};
  bool conventional_f1 = false;
  SolverOptions solver;
};

struct PipelineReport {
  std::size_t n = 0, p = 0;
  double lambda = 0.0;
  Index true_support;
  Index perturbed_support;
  F1Score f1;
};

PipelineReport run_real_pipeline(const TabularDataset& data, const RealPipelineConfig& cfg, const RngStream& rng);

// Tabular stand-in for real data: heterogeneous column scales and offsets, k
// active standardized features, Gaussian response noise.
TabularDataset make_proxy_tabular(std::size_t n, std::size_t p, std::size_t k, double noise_std, const RngStream& rng);

}  // namespace adlasso
