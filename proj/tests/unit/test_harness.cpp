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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "adlasso/harness.hpp"
#include "test_util.hpp"

using namespace adlasso;
using testutil::code_of;

namespace {

double dice(const Index& a, const Index& b) {
  std::set<std::size_t> sa(a.begin(), a.end());
  std::size_t c = 0;
  for (auto i : b) c += sa.count(i);
  return 2.0 * c / static_cast<double>(a.size() + b.size());
}

}  // namespace

TEST(F1, Examples) {
  const F1Score s = f1_score({1, 2, 3}, {1, 2});
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
  EXPECT_DOUBLE_EQ(s.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.f1, 0.8);
  const F1Score c = f1_score({1, 2, 3}, {1, 2}, true);
  EXPECT_DOUBLE_EQ(c.recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.precision, 1.0);
  EXPECT_DOUBLE_EQ(c.f1, 0.8);
  EXPECT_EQ(f1_score({}, {}).f1, 1.0);
  EXPECT_EQ(f1_score({0}, {}).f1, 0.0);
  EXPECT_EQ(f1_score({}, {4}).f1, 0.0);
  EXPECT_EQ(f1_score({0, 1}, {2, 3}).f1, 0.0);
  EXPECT_EQ(f1_score({0, 1}, {0, 1}).f1, 1.0);
}

TEST(F1, MatchesDiceCoefficient) {
  std::mt19937_64 g(3);
  std::bernoulli_distribution coin(0.3);
  for (int t = 0; t < 200; ++t) {
    Index a, b;
    for (std::size_t i = 0; i < 20; ++i) {
      if (coin(g)) a.push_back(i);
      if (coin(g)) b.push_back(i);
    }
    if (a.empty() && b.empty()) continue;
    EXPECT_NEAR(f1_score(a, b).f1, dice(a, b), 1e-15);
    EXPECT_NEAR(f1_score(a, b).f1, f1_score(b, a).f1, 1e-15);
  }
}

TEST(Isotonic, Examples) {
  EXPECT_EQ(isotonic_fit({1, 3, 2, 4}), (Vector{1, 2.5, 2.5, 4}));
  EXPECT_EQ(isotonic_fit({3, 2, 1}), (Vector{2, 2, 2}));
  EXPECT_EQ(isotonic_fit({}), Vector{});
  EXPECT_EQ(isotonic_deviation({0, 0.5, 1}), 0.0);
  EXPECT_DOUBLE_EQ(isotonic_deviation({0, 0.6, 0.4, 1}), 0.1);
}

TEST(Isotonic, FitIsMonotoneMeanPreservingAndOptimal) {
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 100; ++t) {
    Vector y(12);
    for (auto& v : y) v = u(g);
    const Vector f = isotonic_fit(y);
    ASSERT_EQ(f.size(), y.size());
    for (std::size_t i = 1; i < f.size(); ++i) EXPECT_LE(f[i - 1], f[i] + 1e-15);
    EXPECT_NEAR(std::accumulate(f.begin(), f.end(), 0.0), std::accumulate(y.begin(), y.end(), 0.0), 1e-12);
    EXPECT_EQ(isotonic_fit(f), f);
    auto sse = [&](const Vector& m) {
      double s = 0;
      for (std::size_t i = 0; i < y.size(); ++i) s += (y[i] - m[i]) * (y[i] - m[i]);
      return s;
    };
    // any other monotone candidate is no closer
    for (int c = 0; c < 20; ++c) {
      Vector m(12);
      for (auto& v : m) v = u(g);
      std::sort(m.begin(), m.end());
      EXPECT_LE(sse(f), sse(m) + 1e-12);
    }
  }
}

TEST(Crossing, InterpolatesInLogRatio) {
  EXPECT_NEAR(crossing_ratio({10, 100}, {0, 1}, 0.5), std::sqrt(1000.0), 1e-9);
  EXPECT_EQ(crossing_ratio({10, 100}, {0.6, 1}, 0.5), 10.0);
  EXPECT_NEAR(crossing_ratio({10, 100, 1000}, {0, 0.2, 0.9}, 0.9), 1000.0, 1e-9);
  EXPECT_TRUE(std::isinf(crossing_ratio({10, 100}, {0, 0.4}, 0.5)));
  EXPECT_EQ(code_of([] { crossing_ratio({1, 2}, {0}, 0.5); }), ErrorCode::kInvalidDims);
}

TEST(Lambda, ScaledFormula) {
  EXPECT_NEAR(scaled_lambda(2.0, 64, 1000), 2.0 * std::sqrt(std::log(64.0) / 1000), 1e-15);
  EXPECT_STREQ(policy_name(LambdaPolicyKind::kTwiceLowerBound), "twice_lower_bound");
}

namespace {

SweepConfig small_sweep() {
  SweepConfig c;
  c.p_list = {16};
  c.k = 2;
  c.ratio_grid = {60};
  c.trials = 40;
  c.mode = CorruptionMode::kNone;
  c.sigma1 = 0.0;
  c.lambda_policy = {LambdaPolicyKind::kFixed, 1e-3};
  c.master_seed = 5;
  return c;
}

}  // namespace

TEST(Sweep, NoiselessRecoversEverySupport) {
  const SweepResult r = run_sweep(small_sweep());
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].n, static_cast<std::size_t>(std::round(60 * std::log(16.0))));
  EXPECT_EQ(r.rows[0].prob, 1.0);
  EXPECT_EQ(r.rows[0].mean_f1, 1.0);
  EXPECT_EQ(r.rows[0].errors, 0u);
  EXPECT_EQ(r.rows[0].incoherent_successes, 0u);
}

TEST(Sweep, RowsSortedAndDeterministicAcrossJobs) {
  SweepConfig c = small_sweep();
  c.p_list = {32, 16};
  c.ratio_grid = {2, 8, 40};
  c.mode = CorruptionMode::kGaussian;
  c.sigma1 = 0.05;
  c.sigma2 = 0.1;
  c.trials = 15;
  c.lambda_policy = {LambdaPolicyKind::kTwiceLowerBound, 1.0};
  c.jobs = 1;
  const SweepResult a = run_sweep(c);
  c.jobs = 3;
  const SweepResult b = run_sweep(c);
  ASSERT_EQ(a.rows.size(), 6u);
  EXPECT_EQ(a.rows[0].p, 16u);
  EXPECT_EQ(a.rows[3].p, 32u);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].successes, b.rows[i].successes);
    EXPECT_EQ(a.rows[i].mean_f1, b.rows[i].mean_f1);
    EXPECT_EQ(a.rows[i].n, b.rows[i].n);
    EXPECT_GE(a.rows[i].prob, 0.0);
    EXPECT_LE(a.rows[i].prob, 1.0);
  }
}

TEST(Sweep, ValidationErrors) {
  SweepConfig c = small_sweep();
  c.p_list.clear();
  EXPECT_EQ(code_of([&] { run_sweep(c); }), ErrorCode::kInvalidArgument);
  c = small_sweep();
  c.k = 17;
  EXPECT_EQ(code_of([&] { run_sweep(c); }), ErrorCode::kInvalidDims);
  c = small_sweep();
  c.ratio_grid = {5, 5};
  EXPECT_EQ(code_of([&] { run_sweep(c); }), ErrorCode::kInvalidArgument);
  c = small_sweep();
  c.trials = 0;
  EXPECT_EQ(code_of([&] { run_sweep(c); }), ErrorCode::kInvalidArgument);
}

namespace {

TabularDataset proxy(std::uint64_t seed = 1) { return make_proxy_tabular(400, 20, 4, 0.1, RngStream(seed, 2)); }

}  // namespace

TEST(Pipeline, NoPerturbationReproducesSupport) {
  RealPipelineConfig cfg;
  cfg.perturbation = RealPerturbation::kNone;
  const PipelineReport r = run_real_pipeline(proxy(), cfg, RngStream(1, 1));
  EXPECT_FALSE(r.true_support.empty());
  EXPECT_EQ(r.true_support, r.perturbed_support);
  EXPECT_EQ(r.f1.f1, 1.0);
  cfg.perturbation = RealPerturbation::kGaussianVar;
  cfg.noise_frac = 0.0;
  EXPECT_EQ(run_real_pipeline(proxy(), cfg, RngStream(1, 1)).f1.f1, 1.0);
}

TEST(Pipeline, InvariantToColumnUnits) {
  RealPipelineConfig cfg;
  cfg.perturbation = RealPerturbation::kNone;
  TabularDataset a = proxy(3), b = a;
  for (std::size_t i = 0; i < b.X_raw.rows(); ++i) b.X_raw(i, 2) *= 1000.0;
  b.feature_std[2] *= 1000.0;
  EXPECT_EQ(run_real_pipeline(a, cfg, RngStream(1, 1)).true_support,
            run_real_pipeline(b, cfg, RngStream(1, 1)).true_support);
}

TEST(Pipeline, DeterministicAndLambdaChecked) {
  RealPipelineConfig cfg;
  cfg.perturbation = RealPerturbation::kScaledMixture;
  cfg.budget_r = 2.0;
  const TabularDataset d = proxy();
  const PipelineReport a = run_real_pipeline(d, cfg, RngStream(8, 8));
  const PipelineReport b = run_real_pipeline(d, cfg, RngStream(8, 8));
  EXPECT_EQ(a.perturbed_support, b.perturbed_support);
  EXPECT_NEAR(a.lambda, scaled_lambda(1.0, 20, 400), 1e-15);
  cfg.lambda_policy = {LambdaPolicyKind::kTwiceLowerBound, 1.0};
  EXPECT_EQ(code_of([&] { run_real_pipeline(d, cfg, RngStream(8, 8)); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { run_real_pipeline(TabularDataset{}, RealPipelineConfig{}, RngStream(8, 8)); }),
            ErrorCode::kEmptyDataset);
}

TEST(Pipeline, PerturbationNamesRoundTrip) {
  for (auto p : {RealPerturbation::kNone, RealPerturbation::kGaussianVar, RealPerturbation::kScaledMixture,
                 RealPerturbation::kScaledCorrelated})
    EXPECT_EQ(parse_perturbation(perturbation_name(p)), p);
  EXPECT_EQ(code_of([] { parse_perturbation("uniform"); }), ErrorCode::kInvalidArgument);
}

TEST(Proxy, HeterogeneousScales) {
  const TabularDataset d = proxy();
  EXPECT_EQ(d.X_raw.rows(), 400u);
  EXPECT_EQ(d.column_names.size(), 20u);
  const double lo = *std::min_element(d.feature_std.begin(), d.feature_std.end());
  const double hi = *std::max_element(d.feature_std.begin(), d.feature_std.end());
  EXPECT_GT(hi / lo, 10.0);
  EXPECT_EQ(code_of([] { make_proxy_tabular(1, 3, 1, 0.1, RngStream(1, 1)); }), ErrorCode::kInvalidDims);
}
