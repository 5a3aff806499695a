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

// Acceptance suite. Usage: adlasso_acceptance [criterion ...]; no arguments
// runs all nine. Prints one PASS/FAIL line per criterion and exits nonzero
// when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "adlasso/concentration.hpp"
#include "adlasso/datagen.hpp"
#include "adlasso/harness.hpp"
#include "adlasso/io.hpp"
#include "adlasso/lasso.hpp"
#include "adlasso/parallel.hpp"
#include "adlasso/theory.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#ifndef ADLASSO_CLI_PATH
#error "ADLASSO_CLI_PATH must be defined"
#endif

using namespace adlasso;

namespace {

// criterion 1
constexpr int kProjectionInstances = 100;
constexpr double kIdentityTol = 1e-9;
constexpr double kVEigRelTol = 1e-8;
// criterion 2
constexpr double kClosedFormTol = 1e-8;
constexpr double kKktTol = 1e-7;
constexpr double kResolveTol = 1e-6;
constexpr double kResolveMinEig = 0.1;
constexpr int kSolverInstances = 50;
// criterion 3
constexpr std::size_t kTailTrials = 2000;
constexpr std::size_t kProdSamples = 100000;
// criterion 4
constexpr double kMaxDecrease = 0.05;
constexpr double kOverlapTol = 0.15;
constexpr double kReachLevel = 0.95;
constexpr std::size_t kSweepTrials = 100;
// criterion 5
constexpr double kScalingLevel = 0.9;
constexpr double kScalingLo = 2.5, kScalingHi = 6.0;
// criterion 6
constexpr std::size_t kBenignTrials = 200;
constexpr double kClaimRate = 0.95;
// criterion 7
constexpr int kGuessTrials = 100;
constexpr int kGuessRequired = 99;
// criterion 8
constexpr double kF1Required = 0.9;
constexpr int kF1Seeds = 20;
constexpr std::size_t kProxyN = 2000, kProxyP = 50, kProxyK = 10;
constexpr double kProxyNoise = 0.5;
constexpr double kProxyNoiseFrac = 0.1;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char b[64];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

std::vector<double> geomspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = std::round(lo * std::pow(hi / lo, i / double(n - 1)));
  return v;
}

Index random_subset(std::size_t p, std::size_t k, std::mt19937_64& g) {
  Index all(p);
  for (std::size_t i = 0; i < p; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), g);
  Index s(all.begin(), all.begin() + k);
  std::sort(s.begin(), s.end());
  return s;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  std::mt19937_64 g(101);
  std::uniform_int_distribution<std::size_t> kd(1, 16);
  double proj_err = 0, sym_err = 0, annih_err = 0, norm_err = 0, embed_err = 0, veig_err = 0;
  bool rank_ok = true;
  for (int t = 0; t < kProjectionInstances; ++t) {
    const std::size_t k = kd(g);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(k + 1, 200)(g);
    const Matrix xs = oracle::random_matrix(n, k, g);
    const Matrix p = projection_matrix(xs);
    const Eigen::MatrixXd pe = oracle::to_eigen(p);
    proj_err = std::max(proj_err, (pe * pe - pe).cwiseAbs().maxCoeff());
    sym_err = std::max(sym_err, (pe.transpose() - pe).cwiseAbs().maxCoeff());
    annih_err = std::max(annih_err, (pe * oracle::to_eigen(xs)).cwiseAbs().maxCoeff());
    norm_err = std::max(norm_err, std::abs(spectral_norm(p) - 1.0));

    const Matrix b = oracle::random_matrix(k, k, g);
    embed_err = std::max(embed_err, std::abs(spectral_norm(symmetrize_embed(b)) - oracle::largest_singular_value(b)));

    Vector d(k);
    for (auto& v : d) v = std::uniform_real_distribution<double>(0.01, 2.0)(g);
    const double r = std::uniform_real_distribution<double>(0.1, 2.0)(g);
    const double s = std::uniform_real_distribution<double>(0.1, 2.0)(g);
    const double m = std::uniform_real_distribution<double>(0.1, 2.0)(g);
    const VEigenSummary ve = v_matrix_eigenvalues(d, r, s, m, n);
    rank_ok = rank_ok && ve.nonzero_count == 2 && ve.rank_ok;
    // c₂/n with c₂ = 128 r² σ² max Σ_jj √k ‖diag Σe‖₂
    double sq = 0;
    for (double v : d) sq += v * v;
    const double predicted = 128.0 * r * r * s * s * m * std::sqrt(double(k) * sq) / double(n);
    const auto ref = oracle::sym_eigenvalues(symmetrize_embed([&] {
      Matrix v1(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) v1(i, j) = 128.0 * r * r * s * s * m / double(n) * d[i];
      return v1;
    }()));
    veig_err = std::max(veig_err, std::abs(ve.eigenvalues.back() - predicted) / predicted);
    veig_err = std::max(veig_err, std::abs(ref.back() - predicted) / predicted);
    veig_err = std::max(veig_err, std::abs(ve.eigenvalues.front() + predicted) / predicted);
  }
  Outcome o;
  o.pass = proj_err <= kIdentityTol && sym_err <= kIdentityTol && annih_err <= kIdentityTol && norm_err <= kIdentityTol &&
           embed_err <= kIdentityTol && veig_err <= kVEigRelTol && rank_ok;
  o.detail = "P^2-P " + fmt("%.2e", proj_err) + ", P^T-P " + fmt("%.2e", sym_err) + ", P X_S " +
             fmt("%.2e", annih_err) + ", |‖P‖-1| " + fmt("%.2e", norm_err) + ", embed " + fmt("%.2e", embed_err) +
             ", V eig rel " + fmt("%.2e", veig_err) + (rank_ok ? ", rank 2" : ", rank mismatch");
  return o;
}

// ---------------------------------------------------------------------------

double kkt_violation(const Matrix& x, const Vector& y, const Vector& w, double lambda) {
  const Eigen::MatrixXd xe = oracle::to_eigen(x);
  const Eigen::VectorXd ye = Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
  const Eigen::VectorXd we = Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
  const Eigen::VectorXd grad = -xe.transpose() * (ye - xe * we) / double(x.rows());
  double v = 0;
  for (Eigen::Index i = 0; i < grad.size(); ++i) {
    if (we[i] != 0.0)
      v = std::max(v, std::abs(grad[i] + lambda * (we[i] > 0 ? 1.0 : -1.0)));
    else
      v = std::max(v, std::abs(grad[i]) - lambda);
  }
  return v;
}

Outcome criterion2() {
  std::mt19937_64 g(202);
  SolverOptions tight;
  tight.tol = 1e-12;
  tight.coord_tol = 1e-14;

  double closed = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 100 + 5 * t, p = 10 + t % 7;
    const Matrix x = oracle::orthogonal_design(n, p, g);
    const Vector y = oracle::random_vector(n, g);
    const double lambda = 0.02 * (1 + t % 5);
    const LassoSolution s = solve_lasso(x, y, lambda, tight);
    const Vector xty = matvec_t(x, y);
    for (std::size_t j = 0; j < p; ++j)
      closed = std::max(closed, std::abs(s.w_hat[j] - oracle::soft(xty[j] / double(n), lambda)));
  }

  double direct = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t p = 5 + t % 10, n = t % 2 ? 2 * p + 5 : 4 * p;
    const Matrix x = oracle::random_matrix(n, p, g);
    const Vector y = oracle::random_vector(n, g);
    const Eigen::VectorXd refe =
        oracle::to_eigen(x).colPivHouseholderQr().solve(Eigen::Map<const Eigen::VectorXd>(y.data(), y.size()));
    const Vector ref(refe.data(), refe.data() + refe.size());
    const LassoSolution s = solve_lasso(x, y, 0.0, tight);
    for (std::size_t j = 0; j < p; ++j) direct = std::max(direct, std::abs(s.w_hat[j] - ref[j]) / std::max(1.0, std::abs(ref[j])));
  }

  double kkt = 0, resolve = 0;
  int checked = 0;
  for (int t = 0; t < kSolverInstances; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(20, 200)(g);
    const std::size_t p = std::uniform_int_distribution<std::size_t>(5, 60)(g);
    const Matrix x = oracle::random_matrix(n, p, g);
    const Vector y = oracle::random_vector(n, g);
    const double lmax = norm_inf(matvec_t(x, y)) / double(n);
    const double lambda = lmax * std::uniform_real_distribution<double>(0.05, 0.5)(g);
    const LassoSolution s = solve_lasso(x, y, lambda);
    kkt = std::max(kkt, kkt_violation(x, y, s.w_hat, lambda));

    if (s.support_hat.empty()) continue;
    const Eigen::MatrixXd xs = oracle::to_eigen(select_columns(x, s.support_hat));
    const Eigen::MatrixXd h = xs.transpose() * xs / double(n);
    if (Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h).eigenvalues().minCoeff() <= kResolveMinEig) continue;
    SolverOptions o;
    o.initial = oracle::random_vector(p, g);
    const LassoSolution again = solve_lasso(x, y, lambda, o);
    resolve = std::max(resolve, oracle::max_abs_diff(again.w_hat, s.w_hat));
    ++checked;
  }
  Outcome o;
  o.pass = closed <= kClosedFormTol && direct <= kClosedFormTol && kkt <= kKktTol && resolve <= kResolveTol &&
           checked > 0;
  o.detail = "closed form " + fmt("%.2e", closed) + ", lambda=0 " + fmt("%.2e", direct) + ", max KKT " +
             fmt("%.2e", kkt) + ", re-solve " + fmt("%.2e", resolve) + " over " + std::to_string(checked) +
             " well-conditioned instances";
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion3() {
  Outcome o;
  const int jobs = default_jobs();
  TailParams tp;
  tp.n = 500;
  tp.k = 5;
  for (auto dep : {Dependence::kIndependent, Dependence::kCorrelated}) {
    tp.dependence = dep;
    const TailBoundReport r = verify_tail_bound(ClaimId::kB2Spectral, tp, kTailTrials, {}, 303, jobs);
    double worst = -1e9;
    for (std::size_t i = 0; i < r.delta_grid.size(); ++i)
      worst = std::max(worst, (r.empirical_freq[i] - std::min(1.0, r.theory_bound[i])) /
                                  std::max(r.std_error[i], 1e-300));
    o.pass = o.pass && !r.violated && r.delta_grid.size() == 6;
    o.detail += std::string(dep == Dependence::kIndependent ? "B2 indep" : "B2 corr") + " window (0," +
                fmt("%.3g", r.window_hi) + ") max freq " +
                fmt("%.3f", *std::max_element(r.empirical_freq.begin(), r.empirical_freq.end())) +
                (r.violated ? " VIOLATED; " : " ok; ");
    (void)worst;
  }
  for (auto dep : {Dependence::kIndependent, Dependence::kCorrelated}) {
    TailParams sp;
    sp.dependence = dep;
    const TailBoundReport r = verify_tail_bound(ClaimId::kProdSubgauss, sp, kProdSamples, {1, 2, 4}, 304, jobs);
    o.pass = o.pass && !r.violated;
    o.detail += std::string(dep == Dependence::kIndependent ? "prod indep" : "prod dep") + " freq/bound";
    for (std::size_t i = 0; i < 3; ++i)
      o.detail += " " + fmt("%.4f", r.empirical_freq[i]) + "/" + fmt("%.4f", std::min(1.0, r.theory_bound[i]));
    o.detail += r.violated ? " VIOLATED; " : "; ";
  }
  return o;
}

// ---------------------------------------------------------------------------

// Centered three-point moving average.
Vector smooth(const Vector& v) {
  Vector s(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1, hi = std::min(v.size() - 1, i + 1);
    double a = 0;
    for (std::size_t j = lo; j <= hi; ++j) a += v[j];
    s[i] = a / double(hi - lo + 1);
  }
  return s;
}

SweepConfig phase_config(std::vector<std::size_t> ps, double sigma2, std::vector<double> ratios, std::uint64_t seed) {
  SweepConfig c;
  c.p_list = std::move(ps);
  c.k = 8;
  c.ratio_grid = std::move(ratios);
  c.trials = kSweepTrials;
  c.mode = CorruptionMode::kGaussian;
  c.sigma1 = 0.05;
  c.sigma2 = sigma2;
  c.master_seed = seed;
  c.jobs = default_jobs();
  return c;
}

Vector probs_for(const SweepResult& r, std::size_t p) {
  Vector v;
  for (const auto& row : r.rows)
    if (row.p == p) v.push_back(row.prob);
  return v;
}

std::string curve(const Vector& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : " ") + fmt("%.2f", x);
  return s;
}

Outcome criterion4() {
  const std::vector<double> ratios = geomspace(500, 25000, 12);
  const SweepResult r = run_sweep(phase_config({64, 128}, 0.1, ratios, 404));
  const Vector a = smooth(probs_for(r, 64)), b = smooth(probs_for(r, 128));
  double max_dec = 0, max_gap = 0;
  for (const Vector* c : {&a, &b})
    for (std::size_t i = 1; i < c->size(); ++i) max_dec = std::max(max_dec, (*c)[i - 1] - (*c)[i]);
  for (std::size_t i = 0; i < a.size(); ++i) max_gap = std::max(max_gap, std::abs(a[i] - b[i]));
  const Vector ra = probs_for(r, 64), rb = probs_for(r, 128);
  const double reach64 = crossing_ratio(ratios, ra, kReachLevel), reach128 = crossing_ratio(ratios, rb, kReachLevel);
  Outcome o;
  o.pass = max_dec <= kMaxDecrease && max_gap <= kOverlapTol && std::isfinite(reach64) && std::isfinite(reach128);
  o.detail = "(a) max decrease " + fmt("%.3f", max_dec) + ", (b) max gap " + fmt("%.3f", max_gap) +
             ", (c) prob 0.95 crossing: p=64 " + fmt("%.0f", reach64) + ", p=128 " + fmt("%.0f", reach128) +
             "; p=64 [" + curve(ra) + "], p=128 [" + curve(rb) + "]";
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion5() {
  const std::vector<double> lo = geomspace(1000, 40000, 12), hi = geomspace(5000, 200000, 12);
  const SweepResult a = run_sweep(phase_config({64}, 0.1, lo, 505));
  const SweepResult b = run_sweep(phase_config({64}, 0.2, hi, 505));
  const Vector pa = probs_for(a, 64), pb = probs_for(b, 64);
  const double ra = crossing_ratio(lo, pa, kScalingLevel), rb = crossing_ratio(hi, pb, kScalingLevel);
  const double factor = rb / ra;
  Outcome o;
  o.pass = std::isfinite(factor) && factor >= kScalingLo && factor <= kScalingHi;
  o.detail = "ratio at prob 0.9: sigma2=0.1 " + fmt("%.0f", ra) + ", sigma2=0.2 " + fmt("%.0f", rb) + ", factor " +
             fmt("%.2f", factor) + "; sigma2=0.1 [" + curve(pa) + "], sigma2=0.2 [" + curve(pb) + "]";
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion6() {
  constexpr std::size_t p = 64, k = 4;
  const std::size_t n = static_cast<std::size_t>(std::round(4.0 * k * k * std::log(double(p))));
  std::size_t trials = 0, skipped = 0, c1c4 = 0, err_ok = 0;
  double min_gamma = 1e9;
  for (std::uint64_t seed = 0; trials < kBenignTrials; ++seed) {
    SyntheticConfig sc;
    sc.p = p;
    sc.k = k;
    sc.n = n;
    sc.sigma1 = 0.05;
    sc.mode = CorruptionMode::kNone;
    sc.seed = 6000 + seed;
    const ProblemInstance inst = generate_synthetic(sc);
    const TheoryModel m = theory_model(*inst.truth, inst.corruption);
    const TheoryBundle lb = compute_bundle(*inst.truth, inst.corruption, m, n);
    const double lambda = 2.0 * lb.lambda_lb;
    TheoryOptions to;
    to.lambda_eval = lambda;
    const TheoryBundle b = compute_bundle(*inst.truth, inst.corruption, m, n, to);
    if (b.gamma < 0.5 || !b.min_signal_ok) {
      ++skipped;
      continue;
    }
    min_gamma = std::min(min_gamma, b.gamma);
    const LassoSolution sol = solve_lasso(inst, lambda);
    const ClaimReport r = check_theorem1(inst, sol, pdw_certificate(inst, sol), b);
    ++trials;
    c1c4 += r.no_false_positives && r.sign_consistent;
    err_ok += r.error_within_bound;
  }
  const double rate14 = double(c1c4) / double(trials), rate3 = double(err_ok) / double(trials);
  Outcome o;
  o.pass = rate14 >= kClaimRate && rate3 >= kClaimRate;
  o.detail = "n=" + std::to_string(n) + ", claims 1&4 " + fmt("%.3f", rate14) + ", error bound " + fmt("%.3f", rate3) +
             " over " + std::to_string(trials) + " trials (" + std::to_string(skipped) +
             " draws outside the regime skipped, min gamma " + fmt("%.3f", min_gamma) + ")";
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion7() {
  constexpr std::size_t p = 100;
  const std::size_t n = static_cast<std::size_t>(std::round(50.0 * std::log(double(p))));
  int correct = 0;
  for (int t = 0; t < kGuessTrials; ++t) {
    SyntheticConfig sc;
    sc.p = p;
    sc.k = 10;
    sc.n = n;
    sc.sigma1 = 0.05;
    sc.sigma2 = 0.1;
    sc.mode = CorruptionMode::kGaussian;
    sc.seed = 7000 + t;
    ProblemInstance inst = generate_synthetic(sc);
    apply_mean_shift(inst, 0.0, 1.0);
    const SupportGuess g = trivial_support_guess(inst, {}, AttackSide::kNonSupport);
    correct += g.determined && g.support == inst.truth->support;
  }
  Outcome o;
  o.pass = correct >= kGuessRequired;
  o.detail = "n=" + std::to_string(n) + ", exact guesses " + std::to_string(correct) + "/" + std::to_string(kGuessTrials);
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion8() {
  Outcome o;
  RealPipelineConfig none;
  none.perturbation = RealPerturbation::kNone;
  const TabularDataset base = make_proxy_tabular(kProxyN, kProxyP, kProxyK, kProxyNoise, RngStream(800, 1));
  const PipelineReport zero = run_real_pipeline(base, none, RngStream(800, 2));
  o.pass = zero.f1.f1 == 1.0;
  o.detail = "zero perturbation f1 " + fmt("%.4f", zero.f1.f1);

  RealPipelineConfig cfg;
  cfg.perturbation = RealPerturbation::kGaussianVar;
  cfg.noise_frac = kProxyNoiseFrac;
  double sum = 0, worst = 1;
  for (int s = 0; s < kF1Seeds; ++s) {
    const TabularDataset d = make_proxy_tabular(kProxyN, kProxyP, kProxyK, kProxyNoise, RngStream(810 + s, 1));
    const double f = run_real_pipeline(d, cfg, RngStream(810 + s, 2)).f1.f1;
    sum += f;
    worst = std::min(worst, f);
  }
  const double mean = sum / kF1Seeds;
  o.pass = o.pass && mean >= kF1Required;
  o.detail += ", proxy p=50 mean f1 " + fmt("%.4f", mean) + " (min " + fmt("%.4f", worst) + ") over 20 seeds";

  const char* blog = std::getenv("ADLASSO_BLOGFEEDBACK");
  if (blog && *blog) {
    const char* tgt = std::getenv("ADLASSO_BLOGFEEDBACK_TARGET");
    const TabularDataset d = load_tabular(blog, tgt && *tgt ? tgt : "280");
    const double f = run_real_pipeline(d, cfg, RngStream(880, 2)).f1.f1;
    o.pass = o.pass && f >= kF1Required;
    o.detail += ", BlogFeedback f1 " + fmt("%.4f", f);
  } else {
    o.detail += ", BlogFeedback not supplied (optional check skipped)";
  }
  return o;
}

// ---------------------------------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion9() {
  testutil::TempDir dir("acceptance9");
  auto run = [&](const std::string& out, int jobs) {
    const std::string cmd = std::string("\"") + ADLASSO_CLI_PATH +
                            "\" sweep --p 32,64 --k 4 --ratios 50,100,200,400 --trials 25 --sigma2 0.1 --seed 909 "
                            "--jobs " + std::to_string(jobs) + " --out \"" + dir.str(out) + "\" >/dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  };
  const int a = run("a.csv", 1), b = run("b.csv", 1), c = run("c.csv", 8);
  const std::string ca = slurp(dir.str("a.csv")), cb = slurp(dir.str("b.csv")), cc = slurp(dir.str("c.csv"));
  Outcome o;
  o.pass = a == 0 && b == 0 && c == 0 && !ca.empty() && ca == cb && ca == cc;
  o.detail = "jobs1 vs jobs1 " + std::string(ca == cb ? "identical" : "DIFFER") + ", jobs1 vs jobs8 " +
             (ca == cc ? "identical" : "DIFFER") + " (" + std::to_string(ca.size()) + " bytes)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> all = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                     criterion6, criterion7, criterion8, criterion9};
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= 9; ++i) which.push_back(i);
  bool ok = true;
  for (int c : which) {
    if (c < 1 || c > 9) {
      std::fprintf(stderr, "unknown criterion %d\n", c);
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[c - 1]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s  %s  [%.1f s]\n", c, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
