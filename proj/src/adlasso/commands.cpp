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

#include "adlasso/commands.hpp"

#include <cmath>

#include "adlasso/error.hpp"

namespace adlasso {

json solve_report(const ProblemInstance& inst, const SolveConfig& cfg, LassoSolution* out) {
  inst.validate();
  json warnings = json::array();
  json policy;
  std::optional<TheoryModel> model;
  TheoryOptions topts;
  topts.appendix_lambda1 = cfg.appendix_lambda1;

  double lambda = 0.0;
  if (cfg.lambda == "auto") {
    bool done = false;
    if (inst.truth) {
      model = theory_model(*inst.truth, inst.corruption, cfg.pilot_n, inst.seed);
      const TheoryBundle b = compute_bundle(*inst.truth, inst.corruption, *model, inst.n(), topts);
      if (std::isfinite(b.lambda_lb)) {
        lambda = 2.0 * b.lambda_lb;
        policy["kind"] = policy_name(LambdaPolicyKind::kTwiceLowerBound);
        policy["lambda_lb"] = num(b.lambda_lb);
        done = true;
      } else {
        warnings.push_back("mutual incoherence gamma <= 0: lambda lower bound is infinite, using the scaled policy");
      }
    }
    if (!done) {
      lambda = scaled_lambda(cfg.c, inst.p(), inst.n());
      policy["kind"] = policy_name(LambdaPolicyKind::kScaled);
      policy["c"] = cfg.c;
    }
  } else {
    lambda = std::strtod(cfg.lambda.c_str(), nullptr);
    policy["kind"] = policy_name(LambdaPolicyKind::kFixed);
  }
  policy["lambda"] = num(lambda);

  const LassoSolution sol = solve_lasso(inst, lambda, cfg.solver);
  if (lambda == 0.0) warnings.push_back("lambda = 0: least-squares solution, no dual vector");

  json rep;
  json conf;
  conf["lambda"] = cfg.lambda;
  conf["c"] = cfg.c;
  conf["appendix_lambda1"] = cfg.appendix_lambda1;
  conf["pilot_n"] = cfg.pilot_n;
  conf["tol"] = cfg.solver.tol;
  conf["max_iter"] = cfg.solver.max_iter;
  conf["support_tol"] = cfg.solver.support_tol;
  rep["config"] = conf;
  rep["seed"] = inst.seed;
  rep["lambda_policy"] = policy;
  rep["solution"] = solution_to_json(sol);

  if (inst.truth) {
    if (!model) model = theory_model(*inst.truth, inst.corruption, cfg.pilot_n, inst.seed);
    topts.lambda_eval = lambda;
    const TheoryBundle b = compute_bundle(*inst.truth, inst.corruption, *model, inst.n(), topts);
    rep["theory"] = bundle_to_json(b);
    if (lambda == 0.0) {
      warnings.push_back("certificate skipped: the dual is undefined at lambda = 0");
    } else if (!inst.X_star || !inst.E_x || !inst.e_y) {
      warnings.push_back("certificate skipped: clean data and perturbations were not retained");
    } else {
      const PdwCertificate cert = pdw_certificate(inst, sol);
      rep["certificate"] = certificate_to_json(cert);
      rep["claims"] = claims_to_json(check_theorem1(inst, sol, cert, b, cfg.solver));
    }
  }
  rep["warnings"] = warnings;
  if (out) *out = sol;
  return rep;
}

TextReport sweep_command(const json& config) {
  json resolved;
  const SweepConfig cfg = parse_sweep_config(config, &resolved);
  const SweepResult res = run_sweep(cfg);
  TextReport r;
  r.body = sweep_csv(res);
  r.manifest["command"] = "sweep";
  r.manifest["config"] = resolved;
  r.manifest["jobs"] = cfg.jobs;
  json tags = json::object();
  for (const auto& [k, v] : res.error_tags) tags[k] = v;
  r.manifest["error_tags"] = tags;
  json cells = json::array();
  for (const auto& row : res.rows) {
    json c;
    c["p"] = row.p;
    c["n"] = row.n;
    c["ratio"] = row.ratio;
    c["errors"] = row.errors;
    c["incoherent_successes"] = row.incoherent_successes;
    cells.push_back(c);
  }
  r.manifest["cells"] = cells;
  return r;
}

TextReport verify_command(const json& config) {
  json resolved;
  const VerifyConfig cfg = parse_verify_config(config, &resolved);
  const Vector grid = cfg.delta_grid.empty() ? default_delta_grid(cfg.claim, cfg.params) : cfg.delta_grid;
  const TailBoundReport rep = verify_tail_bound(cfg.claim, cfg.params, cfg.trials, grid, cfg.seed, cfg.jobs);
  TextReport r;
  r.body = tail_csv(rep);
  json s;
  s["command"] = "verify";
  s["config"] = resolved;
  s["jobs"] = cfg.jobs;
  s["claim"] = claim_name(rep.claim);
  s["violated"] = rep.violated;
  s["fitted"] = rep.fitted;
  s["fitted_rate"] = rep.fitted ? num(rep.fitted_rate) : json(nullptr);
  s["window_lo"] = num(rep.window_lo);
  s["window_hi"] = num(rep.window_hi);
  s["window_statement"] = num(rep.window_statement);
  s["window_proof"] = num(rep.window_proof);
  json grid_j = json::array(), se = json::array();
  for (std::size_t i = 0; i < rep.delta_grid.size(); ++i) {
    grid_j.push_back(num(rep.delta_grid[i]));
    se.push_back(num(rep.std_error[i]));
  }
  s["delta_grid"] = grid_j;
  s["std_error"] = se;
  r.manifest = std::move(s);
  return r;
}

json f1_command(const json& config) {
  json resolved;
  const F1Config cfg = parse_f1_config(config, &resolved);
  const TabularDataset data = load_tabular(cfg.data, cfg.target);
  const PipelineReport rep = run_real_pipeline(data, cfg.pipeline, RngStream(cfg.seed, 0x6631));
  json j = pipeline_to_json(rep);
  j["target"] = data.target_name;
  j["config"] = resolved;
  return j;
}

}  // namespace adlasso
