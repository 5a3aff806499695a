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

// adlasso command-line front end. Exit codes: 0 success, 1 runtime error,
// 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "adlasso/adlasso.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RuntimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flags collected as strings; only the ones given on the command line are
// merged over the config file.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> opts;
  std::map<std::string, bool> bools;
  std::map<std::string, CLI::Option*> bool_opts;
  std::string config_path;

  void value(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    opts[key] = app->add_option(flag, values[key], help);
  }
  void boolean(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    bool_opts[key] = app->add_flag(flag, bools[key], help);
  }

  json resolve() const {
    json j = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("cannot open config file '" + config_path + "'");
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw UsageError("config file '" + config_path + "' is not valid JSON: " + e.what());
      }
      if (!j.is_object()) throw UsageError("config file must hold a JSON object");
    }
    for (const auto& [key, opt] : opts)
      if (opt->count() > 0) j[key] = values.at(key);
    for (const auto& [key, opt] : bool_opts)
      if (opt->count() > 0) j[key] = bools.at(key);
    return j;
  }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  adl_string_free(s);
  return out;
}

[[noreturn]] void raise(adl_status st) {
  const std::string msg = adl_last_error();
  throw RuntimeError(msg.empty() ? adl_status_string(st) : msg);
}

// Validates a config through the library; failures are usage errors.
json check(const char* kind, json cfg, bool wants_seed) {
  if (wants_seed && !cfg.contains("seed")) {
    if (const char* env = std::getenv("ADLASSO_SEED")) cfg["seed"] = std::string(env);
  }
  char* resolved = nullptr;
  const adl_status st = adl_config_check(kind, cfg.dump().c_str(), &resolved);
  if (st != ADL_OK) throw UsageError(adl_last_error());
  take(resolved);
  return cfg;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeError("Io: cannot write '" + path + "'");
  out << text;
  if (!out) throw RuntimeError("Io: write failed for '" + path + "'");
}

int cmd_gen(const FlagSet& f, const std::string& out) {
  const json cfg = check("gen", f.resolve(), true);
  adl_instance* inst = nullptr;
  adl_status st = adl_instance_generate(cfg.dump().c_str(), &inst);
  if (st != ADL_OK) raise(st);
  st = adl_instance_save(inst, out.c_str(), nullptr);
  size_t n = 0, p = 0;
  adl_instance_dims(inst, &n, &p);
  adl_instance_free(inst);
  if (st != ADL_OK) raise(st);
  std::printf("gen: wrote n=%zu p=%zu instance to %s\n", n, p, out.c_str());
  return 0;
}

int cmd_solve(const FlagSet& f, const std::string& instance_dir, const std::string& out) {
  const json cfg = check("solve", f.resolve(), false);
  adl_instance* inst = nullptr;
  adl_status st = adl_instance_load(instance_dir.c_str(), &inst);
  if (st != ADL_OK) raise(st);
  adl_solution* sol = nullptr;
  st = adl_solve(inst, cfg.dump().c_str(), &sol);
  adl_instance_free(inst);
  if (st != ADL_OK) raise(st);
  char* text = nullptr;
  st = adl_solution_json(sol, &text);
  adl_solution_free(sol);
  if (st != ADL_OK) raise(st);
  const json rep = json::parse(take(text));

  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw RuntimeError("Io: cannot create '" + out + "'");
  const std::filesystem::path d(out);
  json s;
  s["instance"] = instance_dir;
  for (const char* key : {"config", "seed", "lambda_policy", "warnings", "solution"}) s[key] = rep.at(key);
  write_file((d / "solution.json").string(), s.dump(2) + "\n");
  if (rep.contains("theory")) {
    json c;
    c["theory"] = rep["theory"];
    if (rep.contains("certificate")) c["certificate"] = rep["certificate"];
    write_file((d / "certificate.json").string(), c.dump(2) + "\n");
  }
  if (rep.contains("claims")) write_file((d / "claims.json").string(), rep["claims"].dump(2) + "\n");
  for (const auto& w : rep["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";

  std::size_t nnz = rep["solution"]["support_hat"].size();
  std::printf("solve: lambda=%.6g policy=%s support=%zu kkt=%.3g -> %s\n",
              rep["lambda_policy"]["lambda"].is_number() ? rep["lambda_policy"]["lambda"].get<double>() : 0.0,
              rep["lambda_policy"]["kind"].get<std::string>().c_str(), nnz,
              rep["solution"]["kkt_residual"].is_number() ? rep["solution"]["kkt_residual"].get<double>() : 0.0,
              out.c_str());
  return 0;
}

int cmd_sweep(const FlagSet& f, const std::string& out) {
  const json cfg = check("sweep", f.resolve(), true);
  char* csv = nullptr;
  char* manifest = nullptr;
  const adl_status st = adl_sweep(cfg.dump().c_str(), &csv, &manifest);
  if (st != ADL_OK) raise(st);
  const std::string body = take(csv);
  write_file(out, body);
  write_file(out + ".manifest.json", take(manifest) + "\n");
  std::size_t rows = 0;
  for (char c : body) rows += c == '\n';
  std::printf("sweep: %zu cells -> %s\n", rows > 0 ? rows - 1 : 0, out.c_str());
  return 0;
}

int cmd_verify(const FlagSet& f, const std::string& out) {
  const json cfg = check("verify", f.resolve(), true);
  char* csv = nullptr;
  char* summary = nullptr;
  const adl_status st = adl_verify(cfg.dump().c_str(), &csv, &summary);
  if (st != ADL_OK) raise(st);
  write_file(out, take(csv));
  const std::string s = take(summary);
  write_file(out + ".manifest.json", s + "\n");
  const json j = json::parse(s);
  std::printf("verify: claim=%s violated=%s fitted=%s -> %s\n", j["claim"].get<std::string>().c_str(),
              j["violated"].get<bool>() ? "true" : "false", j["fitted"].get<bool>() ? "true" : "false", out.c_str());
  return 0;
}

int cmd_f1(const FlagSet& f, const std::string& out) {
  const json cfg = check("f1", f.resolve(), true);
  char* rep = nullptr;
  const adl_status st = adl_f1(cfg.dump().c_str(), &rep);
  if (st != ADL_OK) raise(st);
  const std::string s = take(rep);
  write_file(out, s + "\n");
  const json j = json::parse(s);
  std::printf("f1: f1=%.4f recall=%.4f precision=%.4f -> %s\n", j["f1"].get<double>(), j["recall"].get<double>(),
              j["precision"].get<double>(), out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Support recovery for LASSO under adversarial perturbation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(adl_version()));

  FlagSet gen, solve, sweep, verify, f1;
  std::string gen_out, solve_instance, solve_out, sweep_out, verify_out, f1_out;

  CLI::App* g = app.add_subcommand("gen", "Generate a synthetic instance");
  g->add_option("--config", gen.config_path, "JSON config file (flags take precedence)");
  gen.value(g, "--p", "p", "Number of features");
  gen.value(g, "--k", "k", "Support size");
  gen.value(g, "--n", "n", "Number of samples");
  gen.value(g, "--mode", "mode", "none|gaussian|mixture|correlated");
  gen.value(g, "--sigma1", "sigma1", "Response noise std");
  gen.value(g, "--sigma2", "sigma2", "Gaussian perturbation std");
  gen.value(g, "--r", "budget_r", "Per-row perturbation norm (mixture, correlated)");
  gen.value(g, "--mix-weight", "mix_weight", "Mixture weight");
  gen.value(g, "--seed", "seed", "Master seed (falls back to ADLASSO_SEED)");
  g->add_option("--out", gen_out, "Output directory")->required();

  CLI::App* s = app.add_subcommand("solve", "Solve an instance and certify it");
  s->add_option("--config", solve.config_path, "JSON config file (flags take precedence)");
  s->add_option("--instance", solve_instance, "Instance directory")->required();
  solve.value(s, "--lambda", "lambda", "auto or a value");
  solve.value(s, "--c", "c", "Constant for the c*sqrt(log p / n) fallback");
  solve.boolean(s, "--appendix-lambda1", "appendix_lambda1", "Noise term as (8 q1 sigma_ey / gamma) sqrt(4 log p / n)");
  solve.value(s, "--pilot-n", "pilot_n", "Pilot sample size for estimated perturbation moments");
  solve.value(s, "--tol", "tol", "KKT tolerance");
  solve.value(s, "--max-iter", "max_iter", "Maximum coordinate descent sweeps");
  solve.value(s, "--support-tol", "support_tol", "Support threshold");
  s->add_option("--out", solve_out, "Output directory")->required();

  CLI::App* w = app.add_subcommand("sweep", "Support recovery sweep over (p, n)");
  w->add_option("--config", sweep.config_path, "JSON config file (flags take precedence)");
  sweep.value(w, "--p", "p", "Comma-separated p values");
  sweep.value(w, "--k", "k", "Support size");
  sweep.value(w, "--ratios", "ratios", "start:stop:count or comma list of n/log(p)");
  sweep.value(w, "--trials", "trials", "Trials per cell");
  sweep.value(w, "--mode", "mode", "none|gaussian|mixture|correlated");
  sweep.value(w, "--sigma1", "sigma1", "Response noise std");
  sweep.value(w, "--sigma2", "sigma2", "Gaussian perturbation std");
  sweep.value(w, "--r", "budget_r", "Per-row perturbation norm");
  sweep.value(w, "--mix-weight", "mix_weight", "Mixture weight");
  sweep.value(w, "--lambda", "lambda", "auto | <value> | scaled:<c>");
  sweep.value(w, "--seed", "seed", "Master seed (falls back to ADLASSO_SEED)");
  sweep.value(w, "--jobs", "jobs", "Worker threads");
  sweep.value(w, "--support-tol", "support_tol", "Support threshold");
  w->add_option("--out", sweep_out, "Output CSV")->required();

  CLI::App* v = app.add_subcommand("verify", "Monte Carlo check of a concentration bound");
  v->add_option("--config", verify.config_path, "JSON config file (flags take precedence)");
  verify.value(v, "--claim", "claim", "b2|m1|m2|hess|xstar|ex|prod|sum or full id");
  verify.value(v, "--n", "n", "Samples");
  verify.value(v, "--p", "p", "Features");
  verify.value(v, "--k", "k", "Support size");
  verify.value(v, "--trials", "trials", "Monte Carlo trials (>= 100)");
  verify.value(v, "--delta", "delta", "Comma list or start:stop:count");
  verify.value(v, "--sigma-x", "sigma_x", "Clean feature variance");
  verify.value(v, "--sigma-e", "sigma_e", "Perturbation variance");
  verify.value(v, "--dependence", "dependence", "independent|correlated");
  verify.value(v, "--rho", "rho", "Correlation for the dependent regime");
  verify.value(v, "--r", "r", "Perturbation proxy scale");
  verify.value(v, "--sigma", "sigma", "Clean proxy scale");
  verify.value(v, "--sx", "sx", "Scalar X std (prod, sum)");
  verify.value(v, "--sy", "sy", "Scalar Y std (prod, sum)");
  verify.value(v, "--seed", "seed", "Master seed (falls back to ADLASSO_SEED)");
  verify.value(v, "--jobs", "jobs", "Worker threads");
  v->add_option("--out", verify_out, "Output CSV")->required();

  CLI::App* fa = app.add_subcommand("f1", "Perturb-and-recover F1 on tabular data");
  fa->add_option("--config", f1.config_path, "JSON config file (flags take precedence)");
  f1.value(fa, "--data", "data", "CSV file");
  f1.value(fa, "--target", "target", "Target column name or index");
  f1.value(fa, "--mode", "mode", "none|gaussian-var|real-mixture|real-correlated");
  f1.value(fa, "--noise-frac", "noise_frac", "Gaussian noise variance as a fraction of feature variance");
  f1.value(fa, "--r", "budget_r", "Perturbation budget for the real-scaled modes");
  f1.value(fa, "--mix-weight", "mix_weight", "Mixture weight");
  f1.value(fa, "--lambda", "lambda", "scaled:<c> or a value");
  f1.boolean(fa, "--conventional-f1", "conventional_f1", "Conventional recall/precision denominators");
  f1.value(fa, "--seed", "seed", "Master seed (falls back to ADLASSO_SEED)");
  fa->add_option("--out", f1_out, "Output JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_gen(gen, gen_out);
    if (s->parsed()) return cmd_solve(solve, solve_instance, solve_out);
    if (w->parsed()) return cmd_sweep(sweep, sweep_out);
    if (v->parsed()) return cmd_verify(verify, verify_out);
    if (fa->parsed()) return cmd_f1(f1, f1_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
