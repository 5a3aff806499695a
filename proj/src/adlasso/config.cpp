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

#include "adlasso/config.hpp"

#include <cmath>
#include <set>

#include "adlasso/error.hpp"
#include "adlasso/parallel.hpp"

namespace adlasso {

namespace {

// Reads typed values from a JSON object and remembers which keys were used.
class Reader {
 public:
  Reader(const json& j, const char* what) : j_(j), what_(what) {
    if (!j.is_null() && !j.is_object()) fail(ErrorCode::kInvalidArgument, std::string(what) + " config must be an object");
  }

  bool has(const char* key) {
    seen_.insert(key);
    return j_.is_object() && j_.contains(key) && !j_.at(key).is_null();
  }

  const json& raw(const char* key) { return j_.at(key); }

  template <typename T>
  T get(const char* key, T def) {
    if (!has(key)) return def;
    try {
      return j_.at(key).get<T>();
    } catch (const json::exception&) {
      fail(ErrorCode::kInvalidArgument, std::string(what_) + ": bad value for '" + key + "': " + j_.at(key).dump());
    }
  }

  double number(const char* key, double def) {
    if (!has(key)) return def;
    const json& v = j_.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      char* end = nullptr;
      const double d = std::strtod(s.c_str(), &end);
      if (!s.empty() && end == s.c_str() + s.size()) return d;
    }
    fail(ErrorCode::kInvalidArgument, std::string(what_) + ": '" + key + "' must be a number, got " + v.dump());
  }

  std::size_t count(const char* key, std::size_t def) {
    const double d = number(key, static_cast<double>(def));
    if (d < 0 || d != std::floor(d) || d > 9.0e15)
      fail(ErrorCode::kInvalidArgument, std::string(what_) + ": '" + key + "' must be a nonnegative integer");
    return static_cast<std::size_t>(d);
  }

  std::uint64_t seed(const char* key, std::uint64_t def) {
    if (!has(key)) return def;
    const json& v = j_.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      char* end = nullptr;
      const unsigned long long u = std::strtoull(s.c_str(), &end, 10);
      if (!s.empty() && s[0] != '-' && end == s.c_str() + s.size()) return u;
    }
    fail(ErrorCode::kInvalidArgument, std::string(what_) + ": '" + key + "' must be a 64-bit unsigned integer");
  }

  void finish() const {
    if (!j_.is_object()) return;
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        fail(ErrorCode::kInvalidArgument, std::string(what_) + ": unknown key '" + it.key() + "'");
  }

 private:
  const json& j_;
  const char* what_;
  std::set<std::string> seen_;
};

std::vector<std::size_t> parse_p_list(const json& v) {
  std::vector<std::size_t> out;
  auto push = [&](double d) {
    if (!(d >= 1) || d != std::floor(d)) fail(ErrorCode::kInvalidArgument, "p values must be positive integers");
    out.push_back(static_cast<std::size_t>(d));
  };
  if (v.is_number()) {
    push(v.get<double>());
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (!x.is_number()) fail(ErrorCode::kInvalidArgument, "p list entries must be numbers");
      push(x.get<double>());
    }
  } else if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = s.find(',', start);
      const std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      char* end = nullptr;
      const double d = std::strtod(tok.c_str(), &end);
      if (tok.empty() || end != tok.c_str() + tok.size()) fail(ErrorCode::kInvalidArgument, "bad p list '" + s + "'");
      push(d);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  } else {
    fail(ErrorCode::kInvalidArgument, "p must be a number, list or comma-separated string");
  }
  return out;
}

json ratio_json(const std::vector<double>& r) {
  json a = json::array();
  for (double x : r) a.push_back(x);
  return a;
}

json solver_json(const SolverOptions& s) {
  json j;
  j["tol"] = s.tol;
  j["max_iter"] = s.max_iter;
  j["support_tol"] = s.support_tol;
  return j;
}

void read_solver(Reader& r, SolverOptions& s) {
  s.tol = r.number("tol", s.tol);
  s.max_iter = r.count("max_iter", s.max_iter);
  s.support_tol = r.number("support_tol", s.support_tol);
  if (!(s.tol > 0) || !(s.support_tol >= 0) || s.max_iter == 0)
    fail(ErrorCode::kInvalidArgument, "solver tolerances must be positive and max_iter >= 1");
}

}  // namespace

std::vector<double> parse_ratio_spec(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  const char sep = s.find(':') != std::string::npos ? ':' : ',';
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  std::vector<double> vals;
  for (const auto& t : parts) {
    char* end = nullptr;
    const double d = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size()) fail(ErrorCode::kInvalidArgument, "bad ratio spec '" + s + "'");
    vals.push_back(d);
  }
  if (sep == ',') return vals;
  if (vals.size() != 3) fail(ErrorCode::kInvalidArgument, "ratio spec must be start:stop:count, got '" + s + "'");
  const double lo = vals[0], hi = vals[1], cnt = vals[2];
  if (cnt < 1 || cnt != std::floor(cnt)) fail(ErrorCode::kInvalidArgument, "ratio count must be a positive integer");
  const auto c = static_cast<std::size_t>(cnt);
  if (c == 1) return {lo};
  std::vector<double> out(c);
  for (std::size_t i = 0; i < c; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(c - 1);
  return out;
}

LambdaPolicy parse_lambda_policy(const json& j) {
  LambdaPolicy p;
  if (j.is_null()) return p;
  if (j.is_number()) {
    p.kind = LambdaPolicyKind::kFixed;
    p.value = j.get<double>();
    return p;
  }
  if (j.is_object()) {
    // the echoed form {"kind": ..., "value": ...}
    const std::string kind = j.value("kind", std::string("twice_lower_bound"));
    if (kind == "twice_lower_bound") return p;
    if (kind != "fixed" && kind != "scaled") fail(ErrorCode::kInvalidArgument, "unknown lambda policy '" + kind + "'");
    p.kind = kind == "fixed" ? LambdaPolicyKind::kFixed : LambdaPolicyKind::kScaled;
    if (!j.contains("value") || !j["value"].is_number())
      fail(ErrorCode::kInvalidArgument, "lambda policy value must be a number");
    p.value = j["value"].get<double>();
    return p;
  }
  if (!j.is_string()) fail(ErrorCode::kInvalidArgument, "lambda policy must be a string, number or object");
  const std::string s = j.get<std::string>();
  if (s == "auto" || s == "twice_lower_bound") return p;
  const std::size_t colon = s.find(':');
  const std::string head = s.substr(0, colon);
  std::string tail = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (head == "scaled" || head == "fixed") {
    p.kind = head == "scaled" ? LambdaPolicyKind::kScaled : LambdaPolicyKind::kFixed;
    if (tail.empty()) {
      if (head == "fixed") fail(ErrorCode::kInvalidArgument, "fixed lambda policy needs a value");
      tail = "1";
    }
    char* end = nullptr;
    p.value = std::strtod(tail.c_str(), &end);
    if (end != tail.c_str() + tail.size()) fail(ErrorCode::kInvalidArgument, "bad lambda policy '" + s + "'");
    return p;
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) fail(ErrorCode::kInvalidArgument, "bad lambda policy '" + s + "'");
  p.kind = LambdaPolicyKind::kFixed;
  p.value = v;
  return p;
}

json lambda_policy_json(const LambdaPolicy& p) {
  json j;
  j["kind"] = policy_name(p.kind);
  if (p.kind != LambdaPolicyKind::kTwiceLowerBound) j["value"] = p.value;
  return j;
}

SyntheticConfig parse_gen_config(const json& j, json* resolved) {
  Reader r(j, "gen");
  SyntheticConfig c;
  c.p = r.count("p", 0);
  c.k = r.count("k", 0);
  c.n = r.count("n", 0);
  c.mode = parse_mode(r.get<std::string>("mode", "gaussian"));
  c.sigma1 = r.number("sigma1", 0.05);
  c.sigma2 = r.number("sigma2", 0.1);
  c.budget_r = r.number("budget_r", 0.1);
  c.mix_weight = r.number("mix_weight", 0.5);
  c.seed = r.seed("seed", 0);
  r.finish();
  if (c.mode == CorruptionMode::kRealScaledMixture || c.mode == CorruptionMode::kRealScaledCorrelated)
    fail(ErrorCode::kInvalidArgument, "real-scaled modes apply to tabular data only (use f1)");
  c.validate();
  if (resolved) {
    json o;
    o["p"] = c.p;
    o["k"] = c.k;
    o["n"] = c.n;
    o["mode"] = mode_name(c.mode);
    o["sigma1"] = c.sigma1;
    o["sigma2"] = c.sigma2;
    o["budget_r"] = c.budget_r;
    o["mix_weight"] = c.mix_weight;
    o["seed"] = c.seed;
    *resolved = std::move(o);
  }
  return c;
}

SolveConfig parse_solve_config(const json& j, json* resolved) {
  Reader r(j, "solve");
  SolveConfig c;
  if (r.has("lambda")) {
    const json& v = r.raw("lambda");
    if (v.is_number()) {
      c.lambda = format_double(v.get<double>());
    } else if (v.is_string()) {
      c.lambda = v.get<std::string>();
    } else {
      fail(ErrorCode::kInvalidArgument, "solve: 'lambda' must be auto or a number");
    }
  }
  if (c.lambda != "auto") {
    char* end = nullptr;
    const double v = std::strtod(c.lambda.c_str(), &end);
    if (c.lambda.empty() || end != c.lambda.c_str() + c.lambda.size() || !(v >= 0))
      fail(ErrorCode::kInvalidArgument, "solve: lambda must be 'auto' or a number >= 0, got '" + c.lambda + "'");
  }
  c.c = r.number("c", 1.0);
  c.appendix_lambda1 = r.get<bool>("appendix_lambda1", false);
  c.pilot_n = r.count("pilot_n", 20000);
  read_solver(r, c.solver);
  r.finish();
  if (!(c.c > 0)) fail(ErrorCode::kInvalidArgument, "solve: c must be > 0");
  if (resolved) {
    json o;
    o["lambda"] = c.lambda;
    o["c"] = c.c;
    o["appendix_lambda1"] = c.appendix_lambda1;
    o["pilot_n"] = c.pilot_n;
    o["solver"] = solver_json(c.solver);
    *resolved = std::move(o);
  }
  return c;
}

SweepConfig parse_sweep_config(const json& j, json* resolved) {
  Reader r(j, "sweep");
  SweepConfig c;
  if (!r.has("p")) fail(ErrorCode::kInvalidArgument, "sweep: 'p' is required");
  c.p_list = parse_p_list(r.raw("p"));
  c.k = r.count("k", 0);
  if (!r.has("ratios")) fail(ErrorCode::kInvalidArgument, "sweep: 'ratios' is required");
  const json& rv = r.raw("ratios");
  if (rv.is_string()) {
    c.ratio_grid = parse_ratio_spec(rv.get<std::string>());
  } else if (rv.is_array()) {
    for (const auto& x : rv) {
      if (!x.is_number()) fail(ErrorCode::kInvalidArgument, "sweep: ratios must be numbers");
      c.ratio_grid.push_back(x.get<double>());
    }
  } else {
    fail(ErrorCode::kInvalidArgument, "sweep: 'ratios' must be a list or start:stop:count");
  }
  c.trials = r.count("trials", 100);
  c.mode = parse_mode(r.get<std::string>("mode", "gaussian"));
  c.sigma1 = r.number("sigma1", 0.05);
  c.sigma2 = r.number("sigma2", 0.1);
  c.budget_r = r.number("budget_r", 0.1);
  c.mix_weight = r.number("mix_weight", 0.5);
  if (r.has("lambda")) c.lambda_policy = parse_lambda_policy(r.raw("lambda"));
  c.master_seed = r.seed("seed", 0);
  const std::size_t jobs = r.count("jobs", static_cast<std::size_t>(default_jobs()));
  c.jobs = static_cast<int>(std::max<std::size_t>(1, std::min<std::size_t>(jobs, 1024)));
  c.paired_truth = r.get<bool>("paired_truth", true);
  read_solver(r, c.solver);
  r.finish();
  if (c.mode == CorruptionMode::kRealScaledMixture || c.mode == CorruptionMode::kRealScaledCorrelated)
    fail(ErrorCode::kInvalidArgument, "sweep: real-scaled modes apply to tabular data only");
  c.validate();
  if (resolved) {
    json o;
    json ps = json::array();
    for (auto p : c.p_list) ps.push_back(p);
    o["p"] = ps;
    o["k"] = c.k;
    o["ratios"] = ratio_json(c.ratio_grid);
    o["trials"] = c.trials;
    o["mode"] = mode_name(c.mode);
    o["sigma1"] = c.sigma1;
    o["sigma2"] = c.sigma2;
    o["budget_r"] = c.budget_r;
    o["mix_weight"] = c.mix_weight;
    o["lambda"] = lambda_policy_json(c.lambda_policy);
    o["seed"] = c.master_seed;
    o["paired_truth"] = c.paired_truth;
    o["solver"] = solver_json(c.solver);
    *resolved = std::move(o);
  }
  return c;
}

VerifyConfig parse_verify_config(const json& j, json* resolved) {
  Reader r(j, "verify");
  VerifyConfig c;
  if (!r.has("claim")) fail(ErrorCode::kInvalidArgument, "verify: 'claim' is required");
  c.claim = parse_claim(r.get<std::string>("claim", ""));
  TailParams& t = c.params;
  t.n = r.count("n", t.n);
  t.p = r.count("p", t.p);
  t.k = r.count("k", t.k);
  t.sigma_x = r.number("sigma_x", t.sigma_x);
  t.sigma_e = r.number("sigma_e", t.sigma_e);
  const std::string dep = r.get<std::string>("dependence", "independent");
  if (dep == "independent") {
    t.dependence = Dependence::kIndependent;
  } else if (dep == "correlated" || dep == "dependent") {
    t.dependence = Dependence::kCorrelated;
  } else {
    fail(ErrorCode::kInvalidArgument, "verify: dependence must be independent or correlated");
  }
  t.rho = r.number("rho", t.rho);
  t.r = r.number("r", t.r);
  t.sigma = r.number("sigma", t.sigma);
  t.sx = r.number("sx", t.sx);
  t.sy = r.number("sy", t.sy);
  c.trials = r.count("trials", c.trials);
  if (r.has("delta")) {
    const json& d = r.raw("delta");
    if (d.is_string()) {
      c.delta_grid = parse_ratio_spec(d.get<std::string>());
    } else if (d.is_array()) {
      for (const auto& x : d) {
        if (!x.is_number()) fail(ErrorCode::kInvalidArgument, "verify: delta entries must be numbers");
        c.delta_grid.push_back(x.get<double>());
      }
    } else {
      fail(ErrorCode::kInvalidArgument, "verify: 'delta' must be a list");
    }
  }
  c.seed = r.seed("seed", 0);
  const std::size_t jobs = r.count("jobs", static_cast<std::size_t>(default_jobs()));
  c.jobs = static_cast<int>(std::max<std::size_t>(1, std::min<std::size_t>(jobs, 1024)));
  r.finish();
  if (t.n == 0 || t.p == 0 || t.k == 0 || t.k > t.p)
    fail(ErrorCode::kInvalidDims, "verify: need n >= 1 and 1 <= k <= p (got k=" + std::to_string(t.k) + ")");
  if (!(t.sigma_x > 0) || !(t.sigma_e >= 0) || !(t.sx > 0) || !(t.sy > 0) || !(t.r > 0) || !(t.sigma > 0))
    fail(ErrorCode::kInvalidArgument, "verify: scale parameters must be positive");
  if (!(t.rho > -1 && t.rho < 1)) fail(ErrorCode::kInvalidArgument, "verify: rho must lie in (-1, 1)");
  if (c.trials < 100) fail(ErrorCode::kInvalidArgument, "verify: trials must be >= 100");
  if (resolved) {
    json o;
    o["claim"] = claim_name(c.claim);
    o["n"] = t.n;
    o["p"] = t.p;
    o["k"] = t.k;
    o["sigma_x"] = t.sigma_x;
    o["sigma_e"] = t.sigma_e;
    o["dependence"] = t.dependence == Dependence::kIndependent ? "independent" : "correlated";
    o["rho"] = t.rho;
    o["r"] = t.r;
    o["sigma"] = t.sigma;
    o["sx"] = t.sx;
    o["sy"] = t.sy;
    o["trials"] = c.trials;
    o["delta"] = c.delta_grid.empty() ? json(nullptr) : ratio_json(c.delta_grid);
    o["seed"] = c.seed;
    *resolved = std::move(o);
  }
  return c;
}

F1Config parse_f1_config(const json& j, json* resolved) {
  Reader r(j, "f1");
  F1Config c;
  c.data = r.get<std::string>("data", "");
  if (r.has("target")) {
    const json& t = r.raw("target");
    c.target = t.is_string() ? t.get<std::string>() : t.dump();
  }
  RealPipelineConfig& p = c.pipeline;
  p.perturbation = parse_perturbation(r.get<std::string>("mode", "gaussian-var"));
  p.noise_frac = r.number("noise_frac", p.noise_frac);
  p.budget_r = r.number("budget_r", p.budget_r);
  p.mix_weight = r.number("mix_weight", p.mix_weight);
  if (r.has("lambda")) p.lambda_policy = parse_lambda_policy(r.raw("lambda"));
  p.conventional_f1 = r.get<bool>("conventional_f1", false);
  c.seed = r.seed("seed", 0);
  read_solver(r, p.solver);
  r.finish();
  if (c.data.empty()) fail(ErrorCode::kInvalidArgument, "f1: 'data' is required");
  if (c.target.empty()) fail(ErrorCode::kInvalidArgument, "f1: 'target' is required");
  if (p.lambda_policy.kind == LambdaPolicyKind::kTwiceLowerBound)
    fail(ErrorCode::kInvalidArgument, "f1: real data has no population bound; use scaled:<c> or a fixed value");
  if (!(p.noise_frac >= 0) || !(p.budget_r >= 0) || p.mix_weight < 0 || p.mix_weight > 1)
    fail(ErrorCode::kInvalidArgument, "f1: perturbation parameters out of range");
  if (resolved) {
    json o;
    o["data"] = c.data;
    o["target"] = c.target;
    o["mode"] = perturbation_name(p.perturbation);
    o["noise_frac"] = p.noise_frac;
    o["budget_r"] = p.budget_r;
    o["mix_weight"] = p.mix_weight;
    o["lambda"] = lambda_policy_json(p.lambda_policy);
    o["conventional_f1"] = p.conventional_f1;
    o["seed"] = c.seed;
    o["solver"] = solver_json(p.solver);
    *resolved = std::move(o);
  }
  return c;
}

}  // namespace adlasso
