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

#include "adlasso/adlasso.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "adlasso/commands.hpp"
#include "adlasso/error.hpp"

struct adl_instance {
  adlasso::ProblemInstance inst;
  adlasso::json config;
};

struct adl_solution {
  adlasso::LassoSolution sol;
  adlasso::json report;
};

namespace {

thread_local std::string g_last_error;

adl_status set_error(adl_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs fn, translating exceptions into status codes.
template <typename F>
adl_status guarded(F&& fn) {
  g_last_error.clear();
  try {
    fn();
    return ADL_OK;
  } catch (const adlasso::Error& e) {
    return set_error(static_cast<adl_status>(static_cast<int>(e.code())), e.what());
  } catch (const adlasso::json::exception& e) {
    return set_error(ADL_E_PARSE_ERROR, std::string("ParseError: ") + e.what());
  } catch (const std::bad_alloc&) {
    return set_error(ADL_E_INTERNAL, "Internal: out of memory");
  } catch (const std::exception& e) {
    return set_error(ADL_E_INTERNAL, std::string("Internal: ") + e.what());
  }
}

adlasso::json parse_config(const char* text) {
  if (text == nullptr || *text == '\0') return adlasso::json::object();
  try {
    return adlasso::json::parse(text);
  } catch (const adlasso::json::exception& e) {
    adlasso::fail(adlasso::ErrorCode::kParseError, std::string("config is not valid JSON: ") + e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (p == nullptr) adlasso::fail(adlasso::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* adl_version(void) { return "1.0.0"; }

const char* adl_status_string(adl_status status) {
  if (status == ADL_OK) return "Ok";
  if (status < ADL_E_INVALID_ARGUMENT || status > ADL_E_INTERNAL) return "Unknown";
  return adlasso::error_tag(static_cast<adlasso::ErrorCode>(static_cast<int>(status)));
}

const char* adl_last_error(void) { return g_last_error.c_str(); }

void adl_string_free(char* s) { std::free(s); }

adl_status adl_config_check(const char* kind, const char* config_json, char** resolved) {
  return guarded([&] {
    require(kind, "kind");
    const adlasso::json j = parse_config(config_json);
    adlasso::json r;
    const std::string k = kind;
    if (k == "gen") {
      adlasso::parse_gen_config(j, &r);
    } else if (k == "solve") {
      adlasso::parse_solve_config(j, &r);
    } else if (k == "sweep") {
      adlasso::parse_sweep_config(j, &r);
    } else if (k == "verify") {
      adlasso::parse_verify_config(j, &r);
    } else if (k == "f1") {
      adlasso::parse_f1_config(j, &r);
    } else {
      adlasso::fail(adlasso::ErrorCode::kInvalidArgument, "unknown config kind '" + k + "'");
    }
    if (resolved) *resolved = dup_string(r.dump());
  });
}

adl_status adl_instance_generate(const char* config_json, adl_instance** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    adlasso::json resolved;
    const adlasso::SyntheticConfig cfg = adlasso::parse_gen_config(parse_config(config_json), &resolved);
    auto* h = new adl_instance{adlasso::generate_synthetic(cfg), std::move(resolved)};
    *out = h;
  });
}

adl_status adl_instance_load(const char* dir, adl_instance** out) {
  return guarded([&] {
    require(dir, "dir");
    require(out, "out");
    *out = nullptr;
    adlasso::json manifest;
    adlasso::ProblemInstance inst = adlasso::load_instance(dir, &manifest);
    *out = new adl_instance{std::move(inst), manifest.value("config", adlasso::json::object())};
  });
}

adl_status adl_instance_save(const adl_instance* inst, const char* dir, const char* config_json) {
  return guarded([&] {
    require(inst, "instance");
    require(dir, "dir");
    const adlasso::json cfg = config_json ? parse_config(config_json) : inst->config;
    adlasso::save_instance(inst->inst, dir, cfg);
  });
}

adl_status adl_instance_dims(const adl_instance* inst, size_t* n, size_t* p) {
  return guarded([&] {
    require(inst, "instance");
    if (n) *n = inst->inst.n();
    if (p) *p = inst->inst.p();
  });
}

int adl_instance_has_truth(const adl_instance* inst) { return inst != nullptr && inst->inst.truth.has_value(); }

void adl_instance_free(adl_instance* inst) { delete inst; }

adl_status adl_solve(const adl_instance* inst, const char* opts_json, adl_solution** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    *out = nullptr;
    const adlasso::SolveConfig cfg = adlasso::parse_solve_config(parse_config(opts_json));
    auto h = std::make_unique<adl_solution>();
    h->report = adlasso::solve_report(inst->inst, cfg, &h->sol);
    *out = h.release();
  });
}

adl_status adl_solution_json(const adl_solution* sol, char** out) {
  return guarded([&] {
    require(sol, "solution");
    require(out, "out");
    *out = dup_string(sol->report.dump(2));
  });
}

adl_status adl_solution_coefficients(const adl_solution* sol, double* out, size_t len, size_t* p_out) {
  return guarded([&] {
    require(sol, "solution");
    const auto& w = sol->sol.w_hat;
    if (p_out) *p_out = w.size();
    if (len > 0) require(out, "out");
    for (size_t i = 0; i < len && i < w.size(); ++i) out[i] = w[i];
  });
}

double adl_solution_lambda(const adl_solution* sol) { return sol ? sol->sol.lambda : 0.0; }

void adl_solution_free(adl_solution* sol) { delete sol; }

adl_status adl_sweep(const char* config_json, char** csv, char** manifest_json) {
  return guarded([&] {
    require(csv, "csv");
    const adlasso::TextReport r = adlasso::sweep_command(parse_config(config_json));
    *csv = dup_string(r.body);
    if (manifest_json) *manifest_json = dup_string(r.manifest.dump(2));
  });
}

adl_status adl_verify(const char* config_json, char** csv, char** summary_json) {
  return guarded([&] {
    require(csv, "csv");
    const adlasso::TextReport r = adlasso::verify_command(parse_config(config_json));
    *csv = dup_string(r.body);
    if (summary_json) *summary_json = dup_string(r.manifest.dump(2));
  });
}

adl_status adl_f1(const char* config_json, char** report_json) {
  return guarded([&] {
    require(report_json, "report");
    *report_json = dup_string(adlasso::f1_command(parse_config(config_json)).dump(2));
  });
}

}  // extern "C"
