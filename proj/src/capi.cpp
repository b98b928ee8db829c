#include "pqs.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "pqs/family.hpp"
#include "pqs/json_io.hpp"
#include "pqs/report.hpp"
#include "pqs/states.hpp"
#include "pqs/sweep.hpp"

struct pqs_state {
  pqs::DensityMatrix dm;
};

namespace {

using nlohmann::json;

thread_local std::string g_last_error;

pqs_status status_of(pqs::ErrorCode c) {
  switch (c) {
    case pqs::ErrorCode::invalid_arg:
      return PQS_ERR_INVALID_ARG;
    case pqs::ErrorCode::dimension:
      return PQS_ERR_DIMENSION;
    case pqs::ErrorCode::resource:
      return PQS_ERR_RESOURCE;
    case pqs::ErrorCode::parse:
      return PQS_ERR_PARSE;
    case pqs::ErrorCode::io:
      return PQS_ERR_IO;
    case pqs::ErrorCode::numeric:
      return PQS_ERR_NUMERIC;
    case pqs::ErrorCode::unknown_name:
      return PQS_ERR_UNKNOWN_NAME;
  }
  return PQS_ERR_INTERNAL;
}

template <typename F>
pqs_status wrap(F&& f) {
  try {
    f();
    g_last_error.clear();
    return PQS_OK;
  } catch (const pqs::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PQS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return PQS_ERR_INTERNAL;
  }
}

pqs_status arg_error(const std::string& msg) {
  g_last_error = msg;
  return PQS_ERR_INVALID_ARG;
}

pqs::Options options_of(const pqs_options* o) {
  pqs::Options out;
  if (o) {
    if (o->tol > 0.0) out.tol = o->tol;
    out.seed = o->seed;
    if (o->max_dim > 0) out.max_dim = o->max_dim;
  }
  return out;
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

struct GenParams {
  double p = 0.3;
  long d = 2;
  long k = 1;
  long m = 2;
  long shield_dim = 2;
  long dA = 2, dB = 2, dAp = 2, dBp = 2;
};

GenParams parse_params(const char* params_json) {
  GenParams g;
  if (!params_json || !*params_json) return g;
  json j = json::parse(std::string(params_json), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    pqs::fail(pqs::ErrorCode::parse, "params must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number())
      pqs::fail(pqs::ErrorCode::invalid_arg, "parameter " + key +
                                                 " must be numeric");
    if (key == "p")
      g.p = value.get<double>();
    else if (key == "d")
      g.d = value.get<long>();
    else if (key == "k")
      g.k = value.get<long>();
    else if (key == "m")
      g.m = value.get<long>();
    else if (key == "shield_dim")
      g.shield_dim = value.get<long>();
    else if (key == "dA")
      g.dA = value.get<long>();
    else if (key == "dB")
      g.dB = value.get<long>();
    else if (key == "dAp")
      g.dAp = value.get<long>();
    else if (key == "dBp")
      g.dBp = value.get<long>();
    else
      pqs::fail(pqs::ErrorCode::invalid_arg, "unknown parameter " + key);
  }
  return g;
}

pqs::DensityMatrix gen_state(const std::string& name, const GenParams& g,
                             const pqs::Options& opt) {
  if (name == "max-entangled") return pqs::max_entangled(g.d, opt);
  if (name == "gamma-v") return pqs::gamma_V(g.d, opt);
  if (name == "flower") return pqs::flower(g.d, opt);
  if (name == "basic-pdit") {
    if (g.shield_dim < 1)
      pqs::fail(pqs::ErrorCode::invalid_arg, "shield_dim must be positive");
    pqs::guard_dim(g.d * g.d * g.shield_dim, opt.max_dim);
    pqs::Mat sigma = pqs::Mat::Identity(g.shield_dim, g.shield_dim) /
                     static_cast<double>(g.shield_dim);
    return pqs::basic_pdit(
        g.d,
        pqs::DensityMatrix{sigma, pqs::SystemLayout::single(g.shield_dim, "A'"),
                           opt.tol},
        opt);
  }
  if (name == "family") return pqs::family_state(g.p, g.d, g.k, opt);
  if (name == "recurrence")
    return pqs::recurrence_output(g.p, g.d, g.k, g.m, opt);
  if (name == "squeezed-recurrence")
    return pqs::squeezed_recurrence_state(g.p, g.k, g.m, opt);
  if (name == "npt-candidate") return pqs::npt_candidate(g.d, g.k, {0.25, 0.25, 0.25, 0.25}, opt);
  if (name == "random-keyed") {
    long n = g.dA * g.dB * g.dAp * g.dBp;
    if (n < 1) pqs::fail(pqs::ErrorCode::invalid_arg, "dimensions must be positive");
    pqs::guard_dim(n, opt.max_dim);
    pqs::Rng rng(opt.seed);
    return pqs::DensityMatrix{pqs::random_density(n, rng),
                              pqs::SystemLayout::keyed(g.dA, g.dB, g.dAp, g.dBp),
                              opt.tol};
  }
  pqs::fail(pqs::ErrorCode::unknown_name, "unknown state name " + name);
}

}  // namespace

extern "C" {

const char* pqs_last_error(void) { return g_last_error.c_str(); }

void pqs_string_free(char* s) { std::free(s); }

pqs_status pqs_state_gen(const char* name, const char* params_json,
                         const pqs_options* opt, pqs_state** out) {
  if (!name || !out) return arg_error("name and out must be non-null");
  *out = nullptr;
  return wrap([&] {
    GenParams g = parse_params(params_json);
    *out = new pqs_state{gen_state(name, g, options_of(opt))};
  });
}

pqs_status pqs_state_from_json(const char* text, pqs_state** out) {
  if (!text || !out) return arg_error("text and out must be non-null");
  *out = nullptr;
  return wrap([&] { *out = new pqs_state{pqs::matrix_from_json(text)}; });
}

pqs_status pqs_state_to_json(const pqs_state* state, char** out) {
  if (!state || !out) return arg_error("state and out must be non-null");
  *out = nullptr;
  return wrap([&] { *out = dup_string(pqs::matrix_to_json(state->dm)); });
}

pqs_status pqs_state_load(const char* path, pqs_state** out) {
  if (!path || !out) return arg_error("path and out must be non-null");
  *out = nullptr;
  return wrap([&] {
    *out = new pqs_state{pqs::matrix_from_json(pqs::read_text_file(path))};
  });
}

pqs_status pqs_state_save(const pqs_state* state, const char* path) {
  if (!state || !path) return arg_error("state and path must be non-null");
  return wrap(
      [&] { pqs::write_text_file(path, pqs::matrix_to_json(state->dm)); });
}

long pqs_state_dim(const pqs_state* state) {
  return state ? state->dm.dim() : 0;
}

void pqs_state_free(pqs_state* state) { delete state; }

pqs_status pqs_analyze(const pqs_state* state, const pqs_options* opt,
                       char** json_out) {
  if (!state || !json_out) return arg_error("state and json_out must be non-null");
  *json_out = nullptr;
  return wrap([&] {
    *json_out = dup_string(pqs::analyze_report_json(state->dm, options_of(opt)));
  });
}

pqs_status pqs_ccq(const pqs_state* state, const pqs_options* opt,
                   char** json_out) {
  if (!state || !json_out) return arg_error("state and json_out must be non-null");
  *json_out = nullptr;
  return wrap([&] {
    (void)opt;
    *json_out = dup_string(pqs::ccq_to_json(pqs::ccq_of(state->dm)));
  });
}

pqs_status pqs_rates(const pqs_state* state, const char* construction,
                     const pqs_options* opt, char** json_out) {
  if (!state || !json_out) return arg_error("state and json_out must be non-null");
  *json_out = nullptr;
  return wrap([&] {
    *json_out = dup_string(pqs::rate_report_json(
        state->dm, construction ? construction : "", options_of(opt)));
  });
}

pqs_status pqs_family_sweep_csv(const double* ps, long np, const long* ds,
                                long nd, const long* ks, long nk,
                                const long* ms, long nm,
                                const pqs_options* opt, char** csv_out) {
  if (!csv_out) return arg_error("csv_out must be non-null");
  *csv_out = nullptr;
  if ((np > 0 && !ps) || (nd > 0 && !ds) || (nk > 0 && !ks) || (nm > 0 && !ms))
    return arg_error("grid arrays must be non-null when nonempty");
  if (np < 1 || nd < 1 || nk < 1 || nm < 1)
    return arg_error("every grid needs at least one value");
  return wrap([&] {
    std::vector<pqs::SweepRow> rows = pqs::family_sweep(
        std::vector<double>(ps, ps + np), std::vector<long>(ds, ds + nd),
        std::vector<long>(ks, ks + nk), std::vector<long>(ms, ms + nm),
        options_of(opt));
    *csv_out = dup_string(pqs::sweep_csv(rows));
  });
}

pqs_status pqs_verify(uint64_t seed, double tol, char** json_out,
                      int* all_passed) {
  if (!json_out) return arg_error("json_out must be non-null");
  *json_out = nullptr;
  return wrap([&] {
    bool ok = false;
    std::string report =
        pqs::verify_report_json(seed, tol > 0.0 ? tol : 1e-10, &ok);
    *json_out = dup_string(report);
    if (all_passed) *all_passed = ok ? 1 : 0;
  });
}

pqs_status pqs_pqc_demo(long d, long k, const pqs_options* opt,
                        char** text_out) {
  if (!text_out) return arg_error("text_out must be non-null");
  *text_out = nullptr;
  return wrap([&] {
    *text_out = dup_string(pqs::pqc_demo_text(d, k, options_of(opt)));
  });
}

}  // extern "C"
