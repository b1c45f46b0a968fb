#include "tnc.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "tnc/errors.hpp"
#include "tnc/inverse.hpp"
#include "tnc/report.hpp"
#include "tnc/scenario_config.hpp"
#include "tnc/version.hpp"

namespace {

thread_local std::string g_last_error;

constexpr uint32_t kScenarioMagic = 0x544E4353;  // "TNCS"

template <typename Fn>
tnc_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const tnc::ParseError& e) {
    g_last_error = e.what();
    return TNC_ERROR_PARSE;
  } catch (const tnc::ArgumentError& e) {
    g_last_error = e.what();
    return TNC_ERROR_ARGUMENT;
  } catch (const tnc::UnreachableError& e) {
    g_last_error = e.what();
    return TNC_ERROR_UNREACHABLE;
  } catch (const tnc::NumericError& e) {
    g_last_error = e.what();
    return TNC_ERROR_NUMERIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TNC_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return TNC_ERROR_INTERNAL;
  }
}

std::vector<std::string> collect_overrides(const char* const* overrides,
                                           size_t n) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) {
    if (!overrides || !overrides[i]) {
      throw tnc::ArgumentError("override entry is null");
    }
    out.emplace_back(overrides[i]);
  }
  return out;
}

char* dup_string(const std::string& s) {
  char* p = new (std::nothrow) char[s.size() + 1];
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

struct tnc_scenario_s {
  uint32_t magic = kScenarioMagic;
  tnc::ScenarioFile file;
};

namespace {

const tnc::ScenarioFile& deref(const tnc_scenario* sc) {
  if (!sc || sc->magic != kScenarioMagic) {
    throw tnc::ArgumentError("invalid scenario handle");
  }
  return sc->file;
}

tnc::BoundFamily to_family(tnc_family f) {
  switch (f) {
    case TNC_FAMILY_STATIONARY: return tnc::BoundFamily::stationary;
    case TNC_FAMILY_SOTAT: return tnc::BoundFamily::sotat;
    case TNC_FAMILY_WTB: return tnc::BoundFamily::wtb;
    case TNC_FAMILY_WTB_DELAYED: return tnc::BoundFamily::wtb_delayed;
  }
  throw tnc::ArgumentError("unknown bound family code");
}

void fill_result(const tnc::BoundResult& r, tnc_bound_result* out) {
  if (!out) throw tnc::ArgumentError("result pointer is null");
  out->probability = r.probability;
  out->s_opt = r.s_opt;
  out->raw_log_value = r.raw_log_value;
  out->evaluations = r.evaluations;
  out->at_boundary = r.at_boundary ? 1 : 0;
  out->feasible = r.feasible ? 1 : 0;
}

void fill_points(const tnc::SimEstimate& est, tnc_sim_point* out, size_t n) {
  if (!out) throw tnc::ArgumentError("output array is null");
  if (est.points.size() != n) {
    throw tnc::ArgumentError("sim produced unexpected point count");
  }
  for (size_t i = 0; i < n; ++i) {
    out[i].sweep_value = est.points[i].sweep_value;
    out[i].p_hat = est.points[i].p_hat;
    out[i].ci_lo = est.points[i].ci_lo;
    out[i].ci_hi = est.points[i].ci_hi;
    out[i].trials = est.points[i].trials;
  }
}

tnc::SimConfig sim_config(const tnc::ScenarioFile& file, uint64_t trials,
                          uint64_t seed, int threads) {
  tnc::SimConfig cfg = file.sim;
  if (trials > 0) cfg.trials = trials;
  if (seed > 0) cfg.seed = seed;
  if (threads > 0) cfg.threads = threads;
  return cfg;
}

}  // namespace

extern "C" {

const char* tnc_version(void) { return tnc::kVersion; }

const char* tnc_last_error(void) { return g_last_error.c_str(); }

tnc_status tnc_scenario_load(const char* path, const char* const* overrides,
                             size_t n_overrides, tnc_scenario** out) {
  return guarded([&]() -> tnc_status {
    if (!path || !out) throw tnc::ArgumentError("path/out must not be null");
    auto ov = collect_overrides(overrides, n_overrides);
    auto* sc = new tnc_scenario_s;
    try {
      sc->file = tnc::load_scenario_file(path, ov);
    } catch (...) {
      delete sc;
      throw;
    }
    *out = sc;
    return TNC_OK;
  });
}

tnc_status tnc_scenario_parse(const char* json_text,
                              const char* const* overrides, size_t n_overrides,
                              tnc_scenario** out) {
  return guarded([&]() -> tnc_status {
    if (!json_text || !out) throw tnc::ArgumentError("text/out must not be null");
    auto ov = collect_overrides(overrides, n_overrides);
    auto* sc = new tnc_scenario_s;
    try {
      sc->file = tnc::parse_scenario_text(json_text, ov);
    } catch (...) {
      delete sc;
      throw;
    }
    *out = sc;
    return TNC_OK;
  });
}

void tnc_scenario_free(tnc_scenario* sc) {
  if (sc && sc->magic == kScenarioMagic) {
    sc->magic = 0;
    delete sc;
  }
}

tnc_status tnc_scenario_hash(const tnc_scenario* sc, char* buf, size_t buf_len) {
  return guarded([&]() -> tnc_status {
    const std::string hex = deref(sc).hash_hex();
    if (!buf || buf_len < hex.size() + 1) {
      throw tnc::ArgumentError("hash buffer must hold at least 17 bytes");
    }
    std::memcpy(buf, hex.c_str(), hex.size() + 1);
    return TNC_OK;
  });
}

tnc_status tnc_bound_delay(const tnc_scenario* sc, tnc_family family,
                           int target_delay, tnc_bound_result* out) {
  return guarded([&]() -> tnc_status {
    const tnc::ScenarioFile& file = deref(sc);
    if (target_delay < 0) throw tnc::ArgumentError("target delay must be >= 0");
    fill_result(
        tnc::bound(file.base.with_delay(target_delay), to_family(family)), out);
    return TNC_OK;
  });
}

tnc_status tnc_bound_backlog(const tnc_scenario* sc, double threshold_bits,
                             tnc_bound_result* out) {
  return guarded([&]() -> tnc_status {
    fill_result(tnc::bound_backlog(deref(sc).base, threshold_bits), out);
    return TNC_OK;
  });
}

tnc_status tnc_channel_mean_capacity(const tnc_scenario* sc, double* out_bits) {
  return guarded([&]() -> tnc_status {
    if (!out_bits) throw tnc::ArgumentError("output pointer is null");
    *out_bits = deref(sc).base.channel->mean_capacity();
    return TNC_OK;
  });
}

tnc_status tnc_channel_ln_v(const tnc_scenario* sc, double s, double* out) {
  return guarded([&]() -> tnc_status {
    if (!out) throw tnc::ArgumentError("output pointer is null");
    *out = deref(sc).base.channel->ln_v(s);
    return TNC_OK;
  });
}

tnc_status tnc_sim_delay(const tnc_scenario* sc, const int* w_grid, size_t n,
                         uint64_t trials, uint64_t seed, int threads,
                         tnc_sim_point* out_points) {
  return guarded([&]() -> tnc_status {
    const tnc::ScenarioFile& file = deref(sc);
    if (!w_grid || n == 0) throw tnc::ArgumentError("empty w grid");
    tnc::TandemSimulator sim(file.base, sim_config(file, trials, seed, threads));
    fill_points(sim.violation_by_delay({w_grid, n}), out_points, n);
    return TNC_OK;
  });
}

tnc_status tnc_sim_backlog(const tnc_scenario* sc, const double* x_grid,
                           size_t n, uint64_t trials, uint64_t seed,
                           int threads, tnc_sim_point* out_points) {
  return guarded([&]() -> tnc_status {
    const tnc::ScenarioFile& file = deref(sc);
    if (!x_grid || n == 0) throw tnc::ArgumentError("empty threshold grid");
    tnc::TandemSimulator sim(file.base, sim_config(file, trials, seed, threads));
    fill_points(sim.violation_by_backlog({x_grid, n}), out_points, n);
    return TNC_OK;
  });
}

tnc_status tnc_inverse_delay(const tnc_scenario* sc, tnc_family family,
                             double eps, int* out_w) {
  return guarded([&]() -> tnc_status {
    if (!out_w) throw tnc::ArgumentError("output pointer is null");
    *out_w = tnc::delay_for_epsilon(deref(sc).base, to_family(family), eps);
    return TNC_OK;
  });
}

tnc_status tnc_inverse_snr(const tnc_scenario* sc, tnc_family family,
                           double eps, int target_delay, double* out_snr_db) {
  return guarded([&]() -> tnc_status {
    if (!out_snr_db) throw tnc::ArgumentError("output pointer is null");
    const double snr = tnc::snr_for_epsilon(deref(sc).base, to_family(family),
                                            eps, target_delay);
    *out_snr_db = 10.0 * std::log10(snr);
    return TNC_OK;
  });
}

tnc_status tnc_report_bound(const tnc_scenario* sc, const char* families_csv,
                            char** out_csv) {
  return guarded([&]() -> tnc_status {
    if (!out_csv) throw tnc::ArgumentError("output pointer is null");
    const tnc::ScenarioFile& file = deref(sc);
    const auto fams =
        tnc::parse_family_list(families_csv ? families_csv : "", file);
    const tnc::ReportResult res = tnc::run_bound_report(file, fams);
    if (res.failed_rows == res.total_rows && res.total_rows > 0) {
      throw tnc::NumericError("every sweep row failed: " +
                              (res.warnings.empty() ? std::string("?")
                                                    : res.warnings.front()));
    }
    *out_csv = dup_string(res.csv);
    return TNC_OK;
  });
}

tnc_status tnc_report_simulate(const tnc_scenario* sc, char** out_csv) {
  return guarded([&]() -> tnc_status {
    if (!out_csv) throw tnc::ArgumentError("output pointer is null");
    *out_csv = dup_string(tnc::run_sim_report(deref(sc)).csv);
    return TNC_OK;
  });
}

tnc_status tnc_report_compare(const tnc_scenario* sc, const char* families_csv,
                              char** out_csv, int* out_all_valid) {
  return guarded([&]() -> tnc_status {
    if (!out_csv || !out_all_valid) {
      throw tnc::ArgumentError("output pointer is null");
    }
    const tnc::ScenarioFile& file = deref(sc);
    const auto fams =
        tnc::parse_family_list(families_csv ? families_csv : "", file);
    const tnc::ReportResult res = tnc::run_compare_report(file, fams);
    *out_csv = dup_string(res.csv);
    *out_all_valid = res.all_valid ? 1 : 0;
    return TNC_OK;
  });
}

tnc_status tnc_report_inverse(const tnc_scenario* sc, const char* mode,
                              double eps, const char* families_csv,
                              char** out_csv) {
  return guarded([&]() -> tnc_status {
    if (!out_csv || !mode) throw tnc::ArgumentError("output/mode is null");
    const tnc::ScenarioFile& file = deref(sc);
    const auto fams =
        tnc::parse_family_list(families_csv ? families_csv : "", file);
    *out_csv = dup_string(tnc::run_inverse_report(file, mode, eps, fams).csv);
    return TNC_OK;
  });
}

void tnc_string_free(char* s) { delete[] s; }

}  // extern "C"
