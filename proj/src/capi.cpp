#include "polyspec/polyspec.h"

#include <cstring>
#include <exception>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "bounds.hpp"
#include "eigensolver.hpp"
#include "fourier.hpp"
#include "geometry.hpp"
#include "grid.hpp"
#include "lemma.hpp"
#include "reference_spectra.hpp"
#include "report.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Run `fn`, translating exceptions into status codes + the thread-local
// message.
template <typename Fn>
polyspec_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const polyspec::SolverError& e) {
    g_last_error = e.what();
    return POLYSPEC_ERR_SOLVER;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return POLYSPEC_ERR_INVALID;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return POLYSPEC_ERR_IO;
  }
}

polyspec_status require(bool ok, const char* msg) {
  if (!ok) {
    g_last_error = msg;
    return POLYSPEC_ERR_INVALID;
  }
  return POLYSPEC_OK;
}

}  // namespace

struct polyspec_domain {
  polyspec::DomainSpec spec;
};

struct polyspec_spectrum {
  polyspec::Spectrum data;
};

extern "C" {

const char* polyspec_version(void) { return "0.1.0"; }

const char* polyspec_last_error(void) { return g_last_error.c_str(); }

void polyspec_string_free(char* s) { delete[] s; }

polyspec_status polyspec_domain_from_json(const char* json, const char* base_dir, polyspec_domain** out) {
  if (auto st = require(json && out, "domain_from_json: null argument")) return st;
  return guarded([&] {
    auto spec = polyspec::domain_from_json_text(json, base_dir ? base_dir : "");
    *out = new polyspec_domain{std::move(spec)};
    return POLYSPEC_OK;
  });
}

void polyspec_domain_free(polyspec_domain* d) { delete d; }

polyspec_status polyspec_measure(const polyspec_domain* d, double resolution, polyspec_geometry* out) {
  if (auto st = require(d && out, "measure: null argument")) return st;
  return guarded([&] {
    polyspec::GeometrySummary g =
        resolution > 0.0 ? polyspec::measure(d->spec, resolution) : polyspec::measure(d->spec);
    *out = {};
    out->volume = g.volume;
    for (int i = 0; i < polyspec::kMaxDim; ++i) out->centroid[i] = g.centroid[i];
    out->inertia = g.inertia;
    out->rearranged_radius = g.rearranged_radius;
    out->quad_tolerance = g.quad_tolerance;
    out->dim = d->spec.dim;
    return POLYSPEC_OK;
  });
}

polyspec_status polyspec_unit_ball_volume(int n, double* out) {
  if (auto st = require(out != nullptr, "unit_ball_volume: null output")) return st;
  return guarded([&] {
    *out = polyspec::unit_ball_volume(n);
    return POLYSPEC_OK;
  });
}

polyspec_status polyspec_inertia_floor(int n, double volume, double* out) {
  if (auto st = require(out != nullptr, "inertia_floor: null output")) return st;
  return guarded([&] {
    *out = polyspec::inertia_floor(n, volume);
    return POLYSPEC_OK;
  });
}

polyspec_status polyspec_bound_eval(polyspec_bound_kind kind, int n, int l, double volume, double inertia,
                                    uint64_t k, double* out) {
  if (auto st = require(out != nullptr, "bound_eval: null output")) return st;
  return guarded([&] {
    polyspec::BoundInputs in{n, l, volume, inertia, k};
    switch (kind) {
      case POLYSPEC_BOUND_ASYMPTOTIC_AVERAGE:
        *out = polyspec::asymptotic_leading(in, true).value;
        break;
      case POLYSPEC_BOUND_ASYMPTOTIC_INDIVIDUAL:
        *out = polyspec::asymptotic_leading(in, false).value;
        break;
      case POLYSPEC_BOUND_CLASSICAL_AVERAGE:
        *out = polyspec::classical_average_bound(in).value;
        break;
      case POLYSPEC_BOUND_INDIVIDUAL_KTH:
        *out = polyspec::individual_bound(in).value;
        break;
      case POLYSPEC_BOUND_POLYA:
        *out = polyspec::polya_tiling_bound(in).value;
        break;
      case POLYSPEC_BOUND_MELAS:
        *out = polyspec::melas_average(in).value;
        break;
      case POLYSPEC_BOUND_THEOREM1:
        *out = polyspec::improved_average_bound(in).value;
        break;
      default:
        throw std::invalid_argument("bound_eval: unknown bound kind");
    }
    return POLYSPEC_OK;
  });
}

polyspec_status polyspec_solve(const polyspec_domain* d, double h, int l, int count, int want_vectors,
                               polyspec_spectrum** out) {
  if (auto st = require(d && out, "solve: null argument")) return st;
  return guarded([&] {
    auto grid = polyspec::make_grid(d->spec, h);
    auto spec = polyspec::smallest_eigenvalues(grid, l, count, want_vectors != 0);
    *out = new polyspec_spectrum{std::move(spec)};
    return POLYSPEC_OK;
  });
}

void polyspec_spectrum_free(polyspec_spectrum* s) { delete s; }

polyspec_status polyspec_spectrum_values(const polyspec_spectrum* s, double* buffer, size_t capacity,
                                         size_t* count) {
  if (auto st = require(s && count, "spectrum_values: null argument")) return st;
  *count = s->data.values.size();
  if (!buffer) return POLYSPEC_OK;  // size query
  if (auto st = require(capacity >= s->data.values.size(), "spectrum_values: buffer too small")) return st;
  std::memcpy(buffer, s->data.values.data(), s->data.values.size() * sizeof(double));
  return POLYSPEC_OK;
}

polyspec_status polyspec_spectrum_to_json(const polyspec_spectrum* s, char** out) {
  if (auto st = require(s && out, "spectrum_to_json: null argument")) return st;
  return guarded([&] {
    *out = dup_string(polyspec::spectrum_to_json(s->data));
    return POLYSPEC_OK;
  });
}

polyspec_status polyspec_richardson(const polyspec_spectrum* coarse, const polyspec_spectrum* fine,
                                    double order, polyspec_spectrum** out) {
  if (auto st = require(coarse && fine && out, "richardson: null argument")) return st;
  return guarded([&] {
    auto spec = polyspec::richardson_extrapolate(coarse->data, fine->data, order);
    *out = new polyspec_spectrum{std::move(spec)};
    return POLYSPEC_OK;
  });
}

polyspec_status polyspec_reference_spectrum(const char* shape, double size, int l, int count,
                                            double* buffer) {
  if (auto st = require(shape && buffer, "reference_spectrum: null argument")) return st;
  return guarded([&] {
    std::string s(shape);
    polyspec::ReferenceShape rs;
    if (s == "interval")
      rs = polyspec::ReferenceShape::Interval;
    else if (s == "beam")
      rs = polyspec::ReferenceShape::Beam;
    else if (s == "disk")
      rs = polyspec::ReferenceShape::Disk;
    else
      throw std::invalid_argument("reference_spectrum: shape must be interval, beam or disk");
    auto spec = polyspec::reference_spectrum(rs, size, l, count);
    std::memcpy(buffer, spec.values.data(), spec.values.size() * sizeof(double));
    return POLYSPEC_OK;
  });
}

polyspec_status polyspec_run_report(const char* config_json, const char* base_dir, const char* out_dir,
                                    const char* formats, char** summary_json) {
  if (auto st = require(config_json != nullptr, "run_report: null config")) return st;
  return guarded([&]() -> polyspec_status {
    auto config = polyspec::load_config_text(config_json, base_dir ? base_dir : "");
    auto report = polyspec::run_report(config);

    std::string dir = out_dir ? out_dir : config.out_dir;
    if (!dir.empty()) {
      std::vector<std::string> fmt;
      std::stringstream ss(formats ? formats : "json");
      for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) fmt.push_back(item);
      polyspec::emit(report, dir, fmt);
    }
    if (summary_json) *summary_json = dup_string(polyspec::report_to_json(report));

    switch (report.status) {
      case polyspec::RunStatus::Pass:
        return POLYSPEC_OK;
      case polyspec::RunStatus::BoundViolation:
        g_last_error = report.diagnostics;
        return POLYSPEC_ERR_BOUND_VIOLATION;
      case polyspec::RunStatus::SolverFailure:
        g_last_error = report.diagnostics;
        return POLYSPEC_ERR_SOLVER;
    }
    return POLYSPEC_OK;
  });
}

polyspec_status polyspec_lemma_fuzz(const char* options_json, char** summary_json) {
  return guarded([&]() -> polyspec_status {
    polyspec::FuzzOptions opt;
    if (options_json && *options_json) {
      auto j = nlohmann::json::parse(options_json);
      if (j.contains("seeds")) opt.seeds = j["seeds"].get<std::uint64_t>();
      if (j.contains("b_grid")) opt.b_grid = j["b_grid"].get<std::vector<double>>();
      if (j.contains("l_max")) opt.l_max = j["l_max"].get<int>();
      if (j.contains("eta")) opt.eta = j["eta"].get<double>();
      if (j.contains("psi0")) opt.psi0 = j["psi0"].get<double>();
      if (j.contains("support")) opt.support = j["support"].get<double>();
      if (j.contains("pieces")) opt.pieces = j["pieces"].get<int>();
    }
    auto res = polyspec::lemma1_fuzz(opt);
    if (summary_json) {
      nlohmann::json j{{"trials", res.trials},       {"violations", res.violations},
                       {"worst_margin", res.worst_margin}, {"worst_b", res.worst_b},
                       {"worst_l", res.worst_l},     {"worst_seed", res.worst_seed}};
      *summary_json = dup_string(j.dump());
    }
    if (res.violations > 0) {
      g_last_error = "moment inequality violated for " + std::to_string(res.violations) + " profiles";
      return POLYSPEC_ERR_BOUND_VIOLATION;
    }
    return POLYSPEC_OK;
  });
}

polyspec_status polyspec_fourier_check(const char* config_json, const char* base_dir, double Z, double dz,
                                       char** summary_json) {
  if (auto st = require(config_json != nullptr, "fourier_check: null config")) return st;
  return guarded([&]() -> polyspec_status {
    auto config = polyspec::load_config_text(config_json, base_dir ? base_dir : "");
    if (Z > 0.0) config.fourier.truncation_radius = Z;
    if (dz > 0.0) config.fourier.dz = dz;
    config.checks = {"bounds", "fourier"};
    auto report = polyspec::run_report(config);
    if (summary_json) {
      nlohmann::json checks = nlohmann::json::array();
      for (const auto& c : report.checks)
        checks.push_back(nlohmann::json{{"name", c.name},
                                        {"lhs", c.lhs},
                                        {"rhs", c.rhs},
                                        {"tolerance", c.tolerance},
                                        {"identity", c.identity},
                                        {"passed", c.passed},
                                        {"truncation_estimate", c.truncation_estimate}});
      nlohmann::json j{{"config_hash", report.config_hash}, {"checks", checks}};
      *summary_json = dup_string(j.dump());
    }
    if (report.status == polyspec::RunStatus::SolverFailure) {
      g_last_error = report.diagnostics;
      return POLYSPEC_ERR_SOLVER;
    }
    for (const auto& c : report.checks)
      if (!c.passed) {
        g_last_error = "check failed: " + c.name;
        return POLYSPEC_ERR_BOUND_VIOLATION;
      }
    return POLYSPEC_OK;
  });
}

}  // extern "C"
