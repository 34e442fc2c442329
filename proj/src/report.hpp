#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "eigensolver.hpp"
#include "fourier.hpp"
#include "geometry.hpp"

namespace polyspec {

enum class RunStatus : int { Pass = 0, BoundViolation = 2, SolverFailure = 3 };

struct FourierParams {
  double truncation_radius = 60.0;
  double dz = 0.05;
  int k = 3;
};

/// Parsed and validated run configuration; defaults filled.
struct RunConfig {
  DomainSpec domain;
  int l = 1;
  int k_max = 25;
  std::vector<double> levels;  // coarse -> fine, each level half the previous
  std::set<std::string> checks{"bounds"};
  std::uint64_t seed = 0;
  std::string out_dir;
  FourierParams fourier;
  std::string canonical_text;  // normalized config JSON, input to the hash
};

/// Parse a RunConfig from JSON text. Field-level validation errors; defaults:
/// k_max=25, levels=[h0, h0/2] for a domain-derived h0, checks={bounds}.
RunConfig load_config_text(const std::string& text, const std::string& base_dir = "");

struct BoundRow {
  std::uint64_t k = 1;
  double mean_lambda = 0.0;
  double theorem1 = 0.0;
  double classical = 0.0;
  std::optional<double> melas;  // l = 1 only
  std::optional<double> polya;  // l = 1 only
  double margin_ratio = 0.0;      // mean_lambda / theorem1
  double asymptotic_ratio = 0.0;  // mean_lambda / leading-term average
};

struct RunReport {
  RunStatus status = RunStatus::Pass;
  std::string config_hash;
  std::string domain_label;
  int l = 1;
  double volume = 0.0;
  double inertia = 0.0;
  double geometry_tolerance = 0.0;
  double tol_total = 0.0;  // worst per-row total tolerance actually applied
  bool inertia_flagged = false;
  bool polya_conjectural = false;  // tiling bound reported for a non-tiling domain
  std::vector<BoundRow> rows;
  std::vector<CheckReport> checks;
  Spectrum spectrum;  // extrapolated (or finest) spectrum backing the rows
  std::string diagnostics;
};

/// Solve all grid levels, extrapolate, evaluate every applicable bound for
/// k = 1..k_max, and run the requested check suites. The run fails with
/// BoundViolation if any mean eigenvalue drops below the improved bound by
/// more than the combined extrapolation + geometry tolerance.
RunReport run_report(const RunConfig& config);

/// Deterministic JSON for the report; volatile metadata (timestamp) sits in a
/// separate "metadata" object and is excluded from the config hash.
std::string report_to_json(const RunReport& report, bool with_metadata = true);

/// CSV columns exactly: k, mean_lambda, theorem1, classical, melas, polya,
/// margin_ratio, asymptotic_ratio. Empty cells where inapplicable.
void emit_csv(const RunReport& report, std::ostream& os);

/// Write report files into `dir`. formats: any of csv, json, gnuplot.
/// gnuplot emits one two-column file per series.
void emit(const RunReport& report, const std::string& dir, const std::vector<std::string>& formats);

std::uint64_t fnv1a64(const std::string& text);

}  // namespace polyspec
