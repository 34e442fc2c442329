#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lemma.hpp"
#include "rearrange.hpp"

namespace polyspec {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& field, const std::string& msg) {
  throw std::invalid_argument("config." + field + ": " + msg);
}

double default_coarse_h(const DomainSpec& d) {
  switch (d.kind) {
    case DomainKind::Interval:
      return d.length / 256.0;
    case DomainKind::Box:
      return d.lengths[0] / 64.0;
    case DomainKind::Ball:
      return d.dim == 1 ? d.radius / 256.0 : d.radius / 64.0;
    case DomainKind::Mask:
      return d.mask.cell;
  }
  return 1.0;
}

std::string canonical_config_text(const RunConfig& c) {
  json j;
  j["domain"] = json::parse(domain_to_json_text(c.domain));
  j["l"] = c.l;
  j["k_max"] = c.k_max;
  j["levels"] = c.levels;
  j["checks"] = c.checks;
  j["seed"] = c.seed;
  j["fourier"] = {{"Z", c.fourier.truncation_radius}, {"dz", c.fourier.dz}, {"k", c.fourier.k}};
  return j.dump();
}

json check_to_json(const CheckReport& c) {
  return json{{"name", c.name},
              {"lhs", c.lhs},
              {"rhs", c.rhs},
              {"tolerance", c.tolerance},
              {"identity", c.identity},
              {"passed", c.passed},
              {"truncation_estimate", c.truncation_estimate}};
}

// Worst-case downward shift of the improved bound under the geometry
// quadrature uncertainty: evaluate at the four (V, I) corners.
double bound_geometry_slack(const BoundInputs& in, double rel_uncertainty) {
  if (rel_uncertainty <= 0.0) return 0.0;
  double nominal = improved_average_bound(in).value;
  double lo = nominal;
  for (int sv = -1; sv <= 1; sv += 2)
    for (int si = -1; si <= 1; si += 2) {
      BoundInputs p = in;
      p.volume = in.volume * (1.0 + sv * rel_uncertainty);
      p.inertia = in.inertia * (1.0 + si * rel_uncertainty);
      lo = std::min(lo, improved_average_bound(p).value);
    }
  return nominal - lo;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

RunConfig load_config_text(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
  }
  if (!j.is_object()) config_error("", "top level must be an object");
  if (!j.contains("domain")) config_error("domain", "required field is missing");

  RunConfig c;
  c.domain = domain_from_json_text(j.at("domain").dump(), base_dir);

  if (j.contains("l")) {
    if (!j["l"].is_number_integer() || j["l"].get<int>() < 1) config_error("l", "must be a positive integer");
    c.l = j["l"].get<int>();
  }
  if (j.contains("k_max")) {
    if (!j["k_max"].is_number_integer() || j["k_max"].get<int>() < 1)
      config_error("k_max", "must be a positive integer");
    c.k_max = j["k_max"].get<int>();
  }
  if (j.contains("levels")) {
    if (!j["levels"].is_array() || j["levels"].empty()) config_error("levels", "must be a nonempty array");
    c.levels = j["levels"].get<std::vector<double>>();
    for (double h : c.levels)
      if (!(h > 0.0)) config_error("levels", "grid sizes must be positive");
    std::sort(c.levels.begin(), c.levels.end(), std::greater<>());
    for (std::size_t i = 0; i + 1 < c.levels.size(); ++i)
      if (std::abs(c.levels[i + 1] - 0.5 * c.levels[i]) > 1e-9 * c.levels[i])
        config_error("levels", "each level must halve the previous one");
  } else {
    double h0 = default_coarse_h(c.domain);
    c.levels = {h0, 0.5 * h0};
  }
  if (j.contains("checks")) {
    if (!j["checks"].is_array()) config_error("checks", "must be an array of suite names");
    c.checks.clear();
    for (const auto& s : j["checks"]) {
      std::string name = s.get<std::string>();
      if (name != "bounds" && name != "fourier" && name != "rearrange" && name != "lemma1")
        config_error("checks", "unknown suite '" + name + "'");
      c.checks.insert(name);
    }
  }
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
  if (j.contains("fourier")) {
    const auto& f = j["fourier"];
    if (f.contains("Z")) c.fourier.truncation_radius = f["Z"].get<double>();
    if (f.contains("dz")) c.fourier.dz = f["dz"].get<double>();
    if (f.contains("k")) c.fourier.k = f["k"].get<int>();
    if (!(c.fourier.truncation_radius > 0.0) || !(c.fourier.dz > 0.0) || c.fourier.k < 1)
      config_error("fourier", "Z, dz must be positive and k >= 1");
  }
  c.fourier.k = std::min(c.fourier.k, c.k_max);

  // k_max must be feasible on the coarsest level.
  GridDomain coarse = make_grid(c.domain, c.levels.front());
  if (static_cast<std::size_t>(c.k_max) > coarse.size())
    config_error("k_max", "exceeds the interior size at the coarsest level (" + std::to_string(coarse.size()) + ")");

  c.canonical_text = canonical_config_text(c);
  return c;
}

RunReport run_report(const RunConfig& config) {
  RunReport rep;
  rep.l = config.l;
  rep.domain_label = config.domain.label();
  {
    std::ostringstream hash;
    hash << std::hex << fnv1a64(config.canonical_text);
    rep.config_hash = hash.str();
  }

  GeometrySummary geom = config.domain.analytic() ? measure(config.domain)
                                                  : measure(config.domain, config.domain.mask.cell);
  rep.volume = geom.volume;
  rep.inertia = geom.inertia;
  rep.geometry_tolerance = geom.quad_tolerance;

  const bool want_vectors = config.checks.count("fourier") > 0;

  // Solve every level; the fine discrete spectrum feeds the Fourier checks,
  // the extrapolated one feeds the bound rows.
  std::vector<GridDomain> grids;
  std::vector<Spectrum> spectra;
  try {
    for (std::size_t i = 0; i < config.levels.size(); ++i) {
      double h = i == 0 ? config.levels[i] : grids.back().h * 0.5;  // exact halving of the realized h
      grids.push_back(make_grid(config.domain, h));
      bool vectors_here = want_vectors && i + 1 == config.levels.size();
      spectra.push_back(smallest_eigenvalues(grids.back(), config.l, config.k_max, vectors_here));
    }
  } catch (const SolverError& e) {
    rep.status = RunStatus::SolverFailure;
    rep.diagnostics = e.what();
    return rep;
  }

  Spectrum final_spectrum = spectra.back();
  if (spectra.size() >= 2) {
    // First-order extrapolation unless the discretization is boundary-exact:
    // 1-d grids align with interval ends, box grids with their edges. The
    // staircase boundary of 2-d balls and masks converges at first order.
    bool boundary_exact = config.domain.kind == DomainKind::Interval ||
                          config.domain.kind == DomainKind::Box ||
                          (config.domain.kind == DomainKind::Ball && config.domain.dim == 1);
    double order = (config.l == 1 && boundary_exact) ? 2.0 : 1.0;
    final_spectrum = richardson_extrapolate(spectra[spectra.size() - 2], spectra.back(), order);
  }
  rep.spectrum = final_spectrum;

  BoundInputs base{config.domain.dim, config.l, geom.volume, geom.inertia, 1};
  rep.inertia_flagged = base.inertia_below_floor();
  // Intervals and boxes tile; for anything else the tiling bound is the
  // conjectured inequality and the report says so.
  rep.polya_conjectural = config.l == 1 && config.domain.kind != DomainKind::Interval &&
                          config.domain.kind != DomainKind::Box;
  // Relative geometry uncertainty from the quadrature tolerance, clamped so
  // the perturbed corner inputs stay positive (very coarse masks can have a
  // tolerance wider than the inertia itself; the bound check is then vacuous
  // until the grid refines).
  const double rel_geom =
      geom.quad_tolerance > 0.0 ? std::min(0.9, geom.quad_tolerance / geom.inertia) : 0.0;

  double mean_err_acc = 0.0;
  double lambda_acc = 0.0;
  for (int k = 1; k <= config.k_max; ++k) {
    BoundInputs in = base;
    in.k = static_cast<std::uint64_t>(k);
    lambda_acc += final_spectrum.values[k - 1];
    if (!final_spectrum.error_estimates.empty()) mean_err_acc += final_spectrum.error_estimates[k - 1];

    BoundRow row;
    row.k = in.k;
    row.mean_lambda = lambda_acc / k;
    row.theorem1 = improved_average_bound(in).value;
    row.classical = classical_average_bound(in).value;
    if (config.l == 1) {
      row.melas = melas_average(in).value;
      row.polya = polya_tiling_bound(in).value;
    }
    row.margin_ratio = row.mean_lambda / row.theorem1;
    row.asymptotic_ratio = row.mean_lambda / asymptotic_leading(in, true).value;
    rep.rows.push_back(row);

    double tol_k = mean_err_acc / k + bound_geometry_slack(in, rel_geom);
    rep.tol_total = std::max(rep.tol_total, tol_k);
    if (row.mean_lambda < row.theorem1 - tol_k) {
      rep.status = RunStatus::BoundViolation;
      std::ostringstream os;
      os << "mean of first " << k << " eigenvalues " << row.mean_lambda << " fell below the bound "
         << row.theorem1 << " (tolerance " << tol_k << "); refine the grid levels";
      rep.diagnostics = os.str();
    }
  }

  if (config.checks.count("fourier") > 0) {
    const GridDomain& fine = grids.back();
    const Spectrum& discrete = spectra.back();
    double err_est = 0.0;
    for (int j = 0; j < config.fourier.k; ++j)
      err_est += final_spectrum.error_estimates.empty() ? 0.0 : final_spectrum.error_estimates[j];

    PointwiseOptions popt;
    popt.k = config.fourier.k;
    popt.samples = 200;
    popt.seed = config.seed + 1;
    popt.tol_q = 5.0 * (err_est + config.fourier.dz * config.fourier.dz * config.fourier.k);
    auto pointwise = check_pointwise_bounds(fine, discrete, geom, popt);
    rep.checks.insert(rep.checks.end(), pointwise.begin(), pointwise.end());

    GlobalCheckOptions gopt;
    gopt.k = config.fourier.k;
    gopt.truncation_radius = config.fourier.truncation_radius;
    gopt.dz = config.fourier.dz;
    gopt.err_est = err_est;
    auto global = check_global_identities(fine, discrete, geom, gopt);
    rep.checks.insert(rep.checks.end(), global.begin(), global.end());
  }

  if (config.checks.count("rearrange") > 0) {
    // Moment inequality for a seeded random field on the fine grid.
    const GridDomain& fine = grids.back();
    std::mt19937_64 rng(config.seed + 2);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> values(fine.size());
    for (auto& v : values) v = uni(rng);
    auto field = field_from_grid(fine, values);
    auto rr = rearrange(field, config.l);
    double physical = field_moment(field, config.l);
    double rebin = rebin_tolerance(field, config.l);
    rep.checks.push_back(CheckReport::inequality("rearranged_moment_random_field", rr.radial_moment, physical, rebin));
    double resum = 0.0;
    for (double v : values) resum += v;
    resum *= field.cell_volume;
    rep.checks.push_back(CheckReport::identity_check("rearranged_mass_random_field", rr.mass, resum, 1e-12 * resum));
  }

  if (config.checks.count("lemma1") > 0) {
    FuzzOptions fopt;
    fopt.seeds = 200;
    auto fr = lemma1_fuzz(fopt);
    auto row = CheckReport::inequality("lemma_fuzz_violations", static_cast<double>(fr.violations), 0.0, 0.0);
    row.truncation_estimate = fr.worst_margin;
    rep.checks.push_back(row);
  }

  for (const auto& c : rep.checks)
    if (!c.passed && rep.status == RunStatus::Pass) {
      rep.status = RunStatus::BoundViolation;
      rep.diagnostics = "check failed: " + c.name;
    }
  return rep;
}

std::string report_to_json(const RunReport& report, bool with_metadata) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row{{"k", r.k},
             {"mean_lambda", r.mean_lambda},
             {"theorem1", r.theorem1},
             {"classical", r.classical},
             {"margin_ratio", r.margin_ratio},
             {"asymptotic_ratio", r.asymptotic_ratio}};
    row["melas"] = r.melas.has_value() ? json(*r.melas) : json(nullptr);
    row["polya"] = r.polya.has_value() ? json(*r.polya) : json(nullptr);
    rows.push_back(row);
  }
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back(check_to_json(c));

  json j{{"config_hash", report.config_hash},
         {"domain", report.domain_label},
         {"l", report.l},
         {"volume", report.volume},
         {"inertia", report.inertia},
         {"geometry_tolerance", report.geometry_tolerance},
         {"tol_total", report.tol_total},
         {"inertia_flagged", report.inertia_flagged},
         {"polya_conjectural", report.polya_conjectural},
         {"status", static_cast<int>(report.status)},
         {"rows", rows},
         {"checks", checks},
         {"spectrum", json::parse(spectrum_to_json(report.spectrum))},
         {"diagnostics", report.diagnostics}};
  if (with_metadata) {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&now));
    j["metadata"] = {{"generated_at", buf}, {"version", "0.1.0"}};
  }
  return j.dump(2);
}

void emit_csv(const RunReport& report, std::ostream& os) {
  os << "k,mean_lambda,theorem1,classical,melas,polya,margin_ratio,asymptotic_ratio\n";
  os.precision(12);
  for (const auto& r : report.rows) {
    os << r.k << ',' << r.mean_lambda << ',' << r.theorem1 << ',' << r.classical << ',';
    if (r.melas) os << *r.melas;
    os << ',';
    if (r.polya) os << *r.polya;
    os << ',' << r.margin_ratio << ',' << r.asymptotic_ratio << '\n';
  }
}

void emit(const RunReport& report, const std::string& dir, const std::vector<std::string>& formats) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("emit: cannot create output directory " + dir);

  auto open = [&](const std::string& name) {
    std::ofstream out(dir + "/" + name);
    if (!out) throw std::runtime_error("emit: cannot write " + dir + "/" + name);
    return out;
  };

  for (const auto& f : formats) {
    if (f == "csv") {
      auto out = open("report.csv");
      emit_csv(report, out);
    } else if (f == "json") {
      auto out = open("report.json");
      out << report_to_json(report) << '\n';
    } else if (f == "gnuplot") {
      struct Series {
        const char* name;
        std::function<std::optional<double>(const BoundRow&)> get;
      };
      const Series series[] = {
          {"mean_lambda", [](const BoundRow& r) { return std::optional<double>(r.mean_lambda); }},
          {"theorem1", [](const BoundRow& r) { return std::optional<double>(r.theorem1); }},
          {"classical", [](const BoundRow& r) { return std::optional<double>(r.classical); }},
          {"melas", [](const BoundRow& r) { return r.melas; }},
          {"polya", [](const BoundRow& r) { return r.polya; }},
      };
      for (const auto& s : series) {
        bool any = false;
        for (const auto& r : report.rows) any = any || s.get(r).has_value();
        if (!any) continue;
        auto out = open(std::string("series_") + s.name + ".dat");
        out.precision(12);
        for (const auto& r : report.rows)
          if (auto v = s.get(r)) out << r.k << ' ' << *v << '\n';
      }
    } else {
      throw std::invalid_argument("emit: unknown format '" + f + "'");
    }
  }
}

}  // namespace polyspec
