// polyspec command line: verification runs, formula evaluation and fuzz
// campaigns over the shared-library C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyspec/polyspec.h"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot read " << path << "\n";
    std::exit(1);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string parent_dir(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

int status_to_exit(polyspec_status st) {
  switch (st) {
    case POLYSPEC_OK:
      return 0;
    case POLYSPEC_ERR_BOUND_VIOLATION:
      return 2;
    case POLYSPEC_ERR_SOLVER:
      return 3;
    default:
      return 1;
  }
}

void print_error(polyspec_status st) {
  if (st != POLYSPEC_OK) std::cerr << "polyspec: " << polyspec_last_error() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polyspec: eigenvalue lower-bound verification toolkit"};
  app.require_subcommand(1);

  // run
  std::string run_config, run_out, run_formats = "csv,json";
  auto* run = app.add_subcommand("run", "solve a config and compare spectra against every bound");
  run->add_option("--config", run_config, "run configuration JSON file")->required();
  run->add_option("--out", run_out, "output directory for report files");
  run->add_option("--format", run_formats, "comma-separated: csv,json,gnuplot");

  // bounds
  int b_n = 1, b_l = 1;
  std::uint64_t b_k = 1;
  double b_volume = 1.0, b_inertia = 0.0;
  auto* bounds = app.add_subcommand("bounds", "evaluate the closed-form bounds, no solve");
  bounds->add_option("--n", b_n, "space dimension")->required();
  bounds->add_option("--l", b_l, "operator order")->required();
  bounds->add_option("--V", b_volume, "domain volume")->required();
  bounds->add_option("--I", b_inertia, "moment of inertia about the centroid")->required();
  bounds->add_option("--k", b_k, "eigenvalue index")->required();

  // lemma1-fuzz
  std::uint64_t f_seeds = 1000;
  int f_lmax = 4, f_pieces = 8;
  double f_eta = 1.0;
  std::vector<double> f_bgrid;
  std::string f_report;
  auto* fuzz = app.add_subcommand("lemma1-fuzz", "fuzz the decreasing-profile moment inequality");
  fuzz->add_option("--seeds", f_seeds, "number of sampled profiles");
  fuzz->add_option("--b-grid", f_bgrid, "b exponents to test (default 1 1.5 2 3 5)");
  fuzz->add_option("--l-max", f_lmax, "test l = 1..l_max");
  fuzz->add_option("--eta", f_eta, "profile slope bound");
  fuzz->add_option("--pieces", f_pieces, "segments per sampled profile");
  fuzz->add_option("--report", f_report, "write the JSON summary to this file");

  // fourier-check
  std::string fc_config;
  double fc_Z = 0.0, fc_dz = 0.0;
  std::string fc_out;
  auto* fourier = app.add_subcommand("fourier-check", "transform-side inequality checks for a config");
  fourier->add_option("--config", fc_config, "run configuration JSON file")->required();
  fourier->add_option("--Z", fc_Z, "truncation radius");
  fourier->add_option("--dz", fc_dz, "frequency grid step");
  fourier->add_option("--out", fc_out, "write the JSON summary to this file");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    std::string config = read_file(run_config);
    char* summary = nullptr;
    polyspec_status st = polyspec_run_report(config.c_str(), parent_dir(run_config).c_str(),
                                             run_out.empty() ? nullptr : run_out.c_str(),
                                             run_formats.c_str(), &summary);
    if (summary) {
      std::cout << summary << "\n";
      polyspec_string_free(summary);
    }
    print_error(st);
    return status_to_exit(st);
  }

  if (bounds->parsed()) {
    double floor = 0.0;
    if (polyspec_inertia_floor(b_n, b_volume, &floor) == POLYSPEC_OK && b_inertia < floor)
      std::cerr << "warning: I=" << b_inertia << " is below the rearrangement floor " << floor
                << " for this volume; no domain realizes these inputs\n";
    struct Row {
      const char* name;
      polyspec_bound_kind kind;
      bool l1_only;
    };
    const Row rows[] = {
        {"theorem1", POLYSPEC_BOUND_THEOREM1, false},
        {"classical", POLYSPEC_BOUND_CLASSICAL_AVERAGE, false},
        {"melas", POLYSPEC_BOUND_MELAS, true},
        {"polya", POLYSPEC_BOUND_POLYA, true},
        {"individual_kth", POLYSPEC_BOUND_INDIVIDUAL_KTH, false},
        {"asymptotic_average", POLYSPEC_BOUND_ASYMPTOTIC_AVERAGE, false},
        {"asymptotic_individual", POLYSPEC_BOUND_ASYMPTOTIC_INDIVIDUAL, false},
    };
    for (const auto& row : rows) {
      if (row.l1_only && b_l != 1) continue;
      double value = 0.0;
      polyspec_status st = polyspec_bound_eval(row.kind, b_n, b_l, b_volume, b_inertia, b_k, &value);
      if (st != POLYSPEC_OK) {
        print_error(st);
        return status_to_exit(st);
      }
      std::printf("%-22s %.12g\n", row.name, value);
    }
    return 0;
  }

  if (fuzz->parsed()) {
    std::ostringstream opt;
    opt << "{\"seeds\":" << f_seeds << ",\"l_max\":" << f_lmax << ",\"eta\":" << f_eta
        << ",\"pieces\":" << f_pieces;
    if (!f_bgrid.empty()) {
      opt << ",\"b_grid\":[";
      for (std::size_t i = 0; i < f_bgrid.size(); ++i) opt << (i ? "," : "") << f_bgrid[i];
      opt << "]";
    }
    opt << "}";
    char* summary = nullptr;
    polyspec_status st = polyspec_lemma_fuzz(opt.str().c_str(), &summary);
    if (summary) {
      if (!f_report.empty()) {
        std::ofstream out(f_report);
        out << summary << "\n";
      }
      std::cout << summary << "\n";
      polyspec_string_free(summary);
    }
    print_error(st);
    return status_to_exit(st);
  }

  if (fourier->parsed()) {
    std::string config = read_file(fc_config);
    char* summary = nullptr;
    polyspec_status st =
        polyspec_fourier_check(config.c_str(), parent_dir(fc_config).c_str(), fc_Z, fc_dz, &summary);
    if (summary) {
      if (!fc_out.empty()) {
        std::ofstream out(fc_out);
        out << summary << "\n";
      }
      std::cout << summary << "\n";
      polyspec_string_free(summary);
    }
    print_error(st);
    return status_to_exit(st);
  }

  return 0;
}
