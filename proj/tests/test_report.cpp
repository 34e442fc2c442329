#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "report.hpp"

using namespace polyspec;

namespace {
constexpr double kPi = std::numbers::pi;

std::string interval_config(double length, int l, int k_max, double h0) {
  std::ostringstream os;
  os.precision(17);
  os << R"({"domain":{"kind":"interval","length":)" << length << R"(},"l":)" << l
     << R"(,"k_max":)" << k_max << R"(,"levels":[)" << h0 << ',' << 0.5 * h0 << "]}";
  return os.str();
}
}  // namespace

TEST_CASE("minimal config gets defaults") {
  auto c = load_config_text(R"({"domain":{"kind":"interval","length":1},"l":2})");
  CHECK(c.l == 2);
  CHECK(c.k_max == 25);
  REQUIRE(c.levels.size() == 2);
  CHECK(c.levels[0] == doctest::Approx(1.0 / 256));
  CHECK(c.levels[1] == doctest::Approx(1.0 / 512));
  CHECK(c.checks == std::set<std::string>{"bounds"});
}

TEST_CASE("config validation names the offending field") {
  CHECK_THROWS_WITH_AS(load_config_text(R"({"l":1})"), doctest::Contains("domain"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(load_config_text(R"({"domain":{"kind":"interval","length":1},"l":0})"),
                       doctest::Contains("config.l"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      load_config_text(R"({"domain":{"kind":"interval","length":1},"levels":[0.1,0.03]})"),
      doctest::Contains("levels"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      load_config_text(R"({"domain":{"kind":"interval","length":1},"checks":["nonsense"]})"),
      doctest::Contains("checks"), std::invalid_argument);
  // interior at the coarsest level is far too small for k_max
  CHECK_THROWS_WITH_AS(
      load_config_text(R"({"domain":{"kind":"interval","length":1},"k_max":50,"levels":[0.25,0.125]})"),
      doctest::Contains("k_max"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      load_config_text(R"({"domain":{"kind":"mask","file":"missing.pgm","cell":0.1}})"),
      doctest::Contains("missing.pgm"), std::invalid_argument);
}

TEST_CASE("interval run: margins, ordering, l = 1 identities") {
  auto c = load_config_text(interval_config(kPi, 1, 5, kPi / 128));
  auto rep = run_report(c);
  REQUIRE(rep.status == RunStatus::Pass);
  REQUIRE(rep.rows.size() == 5);
  CHECK_FALSE(rep.polya_conjectural);  // intervals tile

  CHECK(rep.rows[0].margin_ratio == doctest::Approx(2.855345).epsilon(5e-3));
  for (const auto& row : rep.rows) {
    CHECK(row.theorem1 > row.classical);
    REQUIRE(row.melas.has_value());
    CHECK(std::abs(row.theorem1 - *row.melas) <= 1e-12 * row.theorem1);
    REQUIRE(row.polya.has_value());
    CHECK(row.mean_lambda >= row.theorem1 - rep.tol_total);
  }
}

TEST_CASE("beam run passes and keeps the strict bound ordering through k = 25") {
  auto c = load_config_text(interval_config(1.0, 2, 25, 1.0 / 128));
  auto rep = run_report(c);
  REQUIRE(rep.status == RunStatus::Pass);
  REQUIRE(rep.rows.size() == 25);
  for (const auto& row : rep.rows) {
    CHECK(row.theorem1 > row.classical);
    CHECK_FALSE(row.melas.has_value());
    CHECK_FALSE(row.polya.has_value());
    CHECK(row.mean_lambda >= row.theorem1);
  }
  CHECK(std::abs(rep.rows[0].mean_lambda - 500.5639) / 500.5639 < 0.01);
}

TEST_CASE("disk runs mark the tiling bound as conjectural") {
  auto c = load_config_text(
      R"({"domain":{"kind":"ball","radius":1.0,"dim":2},"l":1,"k_max":3,"levels":[0.125,0.0625]})");
  auto rep = run_report(c);
  CHECK(rep.polya_conjectural);
  auto j = nlohmann::json::parse(report_to_json(rep, false));
  CHECK(j["polya_conjectural"].get<bool>());
}

TEST_CASE("report JSON is deterministic once metadata is stripped") {
  auto c = load_config_text(interval_config(1.0, 1, 3, 1.0 / 64));
  auto r1 = run_report(c);
  auto r2 = run_report(c);
  CHECK(report_to_json(r1, false) == report_to_json(r2, false));
  CHECK(r1.config_hash == r2.config_hash);

  // metadata carries the timestamp; stripping it recovers the stable text
  auto j = nlohmann::json::parse(report_to_json(r1, true));
  CHECK(j.contains("metadata"));
  j.erase("metadata");
  auto stable = nlohmann::json::parse(report_to_json(r1, false));
  CHECK(j == stable);
}

TEST_CASE("different seeds keep rows identical but change the hash") {
  auto c1 = load_config_text(R"({"domain":{"kind":"interval","length":1},"levels":[0.015625,0.0078125],"seed":1})");
  auto c2 = load_config_text(R"({"domain":{"kind":"interval","length":1},"levels":[0.015625,0.0078125],"seed":2})");
  CHECK(fnv1a64(c1.canonical_text) != fnv1a64(c2.canonical_text));
}

TEST_CASE("csv layout: header, one line per k, empty inapplicable cells") {
  auto c = load_config_text(interval_config(1.0, 2, 3, 1.0 / 64));
  auto rep = run_report(c);
  std::ostringstream os;
  emit_csv(rep, os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "k,mean_lambda,theorem1,classical,melas,polya,margin_ratio,asymptotic_ratio");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.find(",,") != std::string::npos);  // melas and polya are empty at l = 2
  }
  CHECK(rows == 3);
}

TEST_CASE("emit writes the requested files") {
  namespace fs = std::filesystem;
  auto c = load_config_text(interval_config(1.0, 1, 3, 1.0 / 64));
  auto rep = run_report(c);
  std::string dir = "report_emit_test";
  emit(rep, dir, {"csv", "json", "gnuplot"});
  CHECK(fs::exists(dir + "/report.csv"));
  CHECK(fs::exists(dir + "/report.json"));
  CHECK(fs::exists(dir + "/series_mean_lambda.dat"));
  CHECK(fs::exists(dir + "/series_theorem1.dat"));
  CHECK(fs::exists(dir + "/series_melas.dat"));

  auto j = nlohmann::json::parse(std::ifstream(dir + "/report.json"));
  CHECK(j["rows"].size() == 3);
  CHECK(j["status"].get<int>() == 0);

  CHECK_THROWS_AS(emit(rep, dir, {"yaml"}), std::invalid_argument);
  fs::remove_all(dir);
}

TEST_CASE("mask domain end to end: PGM file, subdivided levels, bounds hold") {
  namespace fs = std::filesystem;
  // a blocky cross shape, 12x12 cells of size 1/12
  MaskBitmap m;
  m.width = m.height = 12;
  m.cell = 1.0 / 12;
  m.inside.assign(144, 0);
  for (int j = 0; j < 12; ++j)
    for (int i = 0; i < 12; ++i)
      if ((i >= 4 && i < 8) || (j >= 4 && j < 8)) m.inside[static_cast<std::size_t>(j) * 12 + i] = 1;
  fs::create_directories("mask_run");
  write_pgm(m, "mask_run/cross.pgm");

  std::ostringstream cfg;
  cfg.precision(17);
  cfg << R"({"domain":{"kind":"mask","file":"cross.pgm","cell":)" << m.cell
      << R"(},"l":1,"k_max":4,"levels":[)" << m.cell << ',' << m.cell / 2 << "]}";
  auto c = load_config_text(cfg.str(), "mask_run");
  auto rep = run_report(c);
  CHECK(rep.status == RunStatus::Pass);
  CHECK(rep.volume == doctest::Approx(80.0 / 144.0).epsilon(1e-12));  // 80 marked cells
  CHECK(rep.geometry_tolerance > 0.0);
  for (const auto& row : rep.rows) CHECK(row.mean_lambda >= row.theorem1 - rep.tol_total);
  fs::remove_all("mask_run");
}

TEST_CASE("coarse grids that undershoot the bound exit with a refine hint") {
  // At h = 1/8 the discrete interval spectrum saturates near 4/h^2, so the
  // mean over all seven eigenvalues falls below the k = 7 bound. That is a
  // discretization artifact, reported as a violation with refine guidance.
  auto c = load_config_text(
      R"({"domain":{"kind":"interval","length":1.0},"l":1,"k_max":7,"levels":[0.125]})");
  auto rep = run_report(c);
  CHECK(rep.status == RunStatus::BoundViolation);
  CHECK(rep.diagnostics.find("refine") != std::string::npos);
  CHECK(rep.rows.back().margin_ratio < 1.0);
}

TEST_CASE("fourier + rearrange + lemma1 check suites run inside a report") {
  auto base = interval_config(kPi, 1, 5, kPi / 128);
  auto j = nlohmann::json::parse(base);
  j["checks"] = {"bounds", "fourier", "rearrange", "lemma1"};
  j["fourier"] = {{"Z", 40.0}, {"dz", 0.1}, {"k", 2}};
  auto c = load_config_text(j.dump());
  auto rep = run_report(c);
  CHECK(rep.status == RunStatus::Pass);
  bool saw_parseval = false, saw_rearrange = false, saw_fuzz = false;
  for (const auto& chk : rep.checks) {
    saw_parseval |= chk.name == "parseval_truncated";
    saw_rearrange |= chk.name == "rearranged_moment_random_field";
    saw_fuzz |= chk.name == "lemma_fuzz_violations";
    CHECK(chk.passed);
  }
  CHECK(saw_parseval);
  CHECK(saw_rearrange);
  CHECK(saw_fuzz);
}
