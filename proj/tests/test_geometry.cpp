#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "geometry.hpp"

using namespace polyspec;

namespace {
constexpr double kPi = std::numbers::pi;

MaskBitmap random_blob_mask(std::uint64_t seed, int size) {
  // Union of random axis-aligned rectangles; at least one cell.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pos(0, size - 1);
  MaskBitmap m;
  m.width = m.height = size;
  m.cell = 1.0 / size;
  m.inside.assign(static_cast<std::size_t>(size) * size, 0);
  int rects = 2 + static_cast<int>(rng() % 4);
  for (int r = 0; r < rects; ++r) {
    int x0 = pos(rng), x1 = pos(rng), y0 = pos(rng), y1 = pos(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    for (int j = y0; j <= y1; ++j)
      for (int i = x0; i <= x1; ++i) m.inside[static_cast<std::size_t>(j) * size + i] = 1;
  }
  m.inside[0] = 1;
  return m;
}
}  // namespace

TEST_CASE("unit ball volumes match the closed forms") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(unit_ball_volume(2) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(unit_ball_volume(0), std::invalid_argument);
}

TEST_CASE("analytic measures: disk, square, interval") {
  auto disk = measure(DomainSpec::ball(1.0, 2));
  CHECK(disk.volume == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(disk.inertia == doctest::Approx(kPi / 2.0).epsilon(1e-14));

  auto square = measure(DomainSpec::box({1.0, 1.0}));
  CHECK(square.volume == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(square.centroid[0] == doctest::Approx(0.5));
  CHECK(square.centroid[1] == doctest::Approx(0.5));
  CHECK(square.inertia == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  auto seg = measure(DomainSpec::interval(kPi));
  CHECK(seg.volume == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(seg.inertia == doctest::Approx(std::pow(kPi, 3) / 12.0).epsilon(1e-14));

  // rearranged radius: the ball of the same volume
  CHECK(disk.rearranged_radius == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(square.rearranged_radius == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-14));
  CHECK(seg.rearranged_radius == doctest::Approx(kPi / 2.0).epsilon(1e-14));
}

TEST_CASE("inertia floor values and the ball equality case") {
  CHECK(inertia_floor(2, kPi) == doctest::Approx(kPi / 2.0).epsilon(1e-14));
  CHECK(inertia_floor(1, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  // Unit square: floor 1/(2 pi) below the true inertia 1/6.
  double floor_sq = inertia_floor(2, 1.0);
  CHECK(floor_sq == doctest::Approx(0.5 / kPi).epsilon(1e-14));
  CHECK(floor_sq < 1.0 / 6.0);

  for (int n = 1; n <= 3; ++n) {
    auto ball = measure(DomainSpec::ball(1.7, n));
    CHECK(ball.inertia == doctest::Approx(inertia_floor(n, ball.volume)).epsilon(1e-10));
  }
}

TEST_CASE("rearrangement inequality for analytic and mask domains") {
  auto check_domain = [](const GeometrySummary& g, int n) {
    CHECK(g.inertia >= inertia_floor(n, g.volume) - g.quad_tolerance - 1e-12 * g.inertia);
  };
  check_domain(measure(DomainSpec::interval(2.5)), 1);
  check_domain(measure(DomainSpec::box({1.0, 3.0})), 2);
  check_domain(measure(DomainSpec::ball(0.7, 2)), 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto spec = DomainSpec::from_mask(random_blob_mask(seed, 24));
    check_domain(measure(spec, spec.mask.cell), 2);
  }
}

TEST_CASE("parallel-axis identity on a mask: centroid minimizes the moment") {
  auto spec = DomainSpec::from_mask(random_blob_mask(7, 20));
  auto g = measure(spec, spec.mask.cell);

  // Quadrature moment about an arbitrary center, same midpoint rule.
  auto moment_about = [&](double ax, double ay) {
    double acc = 0.0;
    double h = spec.mask.cell;
    for (int j = 0; j < spec.mask.height; ++j)
      for (int i = 0; i < spec.mask.width; ++i) {
        if (!spec.mask.at(i, j)) continue;
        double dx = (i + 0.5) * h - ax, dy = (j + 0.5) * h - ay;
        acc += (dx * dx + dy * dy) * h * h;
      }
    return acc;
  };

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> off(-0.4, 0.4);
  for (int trial = 0; trial < 16; ++trial) {
    double ax = g.centroid[0] + off(rng);
    double ay = g.centroid[1] + off(rng);
    double d2 = std::pow(ax - g.centroid[0], 2) + std::pow(ay - g.centroid[1], 2);
    CHECK(moment_about(ax, ay) == doctest::Approx(g.inertia + g.volume * d2).epsilon(1e-9));
  }

  // Brute-force minimization over a grid of centers lands on the centroid.
  double best = 1e300, bx = 0, by = 0;
  for (double ax = -0.2; ax <= 1.2; ax += 0.05)
    for (double ay = -0.2; ay <= 1.2; ay += 0.05) {
      double v = moment_about(ax, ay);
      if (v < best) {
        best = v;
        bx = ax;
        by = ay;
      }
    }
  CHECK(best >= g.inertia - 1e-12);
  CHECK(std::abs(bx - g.centroid[0]) <= 0.05);
  CHECK(std::abs(by - g.centroid[1]) <= 0.05);
}

TEST_CASE("midpoint quadrature converges at first order") {
  auto exact = measure(DomainSpec::ball(1.0, 2));
  auto coarse = measure(DomainSpec::ball(1.0, 2), 1.0 / 32);
  auto fine = measure(DomainSpec::ball(1.0, 2), 1.0 / 64);
  CHECK(std::abs(coarse.volume - exact.volume) < 5.0 / 32);
  CHECK(std::abs(fine.volume - exact.volume) < std::abs(coarse.volume - exact.volume));
  CHECK(std::abs(fine.inertia - exact.inertia) < std::abs(coarse.inertia - exact.inertia));
  CHECK(std::abs(fine.inertia - exact.inertia) < fine.quad_tolerance);
}

TEST_CASE("mask PGM files round-trip") {
  auto mask = random_blob_mask(11, 16);
  std::string path = "geometry_roundtrip.pgm";
  write_pgm(mask, path);
  auto back = read_pgm(path);
  REQUIRE(back.width == mask.width);
  REQUIRE(back.height == mask.height);
  CHECK(back.inside == mask.inside);
  std::remove(path.c_str());
}

TEST_CASE("domain JSON schema") {
  auto d1 = domain_from_json_text(R"({"kind":"interval","length":3.14159})");
  CHECK(d1.kind == DomainKind::Interval);
  auto d2 = domain_from_json_text(R"({"kind":"box","lengths":[1.0,2.0]})");
  CHECK(d2.dim == 2);
  auto d3 = domain_from_json_text(R"({"kind":"ball","radius":1.0,"dim":2})");
  CHECK(d3.radius == 1.0);

  CHECK_THROWS_WITH_AS(domain_from_json_text(R"({"kind":"pentagon"})"),
                       doctest::Contains("unknown kind"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(domain_from_json_text(R"({"length":1.0})"), doctest::Contains("kind"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(domain_from_json_text(R"({"kind":"mask","file":"nope.pgm","cell":0.1})"),
                       doctest::Contains("nope.pgm"), std::invalid_argument);
}

TEST_CASE("invalid domains are rejected") {
  CHECK_THROWS_AS(DomainSpec::interval(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::ball(0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::box({1.0, 0.0}), std::invalid_argument);
  MaskBitmap empty;
  empty.width = empty.height = 4;
  empty.cell = 0.1;
  empty.inside.assign(16, 0);
  CHECK_THROWS_AS(DomainSpec::from_mask(empty), std::invalid_argument);
  CHECK_THROWS_AS(measure(DomainSpec::interval(1.0), -0.5), std::invalid_argument);
}
