#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bounds.hpp"
#include "geometry.hpp"

using namespace polyspec;

namespace {
constexpr double kPi = std::numbers::pi;

BoundInputs random_inputs(std::mt19937_64& rng, int l) {
  std::uniform_int_distribution<int> dim(1, 10);
  std::uniform_real_distribution<double> vol(0.1, 50.0);
  std::uniform_int_distribution<std::uint64_t> idx(1, 1000);
  BoundInputs in;
  in.n = dim(rng);
  in.l = l;
  in.volume = vol(rng);
  in.inertia = inertia_floor(in.n, in.volume) * std::uniform_real_distribution<double>(1.0, 20.0)(rng);
  in.k = idx(rng);
  return in;
}
}  // namespace

TEST_CASE("Weyl leading term worked values") {
  // n=1, l=1, V=pi: (2pi)^2/(B_1 V)^2 = 1, so the individual term is k^2.
  CHECK(asymptotic_leading({1, 1, kPi, 1.0, 5}, false).value == doctest::Approx(25.0).epsilon(1e-12));
  // n=2, l=2, V=pi: (B_2 V)^(4/2) = pi^4.
  CHECK(asymptotic_leading({2, 2, kPi, 1.0, 1}, true).value ==
        doctest::Approx(16.0 / 3.0).epsilon(1e-12));
  CHECK(asymptotic_leading({2, 1, kPi, 1.0, 1}, false).value == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("averaged bound worked values") {
  CHECK(classical_average_bound({1, 1, kPi, 1.0, 3}).value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(classical_average_bound({2, 2, kPi, 1.0, 1}).value == doctest::Approx(16.0 / 3.0).epsilon(1e-12));
  // Unit disk, l=1, k=1: bound 2 sits below the true 5.7832.
  CHECK(classical_average_bound({2, 1, kPi, kPi / 2.0, 1}).value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("individual bound carries the averaged value") {
  auto avg = classical_average_bound({1, 1, kPi, 1.0, 3});
  auto ind = individual_bound({1, 1, kPi, 1.0, 3});
  CHECK(ind.value == avg.value);
  CHECK(ind.kind == BoundKind::IndividualKth);
  // Clamped beam: (1/5)(2pi)^4/2^4 = 16 pi^4/80, far below lambda_1 = 500.56.
  double beam = individual_bound({1, 2, 1.0, 1.0 / 12.0, 1}).value;
  CHECK(beam == doctest::Approx(16.0 * std::pow(kPi, 4) / 80.0).epsilon(1e-12));
  CHECK(beam < 500.56);
}

TEST_CASE("tiling bound") {
  CHECK(polya_tiling_bound({1, 1, kPi, 1.0, 4}).value == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(polya_tiling_bound({2, 1, 1.0, 1.0, 1}).value == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  CHECK(polya_tiling_bound({2, 1, kPi, 1.0, 1}).value == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(polya_tiling_bound({1, 2, 1.0, 1.0, 1}), std::invalid_argument);
}

TEST_CASE("volume/inertia correction term worked values") {
  // Interval (0,pi): 1/3 + 1/(6 pi^2).
  double seg = melas_average({1, 1, kPi, std::pow(kPi, 3) / 12.0, 1}).value;
  CHECK(seg == doctest::Approx(1.0 / 3.0 + 1.0 / (6.0 * kPi * kPi)).epsilon(1e-12));
  // Unit disk: 2 + 1/48.
  double disk = melas_average({2, 1, kPi, kPi / 2.0, 1}).value;
  CHECK(disk == doctest::Approx(2.0 + 1.0 / 48.0).epsilon(1e-12));
  CHECK_THROWS_AS(melas_average({1, 2, 1.0, 1.0, 1}), std::invalid_argument);

  std::mt19937_64 rng(42);
  for (int t = 0; t < 200; ++t) {
    auto in = random_inputs(rng, 1);
    CHECK(melas_average(in).value > classical_average_bound(in).value);
  }
}

TEST_CASE("improved bound reduces to the l=1 correction exactly") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10000; ++t) {
    auto in = random_inputs(rng, 1);
    double a = improved_average_bound(in).value;
    double b = melas_average(in).value;
    CHECK(std::abs(a - b) <= 1e-12 * std::max(a, b));
  }
}

TEST_CASE("improved bound for the clamped beam, independent evaluation") {
  // n=1, l=2, V=1, I=1/12. Term by term with B_1 = 2:
  //   leading: (1/5) (2pi)^4/(2)^4            = pi^4/5
  //   p=1:     (1/5) 2/(24*1) * 4pi^2/4 * 12  = pi^2/5
  //   p=2:     (1/5) 1/(24^2*1*3) * 144       = (1/12)/5
  double expected = (std::pow(kPi, 4) + kPi * kPi + 1.0 / 12.0) / 5.0;
  double got = improved_average_bound({1, 2, 1.0, 1.0 / 12.0, 1}).value;
  CHECK(got == doctest::Approx(expected).epsilon(1e-13));
  CHECK(got < 500.56);  // respected by the true spectrum
}

TEST_CASE("improved bound decomposes as classical plus the correction sum") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    int l = 1 + static_cast<int>(rng() % 4);
    auto in = random_inputs(rng, l);
    double sum = improvement_term(in);
    CHECK(sum > 0.0);
    CHECK(improved_average_bound(in).value ==
          doctest::Approx(classical_average_bound(in).value + sum).epsilon(1e-13));
    CHECK(improved_average_bound(in).value > classical_average_bound(in).value);
  }
}

TEST_CASE("average bounds increase strictly in k") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    int l = 1 + static_cast<int>(rng() % 3);
    auto in = random_inputs(rng, l);
    auto next = in;
    next.k = in.k + 1;
    CHECK(improved_average_bound(next).value > improved_average_bound(in).value);
    CHECK(classical_average_bound(next).value > classical_average_bound(in).value);
  }
}

TEST_CASE("bounds obey the eigenvalue scaling law") {
  // Omega -> c Omega maps V -> c^n V, I -> c^(n+2) I and every bound by c^(-2l).
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> scale(0.2, 5.0);
  for (int t = 0; t < 500; ++t) {
    int l = 1 + static_cast<int>(rng() % 4);
    auto in = random_inputs(rng, l);
    double c = scale(rng);
    BoundInputs scaled = in;
    scaled.volume = in.volume * std::pow(c, in.n);
    scaled.inertia = in.inertia * std::pow(c, in.n + 2);
    double factor = std::pow(c, -2.0 * l);
    CHECK(improved_average_bound(scaled).value ==
          doctest::Approx(improved_average_bound(in).value * factor).epsilon(1e-12));
    CHECK(classical_average_bound(scaled).value ==
          doctest::Approx(classical_average_bound(in).value * factor).epsilon(1e-12));
    if (l == 1)
      CHECK(melas_average(scaled).value == doctest::Approx(melas_average(in).value * factor).epsilon(1e-12));
  }
}

TEST_CASE("gamma constant stays below one half through n = 50") {
  for (int n = 1; n <= 50; ++n) {
    CHECK(weyl_gamma_ratio(n) < 0.5);
    CHECK(std::pow(unit_ball_volume(n), 4.0 / n) < 2.0 * kPi * kPi);
  }
}

TEST_CASE("impossible inertia is flagged but still evaluates") {
  BoundInputs in{2, 1, kPi, 0.1, 1};  // floor is pi/2
  CHECK(in.inertia_below_floor());
  CHECK(std::isfinite(improved_average_bound(in).value));
  BoundInputs ok{2, 1, kPi, kPi / 2.0, 1};
  CHECK_FALSE(ok.inertia_below_floor());
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(classical_average_bound({0, 1, 1.0, 1.0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(classical_average_bound({1, 0, 1.0, 1.0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(classical_average_bound({1, 1, -1.0, 1.0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(classical_average_bound({1, 1, 1.0, 1.0, 0}), std::invalid_argument);
}
