#include "bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "geometry.hpp"

namespace polyspec {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // log(2*pi)

double log_unit_ball_volume(int n) {
  return 0.5 * n * std::log(std::numbers::pi) - std::lgamma(0.5 * n + 1.0);
}

// (2pi)^(2m) / (B_n V)^(2m/n) * k^(2m/n), accumulated in log space so large
// n, l, k cannot overflow intermediate products.
double weyl_factor(int n, int m, double volume, std::uint64_t k) {
  if (m == 0) return 1.0;
  double log_bnv = log_unit_ball_volume(n) + std::log(volume);
  double e = 2.0 * m;
  return std::exp(e * kLog2Pi + (e / n) * (std::log(static_cast<double>(k)) - log_bnv));
}

}  // namespace

void BoundInputs::validate() const {
  if (n < 1) throw std::invalid_argument("bounds: dimension n must be >= 1");
  if (l < 1) throw std::invalid_argument("bounds: order l must be >= 1");
  if (!(volume > 0.0)) throw std::invalid_argument("bounds: volume must be positive");
  if (!(inertia > 0.0)) throw std::invalid_argument("bounds: inertia must be positive");
  if (k < 1) throw std::invalid_argument("bounds: index k must be >= 1");
}

bool BoundInputs::inertia_below_floor() const {
  return inertia < inertia_floor(n, volume) * (1.0 - 1e-12);
}

BoundValue asymptotic_leading(const BoundInputs& in, bool average) {
  in.validate();
  double v = weyl_factor(in.n, in.l, in.volume, in.k);
  if (average) v *= in.n / (in.n + 2.0 * in.l);
  return {v, BoundKind::Asymptotic};
}

BoundValue classical_average_bound(const BoundInputs& in) {
  in.validate();
  double v = in.n / (in.n + 2.0 * in.l) * weyl_factor(in.n, in.l, in.volume, in.k);
  return {v, BoundKind::AverageOfFirstK};
}

BoundValue individual_bound(const BoundInputs& in) {
  BoundValue v = classical_average_bound(in);
  v.kind = BoundKind::IndividualKth;
  return v;
}

BoundValue polya_tiling_bound(const BoundInputs& in) {
  in.validate();
  if (in.l != 1) throw std::invalid_argument("polya_tiling_bound: defined for l = 1 only");
  return {weyl_factor(in.n, 1, in.volume, in.k), BoundKind::IndividualKth};
}

BoundValue melas_average(const BoundInputs& in) {
  in.validate();
  if (in.l != 1) throw std::invalid_argument("melas_average: defined for l = 1 only");
  double v = classical_average_bound(in).value + in.volume / (24.0 * (in.n + 2.0) * in.inertia);
  return {v, BoundKind::AverageOfFirstK};
}

double improvement_term(const BoundInputs& in) {
  in.validate();
  const int n = in.n;
  const int l = in.l;
  const double log_v_over_i = std::log(in.volume) - std::log(in.inertia);
  double sum = 0.0;
  double log_pochhammer = 0.0;  // log(n(n+2)...(n+2p-2)), p factors
  for (int p = 1; p <= l; ++p) {
    log_pochhammer += std::log(n + 2.0 * (p - 1));
    double log_term = std::log(static_cast<double>(l + 1 - p)) - p * std::log(24.0) - log_pochhammer +
                      p * log_v_over_i;
    sum += std::exp(log_term) * weyl_factor(n, l - p, in.volume, in.k);
  }
  return n / (n + 2.0 * l) * sum;
}

BoundValue improved_average_bound(const BoundInputs& in) {
  double v = classical_average_bound(in).value + improvement_term(in);
  return {v, BoundKind::AverageOfFirstK};
}

double weyl_gamma_ratio(int n) {
  if (n < 1) throw std::invalid_argument("weyl_gamma_ratio: dimension must be >= 1");
  return std::exp((4.0 / n) * log_unit_ball_volume(n) - 2.0 * kLog2Pi);
}

}  // namespace polyspec
