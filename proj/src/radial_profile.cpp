#include "radial_profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polyspec {

void RadialProfile::validate() const {
  if (s.size() != value.size() || s.empty()) throw std::invalid_argument("profile: breakpoint/value size mismatch");
  if (s.front() != 0.0) throw std::invalid_argument("profile: first breakpoint must be 0");
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (!(s[i + 1] > s[i])) throw std::invalid_argument("profile: breakpoints must be strictly ascending");
    if (value[i + 1] > value[i] + 1e-15 * value[i]) throw std::invalid_argument("profile: values must be non-increasing");
  }
  for (double v : value)
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("profile: values must be finite and nonnegative");
  if (slope_bound > 0.0 && max_chord_slope() > slope_bound * (1.0 + 1e-12))
    throw std::invalid_argument("profile: chord slope exceeds the declared bound");
}

double RadialProfile::at(double x) const {
  if (x <= 0.0) return value.front();
  if (x >= s.back()) return x == s.back() ? value.back() : 0.0;
  auto it = std::upper_bound(s.begin(), s.end(), x);
  std::size_t i = static_cast<std::size_t>(it - s.begin()) - 1;
  double w = (x - s[i]) / (s[i + 1] - s[i]);
  return value[i] + w * (value[i + 1] - value[i]);
}

double RadialProfile::max_chord_slope() const {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    worst = std::max(worst, (value[i] - value[i + 1]) / (s[i + 1] - s[i]));
  return worst;
}

double RadialProfile::weighted_moment(double q) const {
  if (!(q >= 1.0)) throw std::invalid_argument("weighted_moment: exponent must be >= 1");
  // On a segment psi(s) = alpha + beta s:
  //   int s^(q-1)(alpha + beta s) ds = alpha s^q / q + beta s^(q+1)/(q+1).
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    double beta = (value[i + 1] - value[i]) / (s[i + 1] - s[i]);
    double alpha = value[i] - beta * s[i];
    auto anti = [&](double x) { return alpha * std::pow(x, q) / q + beta * std::pow(x, q + 1.0) / (q + 1.0); };
    total += anti(s[i + 1]) - anti(s[i]);
  }
  return total;
}

MomentPair moment_integrals(const RadialProfile& profile, double b, int l) {
  if (!(b >= 1.0)) throw std::invalid_argument("moment_integrals: b must be >= 1");
  if (l < 1) throw std::invalid_argument("moment_integrals: l must be >= 1");
  profile.validate();
  return {profile.weighted_moment(b), profile.weighted_moment(b + 2.0 * l)};
}

}  // namespace polyspec
