#pragma once

#include <cstdint>
#include <vector>

namespace polyspec {

/// Non-increasing piecewise-linear function on [0, inf), zero beyond the last
/// breakpoint. Houses both the rearrangement profile phi and admissible test
/// functions psi.
struct RadialProfile {
  std::vector<double> s;      // ascending breakpoints, s.front() == 0
  std::vector<double> value;  // nonnegative, non-increasing
  double slope_bound = 0.0;   // declared eta: every chord slope lies in [-eta, 0]

  void validate() const;
  double at(double x) const;
  /// Largest |chord slope| over all segments.
  double max_chord_slope() const;
  /// Exact integral of s^(q-1) * profile(s) over [0, inf) via the closed-form
  /// antiderivative on each linear segment. q may be any real >= 1.
  double weighted_moment(double q) const;
};

struct MomentPair {
  double A = 0.0;    // int s^(b-1) psi ds
  double A_l = 0.0;  // int s^(b+2l-1) psi ds
};

/// Both moments of a profile, exact per segment (no quadrature error).
MomentPair moment_integrals(const RadialProfile& profile, double b, int l);

}  // namespace polyspec
