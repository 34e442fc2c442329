#pragma once

#include <span>
#include <vector>

#include "grid.hpp"
#include "radial_profile.hpp"

namespace polyspec {

/// Nonnegative function sampled on equal-volume cells: coords is
/// dim-interleaved cell-midpoint positions, one value per cell.
struct SampledField {
  int dim = 1;
  double cell_volume = 0.0;
  std::vector<double> coords;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  void validate() const;
};

/// Field over a grid domain's interior nodes.
SampledField field_from_grid(const GridDomain& domain, std::span<const double> values);

/// mu_f(t) = cell_volume * #{cells with value > t}.
double distribution_function(const SampledField& f, double t);

struct RearrangementResult {
  RadialProfile profile;       // phi with f*(x) = phi(|x|)
  double mass = 0.0;           // sum f * cell_volume, exact reordered sum
  double radial_moment = 0.0;  // n B_n int s^(n+2l-1) phi ds, exact per segment
  int moment_order = 1;        // the l used for radial_moment
};

/// Symmetric decreasing rearrangement by sorting cell values: sorted cell i
/// (0-based) fills the shell of outer radius r_i with B_n r_i^n = (i+1) v_cell,
/// and phi interpolates the sorted values at those radii. Ties are broken by
/// the cell's distance to `origin` for determinism. Moments of f itself are
/// taken about `origin` (defaults to 0).
RearrangementResult rearrange(const SampledField& f, int l, std::span<const double> origin = {});

/// The 2l-moment of the field about `origin`: sum |x-origin|^(2l) f v_cell.
double field_moment(const SampledField& f, int l, std::span<const double> origin = {});

/// Rebinning tolerance for the moment inequality: 2l h r_max^(2l-1) mass.
double rebin_tolerance(const SampledField& f, int l, std::span<const double> origin = {});

struct SlopeReport {
  double tau = 0.0;          // max central-difference gradient magnitude
  double worst_ratio = 0.0;  // max |phi chord slope| / tau
  bool connected = true;
  bool skipped = false;  // tau below the gradient floor (step profiles)
};

/// Check the rearranged profile's chord slopes against the gradient bound
/// tau = sup|grad f|. Advisory: reports the worst ratio; constant fields are
/// skipped (their profile is a step and violates any slope bound).
SlopeReport slope_bound_check(const GridDomain& domain, std::span<const double> values);

}  // namespace polyspec
