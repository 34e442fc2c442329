#pragma once

#include <vector>

#include "eigensolver.hpp"

namespace polyspec {

enum class ReferenceShape { Interval, Beam, Disk };

/// Bessel function of the first kind, integer order. Power series for small
/// arguments, Miller's downward recurrence otherwise.
double bessel_j(int order, double x);

/// First `count` positive zeros of J_order, by scan-and-bisect.
std::vector<double> bessel_zeros(int order, int count);

/// First `count` roots beta of cos(beta)cosh(beta) = 1 (clamped-beam
/// frequency equation), bisected from brackets around (k+1/2)pi.
std::vector<double> beam_frequency_roots(int count);

/// Closed-form / semi-analytic spectra:
///   interval, l=1: lambda_k = (k pi / L)^2
///   beam (interval, l=2): lambda_k = (beta_k / L)^4
///   disk, l=1: lambda = (j_{m,i}/R)^2 sorted, multiplicity 2 for m >= 1
/// `size` is the interval length or disk radius.
Spectrum reference_spectrum(ReferenceShape shape, double size, int l, int count);

/// 1-d clamped-beam discretization by ghost-point elimination (pentadiagonal
/// 1 -4 6 -4 1 rows with the boundary rows folded through u(-h)=u(h)).
/// Cross-check companion for the zero-extension operator at l=2.
Spectrum beam_ghost_point_spectrum(double length, double h, int count);

}  // namespace polyspec
