#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "eigensolver.hpp"
#include "geometry.hpp"

namespace polyspec {

/// One verified inequality or identity: passed means lhs <= rhs + tolerance,
/// or |lhs - rhs| <= tolerance when `identity` is set.
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool identity = false;
  bool passed = false;
  double truncation_estimate = 0.0;

  static CheckReport inequality(std::string name, double lhs, double rhs, double tol);
  static CheckReport identity_check(std::string name, double lhs, double rhs, double tol);
};

/// Fourier transform of the zero-extended eigenvector at frequency z:
/// (2pi)^(-n/2) sum_c u(x_c) e^(i<x_c - origin, z>) h^n. Coordinates are
/// taken about `origin` so that the gradient bound carries the centroidal
/// moment of inertia.
std::complex<double> transform_at(const GridDomain& domain, std::span<const double> u,
                                  std::span<const double> z, std::span<const double> origin);

struct PointwiseOptions {
  int k = 1;               // eigenfunctions 1..k enter f
  int samples = 200;       // random z draws
  double z_radius = 40.0;  // draws uniform in [-R, R]^n
  std::uint64_t seed = 1;
  double tol_q = 0.0;
};

/// Sampled checks 0 <= f(z) <= (2pi)^-n V and |grad f(z)| <= 2 (2pi)^-n
/// sqrt(V I); the gradient goes through the quadrature weight i(x - origin),
/// never finite differences in z.
std::vector<CheckReport> check_pointwise_bounds(const GridDomain& domain, const Spectrum& spectrum,
                                                const GeometrySummary& geom, const PointwiseOptions& opt);

struct GlobalCheckOptions {
  int k = 1;
  double truncation_radius = 60.0;  // Z
  double dz = 0.05;
  double err_est = 0.0;  // eigenvector discretization error feeding tol_q
};

/// Truncated global identities on |z| <= Z plus the rearrangement chain:
///   int f         vs k            (truncated from below)
///   sum lambda    vs energy form  (exact physical-space identity)
///   int |z|^2l f  <= sum lambda   (monotone truncation)
///   mass / moment of the rearranged profile of the sampled f
///   slope-bounded-profile moment bound applied to that profile, <= sum lambda.
std::vector<CheckReport> check_global_identities(const GridDomain& domain, const Spectrum& spectrum,
                                                 const GeometrySummary& geom, const GlobalCheckOptions& opt);

}  // namespace polyspec
