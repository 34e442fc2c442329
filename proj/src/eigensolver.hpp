#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "grid.hpp"

namespace polyspec {

/// Eigensolver failure with diagnostics (iteration counts, worst residual).
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Ascending Dirichlet eigenvalues of the order-l operator on a grid domain,
/// with optional eigenvectors orthonormal in the h^n-weighted inner product.
struct Spectrum {
  int l = 1;
  int dim = 1;
  double h = 0.0;
  std::string domain_label;
  std::size_t interior_size = 0;
  bool extrapolated = false;
  std::vector<double> values;
  std::vector<double> error_estimates;  // filled by extrapolation
  Eigen::MatrixXd vectors;              // one column per eigenvalue; may be empty

  std::size_t count() const { return values.size(); }
};

/// Apply the zero-extension polyharmonic operator: extend v by zero to a box
/// padded by l cells, apply the (2n+1)-point Laplacian stencil l times,
/// restrict back to the interior. Symmetric positive definite as a matrix on
/// the interior (it is P L^l P^T for the full-lattice L).
void apply_polyharmonic(const GridDomain& domain, int l, std::span<const double> v, std::span<double> out);

/// The same operator assembled as a sparse matrix on interior ordinals.
Eigen::SparseMatrix<double> assemble_operator(const GridDomain& domain, int l);

/// h^n-weighted energy form <u, P L^l P^T v> h^n.
double energy_product(const GridDomain& domain, int l, std::span<const double> u, std::span<const double> v);

/// The `count` smallest eigenvalues. Dense tridiagonalization below 4000
/// unknowns; above that, shift-invert Lanczos with full reorthogonalization
/// and deflated restarts (restarts recover multiple copies of clustered
/// eigenvalues). Deterministic: fixed-seed start vectors.
Spectrum smallest_eigenvalues(const GridDomain& domain, int l, int count, bool want_vectors);

/// (2^order lambda_fine - lambda_coarse)/(2^order - 1) per index, with
/// |lambda_ext - lambda_fine| as the error estimate. Requires matching domain
/// and l, and fine.h = coarse.h/2. Eigenvectors of the fine spectrum are
/// carried over.
Spectrum richardson_extrapolate(const Spectrum& coarse, const Spectrum& fine, double order);

std::string spectrum_to_json(const Spectrum& s);

}  // namespace polyspec
