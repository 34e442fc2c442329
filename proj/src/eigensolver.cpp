#include "eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/SparseCholesky>
#include <nlohmann/json.hpp>

namespace polyspec {

namespace {

constexpr std::size_t kDenseLimit = 4000;
constexpr std::uint64_t kStartVectorSeed = 0x9e3779b97f4a7c15ull;

struct PaddedBox {
  int nx = 1, ny = 1, pad = 0;
  std::vector<double> a, b;
};

// One application of the (2n+1)-point negative Laplacian over the whole
// buffer, out-of-range neighbours read as zero.
void apply_laplacian_once(const PaddedBox& box, int dim, double inv_h2, const std::vector<double>& src,
                          std::vector<double>& dst) {
  const int nx = box.nx, ny = box.ny;
  auto at = [&](int i, int j) -> double {
    if (i < 0 || i >= nx || j < 0 || j >= ny) return 0.0;
    return src[static_cast<std::size_t>(j) * nx + i];
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      double center = src[static_cast<std::size_t>(j) * nx + i];
      double acc = 2.0 * dim * center - at(i - 1, j) - at(i + 1, j);
      if (dim > 1) acc -= at(i, j - 1) + at(i, j + 1);
      dst[static_cast<std::size_t>(j) * nx + i] = acc * inv_h2;
    }
}

}  // namespace

void apply_polyharmonic(const GridDomain& domain, int l, std::span<const double> v, std::span<double> out) {
  if (l < 1) throw std::invalid_argument("apply_polyharmonic: order must be >= 1");
  if (v.size() != domain.size() || out.size() != domain.size())
    throw std::invalid_argument("apply_polyharmonic: vector length must match interior size");

  PaddedBox box;
  box.pad = l;
  box.nx = domain.span(0) + 2 * l;
  box.ny = domain.dim > 1 ? domain.span(1) + 2 * l : 1;
  box.a.assign(static_cast<std::size_t>(box.nx) * box.ny, 0.0);
  box.b.assign(box.a.size(), 0.0);

  const int joff = domain.dim > 1 ? l : 0;
  for (std::size_t k = 0; k < domain.size(); ++k) {
    const auto& ix = domain.node_index[k];
    int i = ix[0] - domain.lo[0] + l;
    int j = domain.dim > 1 ? ix[1] - domain.lo[1] + joff : 0;
    box.a[static_cast<std::size_t>(j) * box.nx + i] = v[k];
  }

  const double inv_h2 = 1.0 / (domain.h * domain.h);
  for (int step = 0; step < l; ++step) {
    apply_laplacian_once(box, domain.dim, inv_h2, box.a, box.b);
    std::swap(box.a, box.b);
  }

  for (std::size_t k = 0; k < domain.size(); ++k) {
    const auto& ix = domain.node_index[k];
    int i = ix[0] - domain.lo[0] + l;
    int j = domain.dim > 1 ? ix[1] - domain.lo[1] + joff : 0;
    out[k] = box.a[static_cast<std::size_t>(j) * box.nx + i];
  }
}

Eigen::SparseMatrix<double> assemble_operator(const GridDomain& domain, int l) {
  if (l < 1) throw std::invalid_argument("assemble_operator: order must be >= 1");
  const double inv_h2 = 1.0 / (domain.h * domain.h);

  // Build the lattice convolution kernel of L^l by repeated convolution with
  // the base stencil, then instantiate rows; dropping offsets that land
  // outside the interior realizes the zero extension.
  std::map<std::pair<int, int>, double> kernel{{{0, 0}, 2.0 * domain.dim * inv_h2},
                                               {{1, 0}, -inv_h2},
                                               {{-1, 0}, -inv_h2}};
  if (domain.dim > 1) {
    kernel[{0, 1}] = -inv_h2;
    kernel[{0, -1}] = -inv_h2;
  }
  auto base = kernel;
  for (int step = 1; step < l; ++step) {
    std::map<std::pair<int, int>, double> next;
    for (const auto& [o1, c1] : kernel)
      for (const auto& [o2, c2] : base)
        next[{o1.first + o2.first, o1.second + o2.second}] += c1 * c2;
    kernel = std::move(next);
  }

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(domain.size() * kernel.size());
  for (std::size_t k = 0; k < domain.size(); ++k) {
    const auto& ix = domain.node_index[k];
    for (const auto& [off, c] : kernel) {
      auto nb = domain.ordinal_at(ix[0] + off.first, ix[1] + off.second);
      if (nb >= 0) trips.emplace_back(static_cast<int>(k), nb, c);
    }
  }
  Eigen::SparseMatrix<double> A(static_cast<int>(domain.size()), static_cast<int>(domain.size()));
  A.setFromTriplets(trips.begin(), trips.end());
  return A;
}

double energy_product(const GridDomain& domain, int l, std::span<const double> u, std::span<const double> v) {
  std::vector<double> av(domain.size());
  apply_polyharmonic(domain, l, v, av);
  double acc = 0.0;
  for (std::size_t i = 0; i < domain.size(); ++i) acc += u[i] * av[i];
  return acc * std::pow(domain.h, domain.dim);
}

namespace {

Spectrum make_spectrum_header(const GridDomain& domain, int l) {
  Spectrum s;
  s.l = l;
  s.dim = domain.dim;
  s.h = domain.h;
  s.domain_label = domain.domain_label;
  s.interior_size = domain.size();
  return s;
}

// Deterministic sign: largest-magnitude entry made positive.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  int idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  if (v[idx] < 0.0) v = -v;
}

Spectrum dense_path(const GridDomain& domain, int l, int count, bool want_vectors) {
  Eigen::MatrixXd A = Eigen::MatrixXd(assemble_operator(domain, l));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      A, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed to converge");

  Spectrum s = make_spectrum_header(domain, l);
  s.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + count);
  if (want_vectors) {
    const double scale = std::pow(domain.h, -0.5 * domain.dim);
    s.vectors = es.eigenvectors().leftCols(count) * scale;
    for (int c = 0; c < count; ++c) fix_sign(s.vectors.col(c));
  }
  return s;
}

// Shift-invert Lanczos at shift 0 with full reorthogonalization. Converged
// pairs are deflated and the iteration restarted with a fresh start vector
// until `count` eigenpairs are found; restarts are what recover the second
// copy of degenerate eigenvalues, which a single Krylov sequence cannot
// represent in exact arithmetic.
Spectrum lanczos_path(const GridDomain& domain, int l, int count, bool want_vectors) {
  const int n = static_cast<int>(domain.size());
  Eigen::SparseMatrix<double> A = assemble_operator(domain, l);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor(A);
  if (factor.info() != Eigen::Success) throw SolverError("sparse factorization of the stencil operator failed");

  std::mt19937_64 rng(kStartVectorSeed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Eigen::MatrixXd converged_vecs(n, 0);
  std::vector<double> converged_vals;

  const int m_max = std::min(n, std::max(120, 10 * count + 40));
  const double ritz_tol = 1e-9;
  double worst_residual = 0.0;

  for (int pass = 0; pass < 6 && static_cast<int>(converged_vals.size()) < count; ++pass) {
    Eigen::MatrixXd Q(n, m_max + 1);
    std::vector<double> alpha, beta;

    Eigen::VectorXd q(n);
    for (int i = 0; i < n; ++i) q[i] = gauss(rng);
    // Start orthogonal to everything already converged.
    for (int c = 0; c < converged_vecs.cols(); ++c) q -= converged_vecs.col(c).dot(q) * converged_vecs.col(c);
    q.normalize();
    Q.col(0) = q;

    int m = 0;
    int newly_converged = 0;
    Eigen::VectorXd theta;
    Eigen::MatrixXd T_vecs;

    for (int j = 0; j < m_max; ++j) {
      Eigen::VectorXd w = factor.solve(Q.col(j));
      double a = Q.col(j).dot(w);
      alpha.push_back(a);
      w -= a * Q.col(j);
      if (j > 0) w -= beta[j - 1] * Q.col(j - 1);
      // Full reorthogonalization, two passes, including the deflation set.
      for (int sweep = 0; sweep < 2; ++sweep) {
        for (int c = 0; c <= j; ++c) w -= Q.col(c).dot(w) * Q.col(c);
        for (int c = 0; c < converged_vecs.cols(); ++c) w -= converged_vecs.col(c).dot(w) * converged_vecs.col(c);
      }
      double b = w.norm();
      m = j + 1;

      bool breakdown = b < 1e-13;
      bool check_now = breakdown || j + 1 == m_max || (j + 1) % 10 == 0;
      if (check_now) {
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
          T(i, i) = alpha[i];
          if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tes(T);
        theta = tes.eigenvalues();  // ascending; largest theta = smallest lambda
        T_vecs = tes.eigenvectors();
        newly_converged = 0;
        int want = count - static_cast<int>(converged_vals.size());
        for (int r = m - 1; r >= 0 && newly_converged < want; --r) {
          double bound = breakdown ? 0.0 : std::abs(b * T_vecs(m - 1, r));
          if (theta[r] > 0.0 && bound <= ritz_tol * theta[r])
            ++newly_converged;
          else
            break;
        }
        if (newly_converged >= want || breakdown) break;
      }

      if (breakdown) break;
      beta.push_back(b);
      Q.col(j + 1) = w / b;
    }

    // Harvest converged Ritz pairs from this pass (largest theta first).
    int harvested = 0;
    for (int r = m - 1; r >= 0 && harvested < newly_converged; --r, ++harvested) {
      Eigen::VectorXd x = Q.leftCols(m) * T_vecs.col(r);
      x.normalize();
      // Rayleigh quotient through the matrix-free operator; squares the
      // residual error of the inverted iteration.
      std::vector<double> ax(n);
      apply_polyharmonic(domain, l, std::span<const double>(x.data(), n), ax);
      Eigen::Map<Eigen::VectorXd> axv(ax.data(), n);
      double lambda = x.dot(axv);
      double resid = (axv - lambda * x).norm() / lambda;
      worst_residual = std::max(worst_residual, resid);
      converged_vals.push_back(lambda);
      converged_vecs.conservativeResize(Eigen::NoChange, converged_vecs.cols() + 1);
      converged_vecs.col(converged_vecs.cols() - 1) = x;
    }
    if (harvested == 0 && pass > 0) break;  // no progress; bail with diagnostics
  }

  if (static_cast<int>(converged_vals.size()) < count) {
    std::ostringstream os;
    os << "Lanczos did not converge: " << converged_vals.size() << "/" << count
       << " eigenpairs, worst residual " << worst_residual;
    throw SolverError(os.str());
  }

  // Sort ascending by eigenvalue; ties keep harvest order.
  std::vector<int> order(converged_vals.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return converged_vals[a] < converged_vals[b]; });

  Spectrum s = make_spectrum_header(domain, l);
  const double scale = std::pow(domain.h, -0.5 * domain.dim);
  if (want_vectors) s.vectors.resize(n, count);
  for (int i = 0; i < count; ++i) {
    s.values.push_back(converged_vals[order[i]]);
    if (want_vectors) {
      s.vectors.col(i) = converged_vecs.col(order[i]) * scale;
      fix_sign(s.vectors.col(i));
    }
  }
  return s;
}

}  // namespace

Spectrum smallest_eigenvalues(const GridDomain& domain, int l, int count, bool want_vectors) {
  if (count < 1) throw std::invalid_argument("smallest_eigenvalues: count must be >= 1");
  if (static_cast<std::size_t>(count) > domain.size())
    throw std::invalid_argument("smallest_eigenvalues: count exceeds interior size");
  if (domain.size() <= kDenseLimit) return dense_path(domain, l, count, want_vectors);
  return lanczos_path(domain, l, count, want_vectors);
}

Spectrum richardson_extrapolate(const Spectrum& coarse, const Spectrum& fine, double order) {
  if (coarse.domain_label != fine.domain_label || coarse.l != fine.l)
    throw std::invalid_argument("richardson_extrapolate: spectra come from different problems");
  if (std::abs(2.0 * fine.h - coarse.h) > 1e-9 * coarse.h)
    throw std::invalid_argument("richardson_extrapolate: fine grid must halve the coarse cell size");
  if (!(order > 0.0)) throw std::invalid_argument("richardson_extrapolate: order must be positive");

  Spectrum s = fine;
  s.extrapolated = true;
  const double w = std::pow(2.0, order);
  const std::size_t m = std::min(coarse.values.size(), fine.values.size());
  s.values.resize(m);
  s.error_estimates.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double ext = (w * fine.values[i] - coarse.values[i]) / (w - 1.0);
    s.values[i] = ext;
    s.error_estimates[i] = std::abs(ext - fine.values[i]);
  }
  return s;
}

std::string spectrum_to_json(const Spectrum& s) {
  nlohmann::json j{{"domain", s.domain_label}, {"l", s.l},
                   {"h", s.h},                 {"values", s.values},
                   {"extrapolated", s.extrapolated}, {"error_estimates", s.error_estimates}};
  return j.dump();
}

}  // namespace polyspec
