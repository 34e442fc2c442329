#include "fourier.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lemma.hpp"
#include "parallel.hpp"
#include "rearrange.hpp"

namespace polyspec {

namespace {

constexpr double kPi = std::numbers::pi;

struct TransformSet {
  // phi_hat_j(z) and its gradient for j < k, at one z.
  std::vector<std::complex<double>> phi;
  std::vector<std::complex<double>> grad;  // k * dim, axis-major per j

  double f() const {
    double acc = 0.0;
    for (const auto& p : phi) acc += std::norm(p);
    return acc;
  }
  double grad_f_norm(int dim) const {
    // grad f = 2 sum_j Re(conj(phi_j) grad phi_j)
    double acc = 0.0;
    for (int a = 0; a < dim; ++a) {
      double comp = 0.0;
      for (std::size_t j = 0; j < phi.size(); ++j)
        comp += 2.0 * (std::conj(phi[j]) * grad[j * dim + a]).real();
      acc += comp * comp;
    }
    return std::sqrt(acc);
  }
};

TransformSet transforms_at(const GridDomain& domain, const Spectrum& spectrum, int k,
                           std::span<const double> z, std::span<const double> origin) {
  const int dim = domain.dim;
  const double weight = std::pow(domain.h, dim) * std::pow(2.0 * kPi, -0.5 * dim);
  TransformSet t;
  t.phi.assign(k, {0.0, 0.0});
  t.grad.assign(static_cast<std::size_t>(k) * dim, {0.0, 0.0});
  for (std::size_t c = 0; c < domain.size(); ++c) {
    auto p = domain.position(c);
    double x[2] = {p[0] - (origin.size() > 0 ? origin[0] : 0.0),
                   dim > 1 ? p[1] - (origin.size() > 1 ? origin[1] : 0.0) : 0.0};
    double phase = x[0] * z[0] + (dim > 1 ? x[1] * z[1] : 0.0);
    std::complex<double> e(std::cos(phase), std::sin(phase));
    for (int j = 0; j < k; ++j) {
      std::complex<double> term = spectrum.vectors(static_cast<Eigen::Index>(c), j) * e;
      t.phi[j] += term;
      for (int a = 0; a < dim; ++a) t.grad[static_cast<std::size_t>(j) * dim + a] += std::complex<double>(0.0, x[a]) * term;
    }
  }
  for (auto& v : t.phi) v *= weight;
  for (auto& v : t.grad) v *= weight;
  return t;
}

void require_vectors(const Spectrum& spectrum, int k) {
  if (spectrum.vectors.cols() < k)
    throw std::invalid_argument("fourier checks: spectrum lacks eigenvectors for the requested k");
  if (k < 1) throw std::invalid_argument("fourier checks: k must be >= 1");
  if (spectrum.extrapolated)
    throw std::invalid_argument(
        "fourier checks: pass the discrete spectrum; extrapolation error enters through err_est");
}

}  // namespace

CheckReport CheckReport::inequality(std::string name, double lhs, double rhs, double tol) {
  CheckReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tol;
  r.identity = false;
  r.passed = lhs <= rhs + tol;
  return r;
}

CheckReport CheckReport::identity_check(std::string name, double lhs, double rhs, double tol) {
  CheckReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tol;
  r.identity = true;
  r.passed = std::abs(lhs - rhs) <= tol;
  return r;
}

std::complex<double> transform_at(const GridDomain& domain, std::span<const double> u,
                                  std::span<const double> z, std::span<const double> origin) {
  if (u.size() != domain.size()) throw std::invalid_argument("transform_at: vector length mismatch");
  if (z.size() < static_cast<std::size_t>(domain.dim)) throw std::invalid_argument("transform_at: frequency dimension mismatch");
  const int dim = domain.dim;
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t c = 0; c < domain.size(); ++c) {
    auto p = domain.position(c);
    double phase = 0.0;
    for (int a = 0; a < dim; ++a)
      phase += (p[a] - (static_cast<int>(origin.size()) > a ? origin[a] : 0.0)) * z[a];
    acc += u[c] * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc * std::pow(domain.h, dim) * std::pow(2.0 * kPi, -0.5 * dim);
}

std::vector<CheckReport> check_pointwise_bounds(const GridDomain& domain, const Spectrum& spectrum,
                                                const GeometrySummary& geom, const PointwiseOptions& opt) {
  require_vectors(spectrum, opt.k);
  const int dim = domain.dim;
  const double f_cap = std::pow(2.0 * kPi, -dim) * geom.volume;
  const double grad_cap = 2.0 * std::pow(2.0 * kPi, -dim) * std::sqrt(geom.volume * geom.inertia);
  std::span<const double> origin(geom.centroid.data(), dim);

  // Draw all sample points up front so the parallel evaluation stays
  // deterministic.
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> coord(-opt.z_radius, opt.z_radius);
  std::vector<std::array<double, 2>> zs(opt.samples);
  for (auto& z : zs) {
    z[0] = coord(rng);
    z[1] = dim > 1 ? coord(rng) : 0.0;
  }

  std::vector<double> fs(zs.size()), grads(zs.size());
  parallel_chunks(zs.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      auto t = transforms_at(domain, spectrum, opt.k, std::span<const double>(zs[s].data(), 2), origin);
      fs[s] = t.f();
      grads[s] = t.grad_f_norm(dim);
    }
  });
  double f_min = 0.0, f_max = 0.0, grad_max = 0.0;
  for (std::size_t s = 0; s < zs.size(); ++s) {
    f_min = std::min(f_min, fs[s]);
    f_max = std::max(f_max, fs[s]);
    grad_max = std::max(grad_max, grads[s]);
  }

  std::vector<CheckReport> out;
  out.push_back(CheckReport::inequality("pointwise_f_nonnegative", -f_min, 0.0, 0.0));
  out.push_back(CheckReport::inequality("pointwise_f_upper", f_max, f_cap, opt.tol_q));
  out.push_back(CheckReport::inequality("pointwise_grad_f_upper", grad_max, grad_cap, opt.tol_q));
  return out;
}

std::vector<CheckReport> check_global_identities(const GridDomain& domain, const Spectrum& spectrum,
                                                 const GeometrySummary& geom, const GlobalCheckOptions& opt) {
  require_vectors(spectrum, opt.k);
  if (!(opt.truncation_radius > 0.0) || !(opt.dz > 0.0))
    throw std::invalid_argument("check_global_identities: Z and dz must be positive");
  const int dim = domain.dim;
  const int l = spectrum.l;
  const int k = opt.k;
  std::span<const double> origin(geom.centroid.data(), dim);

  double lambda_sum = 0.0;
  for (int j = 0; j < k; ++j) lambda_sum += spectrum.values[j];

  // Physical-space energy identity: sum of Rayleigh quotients of the
  // eigenvectors against the stencil operator.
  double energy = 0.0;
  for (int j = 0; j < k; ++j) {
    std::span<const double> u(spectrum.vectors.col(j).data(), domain.size());
    energy += energy_product(domain, l, u, u);
  }

  // Trapezoid z-grid over [-Z, Z]^dim.
  const double Z = opt.truncation_radius;
  const double dz = opt.dz;
  const long steps = std::lround(2.0 * Z / dz);
  const long npts = steps + 1;

  const std::size_t total = dim == 1 ? static_cast<std::size_t>(npts)
                                     : static_cast<std::size_t>(npts) * static_cast<std::size_t>(npts);
  if (dim == 2 && total * domain.size() * k > 4'000'000'000ull)
    throw std::invalid_argument(
        "check_global_identities: 2-d frequency sweep too large; use a coarser dz or smaller Z");
  std::vector<double> f_values(total);
  std::vector<double> z_coords(total * dim);
  auto grid_point = [&](std::size_t idx) -> std::array<double, 2> {
    if (dim == 1) return {-Z + static_cast<double>(idx) * dz, 0.0};
    return {-Z + static_cast<double>(idx % npts) * dz, -Z + static_cast<double>(idx / npts) * dz};
  };
  parallel_chunks(total, [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      auto z = grid_point(idx);
      auto t = transforms_at(domain, spectrum, k, std::span<const double>(z.data(), 2), origin);
      f_values[idx] = t.f();
      for (int a = 0; a < dim; ++a) z_coords[idx * dim + a] = z[a];
    }
  });

  // Trapezoid weights, accumulated in index order for determinism.
  double f_integral = 0.0, moment_integral = 0.0;
  auto axis_weight = [&](long i) { return (i == 0 || i == steps) ? 0.5 : 1.0; };
  for (std::size_t idx = 0; idx < total; ++idx) {
    double w = dim == 1 ? axis_weight(static_cast<long>(idx)) * dz
                        : axis_weight(static_cast<long>(idx % npts)) * axis_weight(static_cast<long>(idx / npts)) * dz * dz;
    double r = dim == 1 ? std::abs(z_coords[idx]) : std::hypot(z_coords[2 * idx], z_coords[2 * idx + 1]);
    f_integral += w * f_values[idx];
    moment_integral += w * std::pow(r, 2 * l) * f_values[idx];
  }

  const double mass = f_integral;
  const double tol_q = 5.0 * (opt.err_est + dz * dz * mass);

  std::vector<CheckReport> out;
  {
    auto r = CheckReport::inequality("parseval_truncated", f_integral, static_cast<double>(k), tol_q);
    r.truncation_estimate = static_cast<double>(k) - f_integral;
    // The truncated integral must also recover most of k.
    r.passed = r.passed && f_integral >= 0.97 * k;
    out.push_back(r);
  }
  out.push_back(CheckReport::identity_check("energy_identity_physical", lambda_sum, energy, 1e-9 * lambda_sum));
  out.push_back(CheckReport::inequality("fourier_moment_truncated", moment_integral, lambda_sum, tol_q));

  // Rearrangement of the sampled f over the z-window.
  SampledField field;
  field.dim = dim;
  field.cell_volume = std::pow(dz, dim);
  field.values = std::move(f_values);
  field.coords = std::move(z_coords);
  for (double& v : field.values) v = std::max(v, 0.0);

  auto rr = rearrange(field, l);
  const double bn = unit_ball_volume(dim);
  const double rebin = rebin_tolerance(field, l);
  double profile_mass = dim * bn * rr.profile.weighted_moment(dim);
  out.push_back(CheckReport::identity_check("rearranged_mass", profile_mass, mass, rebin + tol_q));
  out.push_back(CheckReport::inequality("rearranged_moment", rr.radial_moment, lambda_sum, rebin + tol_q));

  // Slope-bounded-profile moment bound applied to the rearranged profile with
  // b = n, A = k/(n B_n), eta = 2 (2pi)^-n sqrt(V I); the end-to-end chain.
  const double eta = 2.0 * std::pow(2.0 * kPi, -dim) * std::sqrt(geom.volume * geom.inertia);
  const double A_chain = static_cast<double>(k) / (dim * bn);
  if (rr.profile.value.front() > 0.0) {
    double rhs_val = dim * bn * lemma1_rhs({static_cast<double>(dim), l, A_chain, rr.profile.value.front(), eta});
    out.push_back(CheckReport::inequality("profile_moment_chain", rhs_val, lambda_sum, rebin + tol_q));
  }
  return out;
}

}  // namespace polyspec
