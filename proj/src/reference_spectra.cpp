#include "reference_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polyspec {

namespace {

constexpr double kPi = std::numbers::pi;

double bessel_j_series(int m, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  for (int i = 1; i <= m; ++i) term *= 0.5 * x / i;  // (x/2)^m / m!
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * (k + m));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

double bessel_j_miller(int m, double x) {
  // Downward recurrence from well above both m and x, normalized with
  // J_0 + 2 sum J_{2k} = 1.
  int start = m + 40 + static_cast<int>(1.5 * x);
  if (start % 2) ++start;
  double bkp1 = 0.0, bk = 1e-30;
  double norm = 0.0, result = 0.0;
  for (int k = start; k >= 1; --k) {
    double bkm1 = (2.0 * k / x) * bk - bkp1;
    bkp1 = bk;
    bk = bkm1;
    if (k - 1 == m) result = bk;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? bk : 2.0 * bk;
    if (std::abs(bk) > 1e250) {  // rescale to avoid overflow
      bk *= 1e-250;
      bkp1 *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
  }
  return result / norm;
}

}  // namespace

double bessel_j(int order, double x) {
  if (order < 0) throw std::invalid_argument("bessel_j: order must be >= 0");
  if (x < 0.0) throw std::invalid_argument("bessel_j: argument must be >= 0");
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  return x <= 12.0 ? bessel_j_series(order, x) : bessel_j_miller(order, x);
}

std::vector<double> bessel_zeros(int order, int count) {
  if (count < 1) throw std::invalid_argument("bessel_zeros: count must be >= 1");
  std::vector<double> zeros;
  // J_order is positive on (0, j_{order,1}); scan for sign changes and bisect.
  double x = order > 0 ? static_cast<double>(order) : 0.5;
  double prev = bessel_j(order, x);
  const double step = 0.05;
  while (static_cast<int>(zeros.size()) < count) {
    double xn = x + step;
    double cur = bessel_j(order, xn);
    if ((prev < 0.0) != (cur < 0.0)) {
      double a = x, to = xn;
      double fa = prev;
      while (to - a > 1e-15 * to) {
        double mid = 0.5 * (a + to);
        double fm = bessel_j(order, mid);
        if ((fa < 0.0) != (fm < 0.0))
          to = mid;
        else {
          a = mid;
          fa = fm;
        }
      }
      zeros.push_back(0.5 * (a + to));
    }
    x = xn;
    prev = cur;
    if (x > 500.0) throw std::runtime_error("bessel_zeros: scan ran away");
  }
  return zeros;
}

std::vector<double> beam_frequency_roots(int count) {
  if (count < 1) throw std::invalid_argument("beam_frequency_roots: count must be >= 1");
  std::vector<double> roots;
  // cos(b)cosh(b) = 1 rewritten as g(b) = cos(b) - sech(b); roots sit near
  // (k+1/2)pi where |sech| << |cos| at the bracket ends.
  auto g = [](double b) { return std::cos(b) - 1.0 / std::cosh(b); };
  for (int k = 1; k <= count; ++k) {
    double c = (k + 0.5) * kPi;
    double a = c - 0.7, b = c + 0.7;
    double fa = g(a);
    if ((fa < 0.0) == (g(b) < 0.0)) throw std::runtime_error("beam_frequency_roots: bracket lost a sign change");
    for (int it = 0; it < 200 && b - a > 1e-15 * c; ++it) {
      double mid = 0.5 * (a + b);
      double fm = g(mid);
      if ((fa < 0.0) != (fm < 0.0))
        b = mid;
      else {
        a = mid;
        fa = fm;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  return roots;
}

Spectrum reference_spectrum(ReferenceShape shape, double size, int l, int count) {
  if (!(size > 0.0)) throw std::invalid_argument("reference_spectrum: size must be positive");
  if (count < 1) throw std::invalid_argument("reference_spectrum: count must be >= 1");

  Spectrum s;
  s.h = 0.0;
  s.extrapolated = false;

  switch (shape) {
    case ReferenceShape::Interval: {
      if (l != 1) throw std::invalid_argument("reference_spectrum: interval reference requires l = 1");
      s.l = 1;
      s.dim = 1;
      s.domain_label = "reference:interval(L=" + std::to_string(size) + ")";
      for (int k = 1; k <= count; ++k) s.values.push_back(std::pow(k * kPi / size, 2));
      break;
    }
    case ReferenceShape::Beam: {
      if (l != 2) throw std::invalid_argument("reference_spectrum: beam reference requires l = 2");
      s.l = 2;
      s.dim = 1;
      s.domain_label = "reference:beam(L=" + std::to_string(size) + ")";
      for (double b : beam_frequency_roots(count)) s.values.push_back(std::pow(b / size, 4));
      break;
    }
    case ReferenceShape::Disk: {
      if (l != 1) throw std::invalid_argument("reference_spectrum: disk reference requires l = 1");
      s.l = 1;
      s.dim = 2;
      s.domain_label = "reference:disk(R=" + std::to_string(size) + ")";
      // Enumerate (j_{m,i}/R)^2 with multiplicity 2 for m >= 1 until `count`
      // values survive the sort.
      std::vector<double> lam;
      int zeros_per_order = count;
      for (int m = 0;; ++m) {
        auto z = bessel_zeros(m, zeros_per_order);
        if (lam.size() >= static_cast<std::size_t>(count) &&
            std::pow(z.front() / size, 2) > lam[count - 1]) {
          break;  // every later order starts above the current k-th value
        }
        for (double j : z) {
          double v = std::pow(j / size, 2);
          lam.push_back(v);
          if (m >= 1) lam.push_back(v);
        }
        std::sort(lam.begin(), lam.end());
        if (m > 60) throw std::runtime_error("reference_spectrum: disk enumeration ran away");
      }
      lam.resize(count);
      s.values = std::move(lam);
      break;
    }
  }
  return s;
}

Spectrum beam_ghost_point_spectrum(double length, double h, int count) {
  if (!(length > 0.0) || !(h > 0.0)) throw std::invalid_argument("beam_ghost_point_spectrum: bad geometry");
  long m = std::lround(length / h);
  int n = static_cast<int>(m) - 1;
  if (n < 5) throw std::invalid_argument("beam_ghost_point_spectrum: grid too coarse");
  const double he = length / static_cast<double>(m);
  const double inv_h4 = 1.0 / (he * he * he * he);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = 6.0 * inv_h4;
    if (i + 1 < n) A(i, i + 1) = A(i + 1, i) = -4.0 * inv_h4;
    if (i + 2 < n) A(i, i + 2) = A(i + 2, i) = 1.0 * inv_h4;
  }
  // u(0) = 0 and u'(0) = 0 via the reflected ghost u(-h) = u(h).
  A(0, 0) = 7.0 * inv_h4;
  A(n - 1, n - 1) = 7.0 * inv_h4;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("ghost-point beam eigensolver failed");

  Spectrum s;
  s.l = 2;
  s.dim = 1;
  s.h = he;
  s.domain_label = "ghost-beam(L=" + std::to_string(length) + ")";
  s.interior_size = static_cast<std::size_t>(n);
  if (count > n) count = n;
  s.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + count);
  return s;
}

}  // namespace polyspec
