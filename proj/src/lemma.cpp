#include "lemma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "parallel.hpp"

namespace polyspec {

namespace {
constexpr double kPi = std::numbers::pi;

double log_unit_ball_volume(int n) {
  return 0.5 * n * std::log(kPi) - std::lgamma(0.5 * n + 1.0);
}
}  // namespace

void LemmaInputs::validate() const {
  if (!(b >= 1.0)) throw std::invalid_argument("lemma: b must be >= 1");
  if (l < 1) throw std::invalid_argument("lemma: l must be >= 1");
  if (!(A > 0.0)) throw std::invalid_argument("lemma: A must be positive");
  if (!(psi0 > 0.0)) throw std::invalid_argument("lemma: psi(0) must be positive");
  if (!(eta > 0.0)) throw std::invalid_argument("lemma: eta must be positive");
}

double lemma1_rhs(const LemmaInputs& in) {
  in.validate();
  const double b = in.b;
  const int l = in.l;
  const double log_ba = std::log(b * in.A);
  const double log_psi0 = std::log(in.psi0);
  const double log_eta = std::log(in.eta);

  double total = std::exp((b + 2.0 * l) / b * log_ba - 2.0 * l / b * log_psi0);
  double log_pochhammer = 0.0;  // log(b(b+2)...(b+2p-2))
  for (int p = 1; p <= l; ++p) {
    log_pochhammer += std::log(b + 2.0 * (p - 1));
    double log_term = std::log(static_cast<double>(l + 1 - p)) + (b + 2.0 * (l - p)) / b * log_ba +
                      (2.0 * p * b - 2.0 * (l - p)) / b * log_psi0 - p * std::log(6.0) - log_pochhammer -
                      2.0 * p * log_eta;
    total += std::exp(log_term);
  }
  return total / (b + 2.0 * l);
}

RadialProfile sample_admissible_profile(std::uint64_t seed, double eta, double psi0, double support, int pieces) {
  if (!(eta > 0.0) || !(psi0 > 0.0) || !(support > 0.0))
    throw std::invalid_argument("sample_admissible_profile: eta, psi0, support must be positive");
  if (pieces < 1) throw std::invalid_argument("sample_admissible_profile: pieces must be >= 1");
  if (psi0 > eta * support * (1.0 + 1e-12))
    throw std::invalid_argument("sample_admissible_profile: psi0 > eta*support, profile cannot reach zero");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> slope_dist(-eta, 0.0);

  const double width = support / pieces;
  RadialProfile p;
  p.slope_bound = eta;
  p.s.push_back(0.0);
  p.value.push_back(psi0);

  double v = psi0;
  bool closed = false;
  for (int i = 0; i < pieces && !closed; ++i) {
    double s0 = i * width;
    double s1 = (i + 1) * width;
    double m = slope_dist(rng);
    // The tail must stay reachable: v + m*width <= eta*(support - s1), i.e.
    // clamp m downward when the remaining drop would become infeasible. On
    // the feasibility boundary this forces m = -eta.
    double m_required = (eta * (support - s1) - v) / width;
    m = std::max(std::min(m, m_required), -eta);
    double v_next = v + m * width;
    if (v_next < 1e-14 * psi0) {
      // Crosses zero inside this piece; truncate at the crossing.
      double cross = (m < 0.0) ? std::min(s1, s0 + v / (-m)) : s1;
      p.s.push_back(cross);
      p.value.push_back(0.0);
      closed = true;
    } else {
      p.s.push_back(s1);
      p.value.push_back(v_next);
      v = v_next;
    }
  }
  if (!closed) p.value.back() = 0.0;  // rounding slack on the final clamp only
  p.validate();
  return p;
}

double physical_eta(int n, double volume) {
  if (n < 1) throw std::invalid_argument("physical_eta: dimension must be >= 1");
  if (!(volume > 0.0)) throw std::invalid_argument("physical_eta: volume must be positive");
  return std::exp(-n * std::log(2.0 * kPi) - log_unit_ball_volume(n) / n + (n + 1.0) / n * std::log(volume));
}

double f_profile(const FProfileInputs& in) {
  if (in.n < 1 || in.l < 1 || in.k < 1) throw std::invalid_argument("f_profile: n, l, k must be >= 1");
  if (!(in.volume > 0.0) || !(in.eta > 0.0)) throw std::invalid_argument("f_profile: volume and eta must be positive");
  const double t_max = std::exp(-in.n * std::log(2.0 * kPi)) * in.volume;
  if (!(in.t > 0.0) || in.t > t_max * (1.0 + 1e-12))
    throw std::invalid_argument("f_profile: t outside (0, (2pi)^-n V]");

  const int n = in.n;
  const int l = in.l;
  const double log_bn = log_unit_ball_volume(n);
  const double log_k_over_bn = std::log(static_cast<double>(in.k)) - log_bn;
  const double log_t = std::log(in.t);
  const double prefactor = n * std::exp(log_bn) / (n + 2.0 * l);

  double total = std::exp((n + 2.0 * l) / static_cast<double>(n) * log_k_over_bn - 2.0 * l / static_cast<double>(n) * log_t);
  double log_pochhammer = 0.0;
  for (int p = 1; p <= l; ++p) {
    log_pochhammer += std::log(n + 2.0 * (p - 1));
    double log_term = std::log(static_cast<double>(l + 1 - p)) - p * std::log(6.0) - log_pochhammer -
                      2.0 * p * std::log(in.eta) + (n + 2.0 * (l - p)) / n * log_k_over_bn +
                      (2.0 * p * (n + 1.0) - 2.0 * l) / n * log_t;
    total += std::exp(log_term);
  }
  return prefactor * total;
}

ScanResult f_profile_scan(const FProfileInputs& base, int samples) {
  if (samples < 2) throw std::invalid_argument("f_profile_scan: need at least 2 samples");
  const double t_max = std::exp(-base.n * std::log(2.0 * kPi)) * base.volume;
  const double t_min = t_max * 1e-6;

  ScanResult r;
  r.strictly_decreasing = true;
  r.worst_step = -std::numeric_limits<double>::infinity();
  FProfileInputs in = base;
  double prev = 0.0;
  for (int i = 0; i < samples; ++i) {
    in.t = t_min * std::pow(t_max / t_min, static_cast<double>(i) / (samples - 1));
    double f = f_profile(in);
    if (i > 0) {
      double step = f - prev;  // must be negative for ascending t
      if (step > r.worst_step) {
        r.worst_step = step;
        r.t_at_worst = in.t;
      }
      if (!(step < 0.0)) r.strictly_decreasing = false;
    }
    prev = f;
  }
  return r;
}

FuzzResult lemma1_fuzz(const FuzzOptions& opt) {
  if (opt.l_max < 1) throw std::invalid_argument("lemma1_fuzz: l_max must be >= 1");

  auto run_range = [&opt](std::uint64_t first, std::uint64_t last) {
    FuzzResult res;
    res.worst_margin = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = first; seed < last; ++seed) {
      RadialProfile psi = sample_admissible_profile(seed, opt.eta, opt.psi0, opt.support, opt.pieces);
      for (double b : opt.b_grid) {
        for (int l = 1; l <= opt.l_max; ++l) {
          MomentPair m = moment_integrals(psi, b, l);
          if (m.A <= 0.0) continue;  // degenerate zero profile
          double rhs = lemma1_rhs({b, l, m.A, psi.value.front(), opt.eta});
          double margin = m.A_l - rhs;
          ++res.trials;
          if (margin < res.worst_margin) {
            res.worst_margin = margin;
            res.worst_b = b;
            res.worst_l = l;
            res.worst_seed = seed;
          }
          if (margin < 0.0) ++res.violations;
        }
      }
    }
    return res;
  };

  // Partition by seed range; merge sorted by range start so the reported
  // worst case is deterministic.
  std::mutex mu;
  std::vector<std::pair<std::uint64_t, FuzzResult>> partial;
  parallel_chunks(opt.seeds, [&](std::size_t begin, std::size_t end) {
    FuzzResult r = run_range(begin, end);
    std::lock_guard<std::mutex> lock(mu);
    partial.emplace_back(begin, r);
  });
  std::sort(partial.begin(), partial.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  FuzzResult res;
  res.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& [_, p] : partial) {
    res.trials += p.trials;
    res.violations += p.violations;
    if (p.trials > 0 && p.worst_margin < res.worst_margin) {
      res.worst_margin = p.worst_margin;
      res.worst_b = p.worst_b;
      res.worst_l = p.worst_l;
      res.worst_seed = p.worst_seed;
    }
  }
  return res;
}

}  // namespace polyspec
