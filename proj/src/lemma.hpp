#pragma once

#include <cstdint>
#include <vector>

#include "radial_profile.hpp"

namespace polyspec {

/// Parameters of the moment inequality for decreasing profiles: any psi >= 0
/// with -eta <= psi' <= 0 and A = int s^(b-1) psi ds obeys
/// A_l >= lemma1_rhs(b, l, A, psi(0), eta).
struct LemmaInputs {
  double b = 1.0;
  int l = 1;
  double A = 0.0;
  double psi0 = 0.0;  // psi(0)
  double eta = 0.0;   // slope bound

  void validate() const;
};

/// Closed-form right-hand side:
///   1/(b+2l) [ (bA)^((b+2l)/b) psi0^(-2l/b)
///            + sum_{p=1}^{l} (l+1-p)(bA)^((b+2(l-p))/b) psi0^((2pb-2(l-p))/b)
///                            / (6^p b(b+2)...(b+2p-2) eta^(2p)) ].
double lemma1_rhs(const LemmaInputs& in);

/// Deterministic-from-seed admissible profile: psi(0) = psi0, chord slopes
/// drawn uniformly from [-eta, 0] and clamped so the profile reaches zero at
/// or before `support`. Requires psi0 <= eta * support.
RadialProfile sample_admissible_profile(std::uint64_t seed, double eta, double psi0, double support, int pieces);

/// Arguments of the phi(0)-substitution function F(t) on (0, (2pi)^-n V].
struct FProfileInputs {
  int n = 1;
  int l = 1;
  std::uint64_t k = 1;
  double volume = 1.0;
  double eta = 1.0;
  double t = 0.0;
};

/// F(t) = n B_n/(n+2l) (k/B_n)^((n+2l)/n) t^(-2l/n)
///      + n B_n/(n+2l) sum_p (l+1-p)/(6^p n...(n+2p-2) eta^(2p))
///                            (k/B_n)^((n+2l-2p)/n) t^((2pn+2p-2l)/n).
double f_profile(const FProfileInputs& in);

/// Smallest slope bound for which F is guaranteed decreasing:
/// (2pi)^-n B_n^(-1/n) V^((n+1)/n).
double physical_eta(int n, double volume);

struct ScanResult {
  bool strictly_decreasing = false;
  double worst_step = 0.0;  // max of F(t_{i+1}) - F(t_i) over ascending t
  double t_at_worst = 0.0;
};

/// Evaluate F on `samples` log-spaced points spanning (0, (2pi)^-n V] and
/// check it decreases strictly.
ScanResult f_profile_scan(const FProfileInputs& base, int samples);

struct FuzzOptions {
  std::uint64_t seeds = 1000;
  std::vector<double> b_grid{1.0, 1.5, 2.0, 3.0, 5.0};
  int l_max = 4;
  double eta = 1.0;
  double psi0 = 1.0;
  double support = 4.0;
  int pieces = 8;
};

struct FuzzResult {
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  double worst_margin = 0.0;  // min over trials of (A_l - rhs); >= 0 when clean
  double worst_b = 0.0;
  int worst_l = 0;
  std::uint64_t worst_seed = 0;
};

/// Sample profiles and check A_l >= rhs across the whole (seed, b, l) grid.
/// Exact piecewise integration, so a violation means the inequality itself
/// failed, not quadrature.
FuzzResult lemma1_fuzz(const FuzzOptions& opt);

}  // namespace polyspec
