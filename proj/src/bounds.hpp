#pragma once

#include <cstdint>

namespace polyspec {

/// Inputs shared by every closed-form eigenvalue bound: dimension n, operator
/// order l, volume V, moment of inertia I, eigenvalue index k.
struct BoundInputs {
  int n = 1;
  int l = 1;
  double volume = 0.0;
  double inertia = 0.0;
  std::uint64_t k = 1;

  void validate() const;
  /// True when I is below the rearrangement floor; geometrically impossible,
  /// evaluation still proceeds and reports flag the row.
  bool inertia_below_floor() const;
};

enum class BoundKind { AverageOfFirstK, IndividualKth, Asymptotic };

struct BoundValue {
  double value = 0.0;
  BoundKind kind = BoundKind::AverageOfFirstK;
};

/// Weyl-regime leading term (2pi)^(2l)/(B_n V)^(2l/n) k^(2l/n); the average
/// form carries the extra factor n/(n+2l).
BoundValue asymptotic_leading(const BoundInputs& in, bool average);

/// Levine-Protter lower bound on the mean of the first k eigenvalues:
/// n/(n+2l) (2pi)^(2l)/(B_n V)^(2l/n) k^(2l/n).
BoundValue classical_average_bound(const BoundInputs& in);

/// Individual k-th eigenvalue bound with the same right-hand side as the
/// averaged form.
BoundValue individual_bound(const BoundInputs& in);

/// Polya tiling bound (l = 1 only): 4pi^2/(B_n V)^(2/n) k^(2/n). Conjectural
/// for non-tiling domains.
BoundValue polya_tiling_bound(const BoundInputs& in);

/// Melas bound (l = 1 only): classical average plus V/(24(n+2)I).
BoundValue melas_average(const BoundInputs& in);

/// Average bound with l Melas-type correction terms:
///   n/(n+2l) (2pi)^(2l)/(B_n V)^(2l/n) k^(2l/n)
/// + n/(n+2l) sum_{p=1}^{l} (l+1-p) / (24^p n(n+2)...(n+2p-2))
///     * (2pi)^(2(l-p))/(B_n V)^(2(l-p)/n) * (V/I)^p * k^(2(l-p)/n).
/// Reduces to melas_average at l = 1. Reported as "theorem1" in CSV/JSON.
BoundValue improved_average_bound(const BoundInputs& in);

/// The correction sum alone: improved_average_bound - classical_average_bound.
double improvement_term(const BoundInputs& in);

/// B_n^(4/n)/(2pi)^2; strictly below 1/2 for every n >= 1.
double weyl_gamma_ratio(int n);

}  // namespace polyspec
