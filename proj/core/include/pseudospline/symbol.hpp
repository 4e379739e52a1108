#pragma once

#include <cstddef>
#include <vector>

#include "pseudospline/special.hpp"

namespace pseudospline {

/// Whether l is restricted to 0 <= l <= floor(alpha - 1/2).
enum class EllRange {
  kAdmissible,
  kExtended,  ///< any l >= 0; used for orders such as (3.2+i, 3) outside the proven range
};

/// The parameter triple (z, l, u) of a pseudo-spline symbol.
///
/// The binomial coefficients used by every evaluation are computed once at
/// construction, so copies are cheap to evaluate but not tiny.
class PseudoSplineOrder {
 public:
  PseudoSplineOrder(Complex z, int ell, double shift_u = 0.0,
                    EllRange range = EllRange::kAdmissible);

  Complex z() const noexcept { return z_; }
  double alpha() const noexcept { return z_.real(); }
  int ell() const noexcept { return ell_; }
  double shift() const noexcept { return shift_u_; }
  EllRange range() const noexcept { return range_; }

  bool is_fractional() const noexcept { return z_.imag() == 0.0; }
  bool in_admissible_range() const noexcept { return ell_ <= max_admissible_ell(alpha()); }

  PseudoSplineOrder with_shift(double u) const;

  /// floor(alpha - 1/2), the largest l for which the partition bounds are proven.
  static int max_admissible_ell(double alpha) noexcept;

  /// binom(z+l, k), k = 0..l.
  const std::vector<Complex>& definition_coefficients() const noexcept { return def_coeffs_; }
  /// binom(z-1+k, k), k = 0..l.
  const std::vector<Complex>& taylor_coefficients() const noexcept { return taylor_coeffs_; }
  /// (z+l) binom(z-1+l, l), so that q'(x) = -K x^l (1-x)^(z-1).
  Complex derivative_constant() const noexcept { return derivative_constant_; }

  friend bool operator==(const PseudoSplineOrder& a, const PseudoSplineOrder& b) noexcept {
    return a.z_ == b.z_ && a.ell_ == b.ell_ && a.shift_u_ == b.shift_u_;
  }

 private:
  Complex z_;
  int ell_;
  double shift_u_;
  EllRange range_;
  std::vector<Complex> def_coeffs_;
  std::vector<Complex> taylor_coeffs_;
  Complex derivative_constant_;
};

/// Uniform grid gamma_j = j/N - 1/2, j = 0..N-1, on the torus [-1/2, 1/2).
class TorusGrid {
 public:
  explicit TorusGrid(std::size_t resolution);

  std::size_t resolution() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_; }
  double point(std::size_t j) const noexcept {
    return static_cast<double>(j) / static_cast<double>(n_) - 0.5;
  }
  /// Index of gamma_j + 1/2 (mod 1).
  std::size_t half_shift(std::size_t j) const noexcept { return (j + n_ / 2) % n_; }
  /// Index of gamma = 0.
  std::size_t origin() const noexcept { return n_ / 2; }

  friend bool operator==(const TorusGrid& a, const TorusGrid& b) noexcept { return a.n_ == b.n_; }

 private:
  std::size_t n_;
};

struct SampledSymbol {
  PseudoSplineOrder order;
  TorusGrid grid;
  std::vector<Complex> values;
};

enum class PForm { kDefinition, kTaylor };

Complex eval_p(const PseudoSplineOrder& order, double x, PForm form = PForm::kTaylor);
Complex eval_q(const PseudoSplineOrder& order, double x);
/// q(x) with 1-x supplied by the caller (e.g. cos^2 when x = sin^2), which
/// keeps full relative accuracy near x = 1.
Complex eval_q_split(const PseudoSplineOrder& order, double x, double one_minus_x);
/// Closed-form derivative on [0, 1).
Complex eval_q_prime(const PseudoSplineOrder& order, double x);

/// 1 - q(x) without cancellation: for x <= 1/2 the integral of q' is summed
/// as a power series, K sum_n binom(z-1, n) (-1)^n x^(l+1+n) / (l+1+n).
Complex eval_one_minus_q(const PseudoSplineOrder& order, double x);

/// H0(gamma) = e^{-2 pi i u g} q(sin^2 pi gamma), g the representative of
/// gamma in [-1/2, 1/2), so the shifted symbol stays 1-periodic.
Complex eval_H0(const PseudoSplineOrder& order, double gamma);

SampledSymbol sample_H0(const PseudoSplineOrder& order, const TorusGrid& grid);

/// 2^(1-2 alpha-2 l) |sum_{k<=l} binom(z+l, k)|^2, the partition value at x = 1/2.
double theta_bound(const PseudoSplineOrder& order);

struct PartitionExtrema {
  double min;
  double argmin;
  double max;
  double argmax;
};

/// Extrema of |H0(g)|^2 + |H0(g+1/2)|^2 over the grid; ties go to the first index.
PartitionExtrema partition_extrema(const PseudoSplineOrder& order, const TorusGrid& grid);

/// max over the grid of |H0 - 1| / x^eps with x = sin^2 pi gamma, eps = 1 for
/// u = 0 and 1/2 otherwise. A finite result is the Lipschitz-type bound.
double lipschitz_check(const PseudoSplineOrder& order, const TorusGrid& grid);

}  // namespace pseudospline
