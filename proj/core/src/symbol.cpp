#include "pseudospline/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pseudospline/errors.hpp"

namespace pseudospline {
namespace {

void require_unit_interval(double x, bool closed_right, const char* what) {
  const bool ok = closed_right ? (x >= 0.0 && x <= 1.0) : (x >= 0.0 && x < 1.0);
  if (!ok) {
    std::ostringstream msg;
    msg << what << ": x = " << x << " outside " << (closed_right ? "[0, 1]" : "[0, 1)");
    throw Error(ErrorKind::kDomain, msg.str());
  }
}

// sum_k b_k x^k y^(l-k) via Horner in t = x/y, or in y/x when y is small.
Complex definition_sum(const std::vector<Complex>& b, double x, double y) {
  const int ell = static_cast<int>(b.size()) - 1;
  if (ell == 0) return b[0];
  Complex acc = 0.0;
  if (y >= x) {
    const double t = x / y;
    for (int k = ell; k >= 0; --k) acc = acc * t + b[k];
    return acc * std::pow(y, ell);
  }
  const double t = y / x;
  for (int k = 0; k <= ell; ++k) acc = acc * t + b[k];
  return acc * std::pow(x, ell);
}

Complex taylor_sum(const std::vector<Complex>& c, double x) {
  Complex acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// q evaluated with x and 1-x supplied separately, so that 1-x keeps full
// relative accuracy when it comes from cos^2.
Complex q_from(const PseudoSplineOrder& order, double x, double one_minus_x) {
  return real_pow_complex(one_minus_x, order.z()) *
         definition_sum(order.definition_coefficients(), x, one_minus_x);
}

Complex one_minus_q_series(const PseudoSplineOrder& order, double x) {
  if (x == 0.0) return 0.0;
  const Complex a = order.z() - 1.0;
  const int ell = order.ell();
  Complex c = 1.0;  // binom(z-1, n) (-1)^n
  double xp = std::pow(x, ell + 1);
  Complex sum = c * xp / static_cast<double>(ell + 1);
  for (int n = 0; n < 400; ++n) {
    c *= (static_cast<double>(n) - a) / static_cast<double>(n + 1);
    xp *= x;
    const Complex term = c * xp / static_cast<double>(ell + 2 + n);
    sum += term;
    if (c == 0.0 || std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return order.derivative_constant() * sum;
}

}  // namespace

PseudoSplineOrder::PseudoSplineOrder(Complex z, int ell, double shift_u, EllRange range)
    : z_(z), ell_(ell), shift_u_(shift_u), range_(range) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !std::isfinite(shift_u)) {
    throw Error(ErrorKind::kDomain, "pseudo-spline order: non-finite parameter");
  }
  if (z.real() < 1.0) {
    std::ostringstream msg;
    msg << "pseudo-spline order: Re z = " << z.real() << " but Re z >= 1 is required";
    throw Error(ErrorKind::kDomain, msg.str());
  }
  if (ell < 0) {
    throw Error(ErrorKind::kDomain, "pseudo-spline order: l must be nonnegative");
  }
  const int max_ell = max_admissible_ell(z.real());
  if (range == EllRange::kAdmissible && ell > max_ell) {
    std::ostringstream msg;
    msg << "pseudo-spline order: l = " << ell << " violates l <= floor(alpha - 1/2) = " << max_ell
        << " for alpha = " << z.real();
    throw Error(ErrorKind::kDomain, msg.str());
  }
  def_coeffs_.reserve(ell + 1);
  taylor_coeffs_.reserve(ell + 1);
  for (int k = 0; k <= ell; ++k) {
    def_coeffs_.push_back(complex_binomial(z + static_cast<double>(ell), k));
    taylor_coeffs_.push_back(complex_binomial(z - 1.0 + static_cast<double>(k), k));
  }
  derivative_constant_ = (z + static_cast<double>(ell)) * taylor_coeffs_.back();
}

PseudoSplineOrder PseudoSplineOrder::with_shift(double u) const {
  return PseudoSplineOrder(z_, ell_, u, range_);
}

int PseudoSplineOrder::max_admissible_ell(double alpha) noexcept {
  return static_cast<int>(std::floor(alpha - 0.5));
}

TorusGrid::TorusGrid(std::size_t resolution) : n_(resolution) {
  if (resolution < 4 || (resolution & (resolution - 1)) != 0) {
    std::ostringstream msg;
    msg << "torus grid: resolution " << resolution << " is not a power of two >= 4";
    throw Error(ErrorKind::kResolution, msg.str());
  }
}

Complex eval_p(const PseudoSplineOrder& order, double x, PForm form) {
  require_unit_interval(x, true, "eval_p");
  if (form == PForm::kDefinition) {
    return definition_sum(order.definition_coefficients(), x, 1.0 - x);
  }
  return taylor_sum(order.taylor_coefficients(), x);
}

Complex eval_q(const PseudoSplineOrder& order, double x) {
  require_unit_interval(x, true, "eval_q");
  return q_from(order, x, 1.0 - x);
}

Complex eval_q_split(const PseudoSplineOrder& order, double x, double one_minus_x) {
  require_unit_interval(x, true, "eval_q_split");
  require_unit_interval(one_minus_x, true, "eval_q_split");
  return q_from(order, x, one_minus_x);
}

Complex eval_q_prime(const PseudoSplineOrder& order, double x) {
  require_unit_interval(x, false, "eval_q_prime");
  const Complex xl = std::pow(x, order.ell());
  return -order.derivative_constant() * xl * real_pow_complex(1.0 - x, order.z() - 1.0);
}

Complex eval_one_minus_q(const PseudoSplineOrder& order, double x) {
  require_unit_interval(x, true, "eval_one_minus_q");
  if (x <= 0.5) return one_minus_q_series(order, x);
  return 1.0 - eval_q(order, x);
}

Complex eval_H0(const PseudoSplineOrder& order, double gamma) {
  const SinCosPi sc = sincos_pi(gamma);
  const Complex value = q_from(order, sc.sin * sc.sin, sc.cos * sc.cos);
  if (order.shift() == 0.0) return value;
  const double g = gamma - std::floor(gamma + 0.5);
  const SinCosPi ph = sincos_pi(2.0 * order.shift() * g);
  return value * Complex(ph.cos, -ph.sin);
}

SampledSymbol sample_H0(const PseudoSplineOrder& order, const TorusGrid& grid) {
  std::vector<Complex> values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) values[j] = eval_H0(order, grid.point(j));
  return {order, grid, std::move(values)};
}

double theta_bound(const PseudoSplineOrder& order) {
  Complex sum = 0.0;
  for (const Complex& b : order.definition_coefficients()) sum += b;
  return std::exp2(1.0 - 2.0 * order.alpha() - 2.0 * order.ell()) * std::norm(sum);
}

PartitionExtrema partition_extrema(const PseudoSplineOrder& order, const TorusGrid& grid) {
  const SampledSymbol h = sample_H0(order, grid);
  PartitionExtrema out{0.0, 0.0, 0.0, 0.0};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double s = std::norm(h.values[j]) + std::norm(h.values[grid.half_shift(j)]);
    if (j == 0 || s < out.min) {
      out.min = s;
      out.argmin = grid.point(j);
    }
    if (j == 0 || s > out.max) {
      out.max = s;
      out.argmax = grid.point(j);
    }
  }
  return out;
}

double lipschitz_check(const PseudoSplineOrder& order, const TorusGrid& grid) {
  const double eps = order.shift() == 0.0 ? 1.0 : 0.5;
  double c = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double s = sincos_pi(grid.point(j)).sin;
    const double x = s * s;
    if (x == 0.0) continue;
    c = std::max(c, std::abs(eval_H0(order, grid.point(j)) - 1.0) / std::pow(x, eps));
  }
  return c;
}

}  // namespace pseudospline
