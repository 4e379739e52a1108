#include "pseudospline/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pseudospline/errors.hpp"

namespace pseudospline {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_gamma_pole(Complex w) {
  return w.imag() == 0.0 && w.real() <= 0.0 && w.real() == std::floor(w.real());
}

void require_finite(Complex w, const char* what) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
    throw Error(ErrorKind::kDomain, std::string(what) + ": non-finite argument");
  }
}

Complex principal(Complex v) {
  double im = std::remainder(v.imag(), 2.0 * kPi);
  if (im <= -kPi) im += 2.0 * kPi;
  return {v.real(), im};
}

// log Gamma(w) for Re w >= 1/2, continuous branch (not yet reduced).
Complex log_gamma_right(Complex w) {
  const Complex shifted = w - 1.0;
  Complex series = kLanczosCoefficients[0];
  for (std::size_t i = 1; i < kLanczosCoefficients.size(); ++i) {
    series += kLanczosCoefficients[i] / (shifted + static_cast<double>(i));
  }
  const Complex t = shifted + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (shifted + 0.5) * std::log(t) - t + std::log(series);
}

Complex falling_factorial_binomial(Complex a, unsigned k) {
  Complex result = 1.0;
  for (unsigned j = 0; j < k; ++j) {
    result *= (a - static_cast<double>(j)) / static_cast<double>(j + 1);
  }
  return result;
}

}  // namespace

Complex log_gamma(Complex w) {
  require_finite(w, "log_gamma");
  if (is_gamma_pole(w)) {
    std::ostringstream msg;
    msg << "log_gamma: pole of Gamma at " << w.real();
    throw Error(ErrorKind::kPole, msg.str());
  }
  if (w.real() >= 0.5) {
    return principal(log_gamma_right(w));
  }
  // Reflection: Gamma(w) Gamma(1-w) = pi / sin(pi w).
  const Complex reflected = std::log(kPi) - std::log(std::sin(kPi * w)) - log_gamma_right(1.0 - w);
  return principal(reflected);
}

Complex complex_binomial(Complex a, unsigned k) {
  require_finite(a, "complex_binomial");
  if (k == 0) return 1.0;
  const Complex upper = a + 1.0;
  const Complex lower = a - static_cast<double>(k) + 1.0;
  if (k <= 32 || is_gamma_pole(upper) || is_gamma_pole(lower)) {
    return falling_factorial_binomial(a, k);
  }
  return std::exp(log_gamma(upper) - log_gamma(Complex(k + 1.0)) - log_gamma(lower));
}

Complex real_pow_complex(double x, Complex z) {
  require_finite(z, "real_pow_complex");
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw Error(ErrorKind::kDomain, "real_pow_complex: base must be a finite nonnegative real");
  }
  if (x == 0.0) {
    if (z.real() >= 1.0) return 0.0;
    throw Error(ErrorKind::kDomain, "real_pow_complex: 0^z undefined for Re z < 1");
  }
  if (x == 1.0) return 1.0;
  return std::exp(z * std::log(x));
}

SinCosPi sincos_pi(double t) noexcept {
  // Reduce to r in [-1, 1]; subtractions below are exact (Sterbenz).
  double r = std::remainder(t, 2.0);
  const bool negative = std::signbit(r);
  const double a = std::fabs(r);
  double s = 0.0;
  double c = 0.0;
  if (a <= 0.25) {
    s = std::sin(kPi * a);
    c = std::cos(kPi * a);
  } else if (a <= 0.75) {
    const double b = a - 0.5;
    s = std::cos(kPi * b);
    c = -std::sin(kPi * b);
  } else {
    const double b = 1.0 - a;
    s = std::sin(kPi * b);
    c = -std::cos(kPi * b);
  }
  return {negative ? -s : s, c};
}

}  // namespace pseudospline
