#pragma once

#include <complex>

namespace pseudospline {

using Complex = std::complex<double>;

/// Principal-branch log Gamma(w), imaginary part in (-pi, pi].
///
/// Lanczos approximation with g = 7 and the nine-term coefficient set
/// (relative accuracy about 1e-15 for Re w >= 1/2); the reflection formula
/// covers Re w < 1/2. Throws ErrorKind::kPole for w in {0, -1, -2, ...}.
Complex log_gamma(Complex w);

/// Generalized binomial coefficient Gamma(a+1) / (Gamma(k+1) Gamma(a-k+1)).
///
/// Uses the falling-factorial product a(a-1)...(a-k+1)/k! for k <= 32 or when
/// either Gamma argument is a pole, and the log-Gamma route otherwise.
Complex complex_binomial(Complex a, unsigned k);

/// x^z = exp(z ln x) for x > 0. 0^z is 0 when Re z >= 1 (continuous
/// extension) and a domain error otherwise, as is x < 0.
Complex real_pow_complex(double x, Complex z);

struct SinCosPi {
  double sin;
  double cos;
};

/// sin(pi t) and cos(pi t) with exact argument reduction, so multiples of
/// 1/2 produce exact zeros and +-1.
SinCosPi sincos_pi(double t) noexcept;

}  // namespace pseudospline
