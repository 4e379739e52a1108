#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pseudospline/symbol.hpp"

namespace pseudospline {

/// Samples of a Fourier transform on gamma_j = (j - M) * step, j = 0..2M,
/// where M = half_width / step.
struct FourierProfile {
  PseudoSplineOrder order;
  std::optional<int> level;  ///< cascade level m, empty for other profiles
  double half_width;
  double step;
  std::vector<Complex> values;

  std::size_t half_count() const noexcept { return values.size() / 2; }
  double point(std::size_t j) const noexcept {
    return (static_cast<double>(j) - static_cast<double>(half_count())) * step;
  }
  /// Linear interpolation; throws ErrorKind::kWindow outside [-W, W].
  Complex at(double gamma) const;
};

/// Level-0 profile: the indicator of [-1/2, 1/2] on the given window.
FourierProfile initial_profile(const PseudoSplineOrder& order, double window, double step);

/// Level m+1 from level m by direct evaluation of the finite product.
FourierProfile cascade_step(const FourierProfile& profile);

/// Product prod_{j=1}^m H0(2^-j gamma) restricted to |gamma| <= 2^(m-1).
Complex cascade_value(const PseudoSplineOrder& order, int level, double gamma);

struct CascadeOptions {
  int levels = 24;
  double window = 64.0;
  double step = 1.0 / 64.0;
  double convergence_tol = 1e-10;
  bool stop_on_convergence = true;
};

struct CascadeDiagnostics {
  std::vector<double> sup_changes;  ///< entry m-1: sup |phi_m - phi_{m-1}| on the window
  std::vector<double> l2_norms;     ///< entry m: trapezoidal L2 norm of phi_m, m = 0..levels
  bool l2_monotone = true;          ///< non-increasing within 1e-10
  bool bounded_by_one = true;       ///< |phi_m| <= 1 + 1e-12 at every level
  bool converged = false;
  std::optional<int> converged_level;
  std::string warning;              ///< empty unless the sup changes stall
};

struct CascadeResult {
  FourierProfile profile;
  CascadeDiagnostics diagnostics;
};

CascadeResult run_cascade(const PseudoSplineOrder& order, const CascadeOptions& options = {});

/// Trapezoidal L2 norm over the profile's window (the support of a finite
/// level is cut at its endpoints, which lie on the grid).
double l2_norm(const FourierProfile& profile);

/// max |phi(g) - H0(g/2) phi(g/2)| over grid points with |g| <= W/2 whose
/// half lies on the grid.
double refinement_residual(const FourierProfile& profile);

struct TimeProfile {
  PseudoSplineOrder order;
  double half_width;  ///< T
  double step;        ///< dt
  std::vector<Complex> values;  ///< samples at t_j = -T + j dt
  double tail_error_estimate = 0.0;

  double point(std::size_t j) const noexcept {
    return -half_width + static_cast<double>(j) * step;
  }
};

/// Decay exponent beta with |phi_hat(g)| <= c (1+|g|)^-beta: 2 alpha - kappa,
/// where kappa = log2 p(3/4) for real z and log2 max_x |p(x)| otherwise.
double decay_exponent_bound(const PseudoSplineOrder& order);

/// Bound on the integral of |phi_hat| outside the window, from the decay
/// exponent and a constant fitted on W/2 <= |g| <= W. Infinite when beta <= 1.
double tail_mass_estimate(const FourierProfile& profile);

/// Inverse Fourier transform by the trapezoidal rule on the profile grid.
/// When accuracy is given, throws ErrorKind::kTolerance if the tail estimate
/// exceeds it.
TimeProfile to_time_domain(const FourierProfile& profile, double half_width, double step,
                           std::optional<double> accuracy = std::nullopt);

}  // namespace pseudospline
