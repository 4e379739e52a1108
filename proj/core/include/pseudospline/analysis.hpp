#pragma once

#include <optional>
#include <string>

#include "pseudospline/cascade.hpp"
#include "pseudospline/symbol.hpp"

namespace pseudospline {

struct LowpassVerdict {
  bool satisfied;
  double arctan_sum;  ///< sum_{j=0}^l atan(y / (x + j)) for z = x + iy; 0 when l = 0
};

/// The arctan-sum condition; l = 0 is always satisfied.
LowpassVerdict lowpass_condition(const PseudoSplineOrder& order);

struct LowpassFloor {
  double floor;                      ///< min |phi^| on |gamma| <= neighborhood
  std::optional<bool> ordering_holds;  ///< |phi^(z,0)| <= |phi^(z,l)| + 1e-9, if a base was given
  double max_violation = 0.0;        ///< max(|phi^(z,0)| - |phi^(z,l)|, 0)
};

/// Throws ErrorKind::kConditionViolated if the lowpass condition fails, and
/// ErrorKind::kGridIncompatible if base is sampled differently.
LowpassFloor lowpass_floor(const FourierProfile& profile, double neighborhood = 0.25,
                           const FourierProfile* base = nullptr);

/// log2 p(3/4). Real z only (ErrorKind::kDomain otherwise), as are the two below.
double kappa(const PseudoSplineOrder& order);
/// 2 alpha - kappa - 1.
double holder_exponent(const PseudoSplineOrder& order);
/// min(2 alpha, 2 (l + 1)).
double approximation_order(const PseudoSplineOrder& order);

struct FitResult {
  double slope;
  double intercept;
  double rms_residual;
  int points;
  std::string warning;
};

/// Least-squares slope of log|phi^| against log(1 + |gamma|) over the local
/// maxima of |phi^| with lo <= |gamma| <= hi. The default hi is
/// min(512, 0.9 W). Real z only; ErrorKind::kInsufficientRange if the range
/// leaves the window or holds fewer than 3 maxima.
FitResult decay_fit(const FourierProfile& profile, double lo = 16.0,
                    std::optional<double> hi = std::nullopt);

/// p(x) <= p(3/4) on [0, 3/4] and p(x) p(4x(1-x)) <= p(3/4)^2 on [3/4, 1],
/// on a uniform x-grid, with slack 1e-12 p(3/4)^2. Real z only.
bool verify_L_conditions(const PseudoSplineOrder& order, int samples = 4096);

/// Log-log slope of 1 - |H0(gamma)|^2 against gamma on log-spaced points in
/// [lo, hi], 0 < lo < hi <= 1e-2.
FitResult zero_order_fit(const PseudoSplineOrder& order, double lo = 1e-4, double hi = 1e-2,
                         int points = 64);

struct AnalysisOptions {
  /// All levels are run by default, so orders differing only in the shift
  /// (whose cascades converge at different speeds) are compared at equal depth.
  CascadeOptions cascade{.stop_on_convergence = false};
  double decay_lo = 16.0;
  std::optional<double> decay_hi;
  double zero_lo = 1e-4;
  double zero_hi = 1e-2;
  int zero_points = 64;
  double lowpass_neighborhood = 0.25;
};

/// Every applicable quantity for one order. Fields that are only defined for
/// real z stay empty for complex z.
struct AnalysisReport {
  PseudoSplineOrder order;
  double theta;
  LowpassVerdict lowpass;
  std::optional<double> kappa;
  std::optional<double> holder_s;
  std::optional<double> approx_order;
  std::optional<bool> L_conditions;
  std::optional<FitResult> decay;
  FitResult zero_order;
  std::optional<LowpassFloor> floor;
  std::optional<double> decay_bound;  ///< -(2 alpha - kappa), the exponent the fit must not exceed
  CascadeDiagnostics cascade;
  double refinement_residual;
};

AnalysisReport full_report(const PseudoSplineOrder& order, const AnalysisOptions& options = {});

}  // namespace pseudospline
