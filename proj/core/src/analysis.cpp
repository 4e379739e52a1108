#include "pseudospline/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "pseudospline/errors.hpp"

namespace pseudospline {
namespace {

void require_fractional(const PseudoSplineOrder& order, const char* what) {
  if (!order.is_fractional()) {
    std::ostringstream msg;
    msg << what << ": only defined for real z (Im z = " << order.z().imag() << ")";
    throw Error(ErrorKind::kDomain, msg.str());
  }
}

FitResult least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  FitResult fit{};
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  fit.points = static_cast<int>(xs.size());
  return fit;
}

}  // namespace

LowpassVerdict lowpass_condition(const PseudoSplineOrder& order) {
  if (order.ell() == 0) return {true, 0.0};
  const double x = order.alpha();
  const double y = order.z().imag();
  double sum = 0.0;
  for (int j = 0; j <= order.ell(); ++j) sum += std::atan(y / (x + j));
  return {std::fabs(sum) < std::numbers::pi / 2.0, sum};
}

LowpassFloor lowpass_floor(const FourierProfile& profile, double neighborhood,
                           const FourierProfile* base) {
  const LowpassVerdict verdict = lowpass_condition(profile.order);
  if (!verdict.satisfied) {
    std::ostringstream msg;
    msg << "lowpass_floor: arctan sum " << verdict.arctan_sum << " outside (-pi/2, pi/2)";
    throw Error(ErrorKind::kConditionViolated, msg.str());
  }
  if (!(neighborhood > 0.0) || neighborhood > profile.half_width) {
    throw Error(ErrorKind::kWindow, "lowpass_floor: neighborhood must lie inside the window");
  }
  if (base && (base->values.size() != profile.values.size() || base->step != profile.step)) {
    throw Error(ErrorKind::kGridIncompatible, "lowpass_floor: base profile uses a different grid");
  }
  LowpassFloor out{std::numeric_limits<double>::infinity(), std::nullopt, 0.0};
  const double limit = neighborhood + 1e-9 * profile.step;
  for (std::size_t j = 0; j < profile.values.size(); ++j) {
    if (std::fabs(profile.point(j)) > limit) continue;
    const double mag = std::abs(profile.values[j]);
    out.floor = std::min(out.floor, mag);
    if (base) out.max_violation = std::max(out.max_violation, std::abs(base->values[j]) - mag);
  }
  if (base) out.ordering_holds = out.max_violation <= 1e-9;
  return out;
}

double kappa(const PseudoSplineOrder& order) {
  require_fractional(order, "kappa");
  return std::log2(eval_p(order, 0.75, PForm::kTaylor).real());
}

double holder_exponent(const PseudoSplineOrder& order) {
  return 2.0 * order.alpha() - kappa(order) - 1.0;
}

double approximation_order(const PseudoSplineOrder& order) {
  require_fractional(order, "approximation_order");
  return std::min(2.0 * order.alpha(), 2.0 * (order.ell() + 1));
}

FitResult decay_fit(const FourierProfile& profile, double lo, std::optional<double> hi) {
  require_fractional(profile.order, "decay_fit");
  const double upper = hi.value_or(std::min(512.0, 0.9 * profile.half_width));
  if (!(lo > 0.0) || !(upper > lo) || upper > profile.half_width) {
    std::ostringstream msg;
    msg << "decay_fit: range [" << lo << ", " << upper << "] not inside window "
        << profile.half_width;
    throw Error(ErrorKind::kInsufficientRange, msg.str());
  }
  std::vector<double> xs;
  std::vector<double> ys;
  const auto& v = profile.values;
  for (std::size_t j = 1; j + 1 < v.size(); ++j) {
    const double g = std::fabs(profile.point(j));
    if (g < lo || g > upper) continue;
    const double a = std::abs(v[j]);
    if (a > 0.0 && a >= std::abs(v[j - 1]) && a > std::abs(v[j + 1])) {
      xs.push_back(std::log1p(g));
      ys.push_back(std::log(a));
    }
  }
  if (xs.size() < 3) {
    throw Error(ErrorKind::kInsufficientRange, "decay_fit: fewer than 3 local maxima in range");
  }
  return least_squares(xs, ys);
}

bool verify_L_conditions(const PseudoSplineOrder& order, int samples) {
  require_fractional(order, "verify_L_conditions");
  if (samples < 4) throw Error(ErrorKind::kDomain, "verify_L_conditions: need >= 4 samples");
  const double p34 = eval_p(order, 0.75).real();
  const double slack = 1e-12 * p34 * p34;
  for (int i = 0; i <= samples; ++i) {
    const double x = static_cast<double>(i) / samples;
    const double px = eval_p(order, x).real();
    if (x <= 0.75 && px > p34 + slack) return false;
    if (x >= 0.75) {
      const double y = std::clamp(4.0 * x * (1.0 - x), 0.0, 1.0);
      if (px * eval_p(order, y).real() > p34 * p34 + slack) return false;
    }
  }
  return true;
}

FitResult zero_order_fit(const PseudoSplineOrder& order, double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || hi > 1e-2 || points < 2) {
    std::ostringstream msg;
    msg << "zero_order_fit: need 0 < lo < hi <= 1e-2 and >= 2 points, got [" << lo << ", " << hi
        << "]";
    throw Error(ErrorKind::kDomain, msg.str());
  }
  std::vector<double> xs;
  std::vector<double> ys;
  bool all_tiny = true;
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    const double g = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
    const double s = sincos_pi(g).sin;
    const Complex d = eval_one_minus_q(order, s * s);
    const double value = 2.0 * d.real() - std::norm(d);  // 1 - |q|^2
    if (value >= 1e-13) all_tiny = false;
    if (value > 0.0) {
      xs.push_back(std::log(g));
      ys.push_back(std::log(value));
    }
  }
  if (xs.size() < 2) {
    throw Error(ErrorKind::kInsufficientRange, "zero_order_fit: 1 - |H0|^2 vanishes on the range");
  }
  FitResult fit = least_squares(xs, ys);
  if (all_tiny) fit.warning = "1 - |H0|^2 < 1e-13 on the whole range; move the range away from 0";
  return fit;
}

AnalysisReport full_report(const PseudoSplineOrder& order, const AnalysisOptions& options) {
  const CascadeResult cascade = run_cascade(order, options.cascade);
  const LowpassVerdict lowpass = lowpass_condition(order);
  AnalysisReport r{order,
                   theta_bound(order),
                   lowpass,
                   std::nullopt,
                   std::nullopt,
                   std::nullopt,
                   std::nullopt,
                   std::nullopt,
                   zero_order_fit(order, options.zero_lo, options.zero_hi, options.zero_points),
                   std::nullopt,
                   std::nullopt,
                   cascade.diagnostics,
                   refinement_residual(cascade.profile)};
  if (order.is_fractional()) {
    r.kappa = kappa(order);
    r.holder_s = holder_exponent(order);
    r.approx_order = approximation_order(order);
    r.L_conditions = verify_L_conditions(order);
    r.decay = decay_fit(cascade.profile, options.decay_lo, options.decay_hi);
    r.decay_bound = -(2.0 * order.alpha() - *r.kappa);
  }
  if (lowpass.satisfied) {
    if (order.ell() > 0) {
      const PseudoSplineOrder base_order(order.z(), 0, order.shift());
      const CascadeResult base = run_cascade(base_order, options.cascade);
      r.floor = lowpass_floor(cascade.profile, options.lowpass_neighborhood, &base.profile);
    } else {
      r.floor = lowpass_floor(cascade.profile, options.lowpass_neighborhood);
    }
  }
  return r;
}

}  // namespace pseudospline
