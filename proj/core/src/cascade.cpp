#include "pseudospline/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pseudospline/errors.hpp"

namespace pseudospline {
namespace {

constexpr std::size_t kMaxHalfCount = std::size_t{1} << 26;

std::size_t checked_count(double half_width, double step, const char* what) {
  if (!(half_width > 0.0) || !(step > 0.0) || !std::isfinite(half_width) || !std::isfinite(step)) {
    throw Error(ErrorKind::kResolution, std::string(what) + ": window and step must be positive");
  }
  const double ratio = half_width / step;
  const double rounded = std::round(ratio);
  if (std::fabs(ratio - rounded) > 1e-9 * std::max(1.0, ratio) || rounded < 1.0 ||
      rounded > static_cast<double>(kMaxHalfCount)) {
    std::ostringstream msg;
    msg << what << ": half width " << half_width << " is not a multiple of step " << step
        << " within the supported grid size";
    throw Error(ErrorKind::kResolution, msg.str());
  }
  return static_cast<std::size_t>(rounded);
}

// Support half-width of the profile: 2^(m-1) for a cascade level, else the window.
double support_edge(const FourierProfile& p) {
  if (!p.level) return p.half_width;
  return std::min(std::ldexp(1.0, *p.level - 1), p.half_width);
}

// Trapezoid weights on [-c, c], c the support edge; half weight at grid points
// on the edge, which resolves the jump of a truncated level to its midpoint.
std::vector<double> trapezoid_weights(const FourierProfile& p) {
  const double edge = support_edge(p);
  const double tol = 1e-9 * p.step;
  std::vector<double> w(p.values.size(), 0.0);
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double g = std::fabs(p.point(j));
    if (std::fabs(g - edge) <= tol) {
      w[j] = 0.5;
    } else if (g < edge) {
      w[j] = 1.0;
    }
  }
  return w;
}

double sup_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
  return d;
}

double sup_modulus(const std::vector<Complex>& a) {
  double d = 0.0;
  for (const Complex& v : a) d = std::max(d, std::abs(v));
  return d;
}

}  // namespace

Complex FourierProfile::at(double gamma) const {
  const double pos = gamma / step + static_cast<double>(half_count());
  const double last = static_cast<double>(values.size() - 1);
  if (!(pos >= -1e-9) || !(pos <= last + 1e-9)) {
    std::ostringstream msg;
    msg << "profile evaluation at " << gamma << " outside window [-" << half_width << ", "
        << half_width << "]";
    throw Error(ErrorKind::kWindow, msg.str());
  }
  const double clamped = std::clamp(pos, 0.0, last);
  const auto lo = static_cast<std::size_t>(std::floor(clamped));
  const double frac = clamped - static_cast<double>(lo);
  if (frac == 0.0 || lo + 1 >= values.size()) return values[lo];
  return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

Complex cascade_value(const PseudoSplineOrder& order, int level, double gamma) {
  if (std::fabs(gamma) > std::ldexp(1.0, level - 1)) return 0.0;
  Complex acc = 1.0;
  for (int j = 1; j <= level; ++j) acc *= eval_H0(order, std::ldexp(gamma, -j));
  return acc;
}

FourierProfile initial_profile(const PseudoSplineOrder& order, double window, double step) {
  const std::size_t m = checked_count(window, step, "initial_profile");
  FourierProfile p{order, 0, window, step, std::vector<Complex>(2 * m + 1)};
  for (std::size_t j = 0; j < p.values.size(); ++j) p.values[j] = cascade_value(order, 0, p.point(j));
  return p;
}

FourierProfile cascade_step(const FourierProfile& profile) {
  if (!profile.level) {
    throw Error(ErrorKind::kDomain, "cascade_step: profile carries no cascade level");
  }
  checked_count(profile.half_width, profile.step, "cascade_step");
  FourierProfile next = profile;
  next.level = *profile.level + 1;
  for (std::size_t j = 0; j < next.values.size(); ++j) {
    next.values[j] = cascade_value(profile.order, *next.level, next.point(j));
  }
  return next;
}

double l2_norm(const FourierProfile& profile) {
  const std::vector<double> w = trapezoid_weights(profile);
  double sum = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) sum += w[j] * std::norm(profile.values[j]);
  return std::sqrt(sum * profile.step);
}

CascadeResult run_cascade(const PseudoSplineOrder& order, const CascadeOptions& options) {
  if (options.levels < 1) {
    throw Error(ErrorKind::kDomain, "run_cascade: at least one level is required");
  }
  FourierProfile current = initial_profile(order, options.window, options.step);
  CascadeDiagnostics diag;
  diag.l2_norms.push_back(l2_norm(current));
  diag.bounded_by_one = sup_modulus(current.values) <= 1.0 + 1e-12;

  // Running product of the symbol factors; the indicator is applied per level.
  std::vector<Complex> product(current.values.size(), Complex(1.0));
  for (int m = 1; m <= options.levels; ++m) {
    FourierProfile next = current;
    next.level = m;
    const double edge = std::ldexp(1.0, m - 1);
    for (std::size_t j = 0; j < product.size(); ++j) {
      const double g = current.point(j);
      product[j] *= eval_H0(order, std::ldexp(g, -m));
      next.values[j] = std::fabs(g) > edge ? Complex(0.0) : product[j];
    }
    const double change = sup_distance(next.values, current.values);
    diag.sup_changes.push_back(change);
    diag.l2_norms.push_back(l2_norm(next));
    if (diag.l2_norms[m] > diag.l2_norms[m - 1] + 1e-10) diag.l2_monotone = false;
    if (sup_modulus(next.values) > 1.0 + 1e-12) diag.bounded_by_one = false;
    current = std::move(next);
    if (change < options.convergence_tol && !diag.converged) {
      diag.converged = true;
      diag.converged_level = m;
      if (options.stop_on_convergence) break;
    }
  }

  const auto& sc = diag.sup_changes;
  if (!diag.converged && sc.size() >= 4 && sc.back() >= sc[sc.size() - 4]) {
    std::ostringstream msg;
    msg << "sup change did not decrease over the last 3 levels (" << sc[sc.size() - 4] << " -> "
        << sc.back() << ")";
    diag.warning = msg.str();
  }
  return {std::move(current), std::move(diag)};
}

double refinement_residual(const FourierProfile& profile) {
  const auto m = static_cast<std::ptrdiff_t>(profile.half_count());
  const double limit = 0.5 * profile.half_width + 1e-9 * profile.step;
  double residual = 0.0;
  for (std::ptrdiff_t i = -m; i <= m; i += 1) {
    if (i % 2 != 0) continue;
    const double g = static_cast<double>(i) * profile.step;
    if (std::fabs(g) > limit) continue;
    const Complex half = profile.values[static_cast<std::size_t>(m + i / 2)];
    const Complex full = profile.values[static_cast<std::size_t>(m + i)];
    residual = std::max(residual, std::abs(full - eval_H0(profile.order, 0.5 * g) * half));
  }
  return residual;
}

double decay_exponent_bound(const PseudoSplineOrder& order) {
  double p_max = 0.0;
  if (order.is_fractional()) {
    p_max = eval_p(order, 0.75).real();
  } else {
    constexpr int kSamples = 1024;
    for (int i = 0; i <= kSamples; ++i) {
      p_max = std::max(p_max, std::abs(eval_p(order, static_cast<double>(i) / kSamples)));
    }
  }
  return 2.0 * order.alpha() - std::log2(p_max);
}

double tail_mass_estimate(const FourierProfile& profile) {
  if (profile.level && std::ldexp(1.0, *profile.level - 1) <= profile.half_width) return 0.0;
  const double beta = decay_exponent_bound(profile.order);
  if (beta <= 1.0) return std::numeric_limits<double>::infinity();
  const double w = profile.half_width;
  double c = 0.0;
  for (std::size_t j = 0; j < profile.values.size(); ++j) {
    const double g = std::fabs(profile.point(j));
    if (g < 0.5 * w) continue;
    c = std::max(c, std::abs(profile.values[j]) * std::pow(1.0 + g, beta));
  }
  return 2.0 * c * std::pow(1.0 + w, 1.0 - beta) / (beta - 1.0);
}

TimeProfile to_time_domain(const FourierProfile& profile, double half_width, double step,
                           std::optional<double> accuracy) {
  const std::size_t n = checked_count(half_width, step, "to_time_domain");
  const double tail = tail_mass_estimate(profile);
  if (accuracy && !(tail <= *accuracy)) {
    std::ostringstream msg;
    msg << "to_time_domain: estimated tail error " << tail << " exceeds requested accuracy "
        << *accuracy << "; enlarge the window";
    throw Error(ErrorKind::kTolerance, msg.str());
  }
  const std::vector<double> w = trapezoid_weights(profile);
  TimeProfile out{profile.order, half_width, step, std::vector<Complex>(2 * n + 1), tail};
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double t = out.point(i);
    Complex sum = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] == 0.0) continue;
      const SinCosPi e = sincos_pi(2.0 * profile.point(k) * t);
      sum += w[k] * profile.values[k] * Complex(e.cos, e.sin);
    }
    out.values[i] = sum * profile.step;
  }
  return out;
}

}  // namespace pseudospline
