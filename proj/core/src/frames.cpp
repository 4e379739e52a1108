#include "pseudospline/frames.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "pseudospline/errors.hpp"

namespace pseudospline {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Complex> dft(std::vector<Complex> in, int sign) {
  std::vector<Complex> out(in.size());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(in.size()), reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(out.data()), sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

void require_filter_index(int n, const char* what) {
  if (n < 0 || n > 3) {
    std::ostringstream msg;
    msg << what << ": filter index " << n << " outside 0..3";
    throw Error(ErrorKind::kDomain, msg.str());
  }
}

Complex unit_phase(double gamma) {
  const SinCosPi e = sincos_pi(2.0 * gamma);
  return {e.cos, e.sin};
}

std::vector<Complex> fold(const CoefficientSequence& c, std::size_t length) {
  std::vector<Complex> h(length, Complex(0.0));
  const auto l = static_cast<long>(length);
  for (int k = c.first(); k <= c.last(); ++k) {
    const long m = ((static_cast<long>(k) % l) + l) % l;
    h[static_cast<std::size_t>(m)] += c.at(k);
  }
  return h;
}

void require_same_order(const FrameletBank& bank, const PseudoSplineOrder& order, const char* what) {
  if (!(bank.order == order)) {
    throw Error(ErrorKind::kDomain, std::string(what) + ": profile order differs from bank order");
  }
}

}  // namespace

double eval_eta(const PseudoSplineOrder& order, double gamma) {
  const SinCosPi sc = sincos_pi(gamma);
  const double s2 = sc.sin * sc.sin;
  const double c2 = sc.cos * sc.cos;
  const double y = std::min(s2, c2);
  const double one_minus_y = std::max(s2, c2);
  // |q(y)|^2 = 1 - 2 Re d + |d|^2 with d = 1 - q(y) from the series.
  const Complex d = eval_one_minus_q(order, y);
  const Complex q_far = eval_q_split(order, one_minus_y, y);
  const double eta = 2.0 * d.real() - std::norm(d) - std::norm(q_far);
  if (eta >= 0.0) return eta;
  if (eta >= -1e-9) return 0.0;
  std::ostringstream msg;
  msg << "eta(" << gamma << ") = " << eta
      << " < 0: |H0(g)|^2 + |H0(g+1/2)|^2 exceeds 1 for this order";
  throw Error(ErrorKind::kConsistency, msg.str());
}

double eval_sigma(const PseudoSplineOrder& order, double gamma, SigmaBranch branch) {
  const double root = std::sqrt(eval_eta(order, gamma));
  if (branch == SigmaBranch::kNonnegative || order.ell() % 2 == 1) return root;
  return sincos_pi(2.0 * gamma).sin < 0.0 ? -root : root;
}

Complex eval_framelet_symbol(const PseudoSplineOrder& order, int n, double gamma,
                             SigmaBranch branch) {
  require_filter_index(n, "eval_framelet_symbol");
  switch (n) {
    case 0:
      return eval_H0(order, gamma);
    case 1:
      return unit_phase(gamma) * std::conj(eval_H0(order, gamma + 0.5));
    case 2:
      return eval_sigma(order, gamma, branch) / kSqrt2;
    default:
      return unit_phase(gamma) * (eval_sigma(order, gamma, branch) / kSqrt2);
  }
}

double FrameletBank::max_tail_norm() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, c.tail_norm);
  return m;
}

CoefficientSequence extract_coeffs(const std::vector<Complex>& samples, int max_k, double eps) {
  const std::size_t n = samples.size();
  if (n < 4 || (n & (n - 1)) != 0) {
    throw Error(ErrorKind::kResolution, "extract_coeffs: sample count must be a power of two >= 4");
  }
  if (max_k < 0 || 2 * static_cast<std::size_t>(max_k) > n) {
    std::ostringstream msg;
    msg << "extract_coeffs: resolution " << n << " < 2 * max_k = " << 2L * max_k;
    throw Error(ErrorKind::kResolution, msg.str());
  }
  const std::vector<Complex> spectrum = dft(samples, FFTW_FORWARD);
  const auto half = static_cast<int>(n / 2);
  // gamma_j = j/N - 1/2 contributes the factor (-1)^k.
  auto coefficient = [&](int k) {
    const auto idx = static_cast<std::size_t>((k + static_cast<int>(n)) % static_cast<int>(n));
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return spectrum[idx] * (sign / static_cast<double>(n));
  };

  // tail[K] = sum of |c_k|^2 over |k| > K, accumulated from the outside in.
  std::vector<double> tail(static_cast<std::size_t>(half) + 1, 0.0);
  double acc = std::norm(coefficient(-half));
  for (int k = half - 1; k >= 0; --k) {
    tail[static_cast<std::size_t>(k)] = acc;
    acc += std::norm(coefficient(k)) + (k > 0 ? std::norm(coefficient(-k)) : 0.0);
  }
  int chosen = -1;
  for (int k = 0; k <= max_k; ++k) {
    if (std::sqrt(tail[static_cast<std::size_t>(k)]) <= eps) {
      chosen = k;
      break;
    }
  }
  if (chosen < 0) {
    std::ostringstream msg;
    msg << "extract_coeffs: tail norm " << std::sqrt(tail[static_cast<std::size_t>(max_k)])
        << " at max_k = " << max_k << " exceeds eps = " << eps
        << "; raise the grid resolution or eps";
    throw Error(ErrorKind::kTolerance, msg.str());
  }
  CoefficientSequence out;
  out.offset = -chosen;
  out.tail_norm = std::sqrt(tail[static_cast<std::size_t>(chosen)]);
  out.values.reserve(2 * static_cast<std::size_t>(chosen) + 1);
  for (int k = -chosen; k <= chosen; ++k) out.values.push_back(coefficient(k));
  return out;
}

CoefficientSequence extract_coeffs(const FrameletBank& bank, int n, int max_k, double eps) {
  require_filter_index(n, "extract_coeffs");
  return extract_coeffs(bank.symbols[static_cast<std::size_t>(n)], max_k, eps);
}

FrameletBank build_bank(const PseudoSplineOrder& order, const TorusGrid& grid,
                        const BankOptions& options) {
  if (grid.resolution() < 64) {
    throw Error(ErrorKind::kResolution, "build_bank: grid resolution must be >= 64");
  }
  const int max_k = options.max_k.value_or(static_cast<int>(grid.resolution() / 4));
  FrameletBank bank{order, grid, options.sigma, {}, {}, options.eps};
  for (int n = 0; n < 4; ++n) {
    auto& values = bank.symbols[static_cast<std::size_t>(n)];
    values.resize(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
      values[j] = eval_framelet_symbol(order, n, grid.point(j), options.sigma);
    }
    bank.coeffs[static_cast<std::size_t>(n)] = extract_coeffs(values, max_k, options.eps);
  }
  return bank;
}

UepDefects uep_defects(const FrameletBank& bank) {
  UepDefects d{0.0, 0.0};
  for (std::size_t j = 0; j < bank.grid.size(); ++j) {
    const std::size_t h = bank.grid.half_shift(j);
    double diag = 0.0;
    Complex off = 0.0;
    for (const auto& s : bank.symbols) {
      diag += std::norm(s[j]);
      off += s[j] * std::conj(s[h]);
    }
    d.diagonal = std::max(d.diagonal, std::fabs(diag - 1.0));
    d.off_diagonal = std::max(d.off_diagonal, std::abs(off));
  }
  return d;
}

Complex framelet_hat(const FrameletBank& bank, const FourierProfile& phi, int n, double gamma) {
  require_filter_index(n, "framelet_hat");
  require_same_order(bank, phi.order, "framelet_hat");
  const Complex base = phi.at(0.5 * gamma);
  return eval_framelet_symbol(bank.order, n, 0.5 * gamma, bank.sigma_branch) * base;
}

FourierProfile framelet_profile(const FrameletBank& bank, const FourierProfile& phi, int n) {
  require_filter_index(n, "framelet_profile");
  require_same_order(bank, phi.order, "framelet_profile");
  FourierProfile out{phi.order, std::nullopt, 2.0 * phi.half_width, 2.0 * phi.step,
                     std::vector<Complex>(phi.values.size())};
  for (std::size_t j = 0; j < phi.values.size(); ++j) {
    out.values[j] =
        eval_framelet_symbol(bank.order, n, phi.point(j), bank.sigma_branch) * phi.values[j];
  }
  return out;
}

TimeProfile framelet_time(const FrameletBank& bank, const TimeProfile& phi, int n) {
  require_filter_index(n, "framelet_time");
  require_same_order(bank, phi.order, "framelet_time");
  const double per_half = 0.5 / phi.step;
  const double per_t = phi.half_width / phi.step;
  if (std::fabs(per_half - std::round(per_half)) > 1e-9 * per_half ||
      std::fabs(per_t - std::round(per_t)) > 1e-9 * std::max(1.0, per_t)) {
    std::ostringstream msg;
    msg << "framelet_time: step " << phi.step << " does not divide 1/2 and T = " << phi.half_width;
    throw Error(ErrorKind::kGridIncompatible, msg.str());
  }
  const auto per_unit = 2 * static_cast<long>(std::llround(per_half));  // samples per unit length
  const auto n_t = static_cast<long>(std::llround(per_t));
  const long count = static_cast<long>(phi.values.size());
  const CoefficientSequence& c = bank.coeffs[static_cast<std::size_t>(n)];

  // Sample index of 2 t_i + k.
  auto source = [&](long i, long k) { return 2 * i + k * per_unit - n_t; };

  TimeProfile out{phi.order, phi.half_width, phi.step, std::vector<Complex>(phi.values.size()), 0.0};
  double worst_energy = 0.0;
  for (long i = 0; i < count; ++i) {
    Complex sum = 0.0;
    for (int k = c.first(); k <= c.last(); ++k) {
      const long s = source(i, k);
      if (s >= 0 && s < count) sum += c.at(k) * phi.values[static_cast<std::size_t>(s)];
    }
    out.values[static_cast<std::size_t>(i)] = 2.0 * sum;

    // sum over all integers k of |phi(2 t_i + k)|^2, for the tail bound.
    double energy = 0.0;
    for (long s = ((source(i, 0) % per_unit) + per_unit) % per_unit; s < count; s += per_unit) {
      energy += std::norm(phi.values[static_cast<std::size_t>(s)]);
    }
    worst_energy = std::max(worst_energy, energy);
  }
  double l1 = 0.0;
  for (const Complex& v : c.values) l1 += std::abs(v);
  out.tail_error_estimate =
      2.0 * c.tail_norm * std::sqrt(worst_energy) + 2.0 * l1 * phi.tail_error_estimate;
  return out;
}

PeriodicSignal::PeriodicSignal(std::vector<Complex> samples) : samples_(std::move(samples)) {
  const std::size_t n = samples_.size();
  if (n < 4 || (n & (n - 1)) != 0) {
    std::ostringstream msg;
    msg << "periodic signal: length " << n << " is not a power of two >= 4";
    throw Error(ErrorKind::kLength, msg.str());
  }
}

Subbands analyze(const FrameletBank& bank, const PeriodicSignal& signal) {
  const std::size_t len = signal.length();
  const std::vector<Complex> f_hat = dft(signal.samples(), FFTW_FORWARD);
  Subbands out;
  for (std::size_t n = 0; n < 4; ++n) {
    std::vector<Complex> h = fold(bank.coeffs[n], len);
    for (Complex& v : h) v = std::conj(v);
    std::vector<Complex> spectrum = dft(std::move(h), FFTW_FORWARD);
    for (std::size_t w = 0; w < len; ++w) spectrum[w] *= f_hat[w];
    const std::vector<Complex> y = dft(std::move(spectrum), FFTW_BACKWARD);
    auto& band = out[n];
    band.resize(len / 2);
    for (std::size_t j = 0; j < len / 2; ++j) band[j] = y[2 * j] * (kSqrt2 / static_cast<double>(len));
  }
  return out;
}

PeriodicSignal synthesize(const FrameletBank& bank, const Subbands& subbands) {
  const std::size_t half = subbands[0].size();
  for (const auto& band : subbands) {
    if (band.size() != half) {
      throw Error(ErrorKind::kLength, "synthesize: subbands have different lengths");
    }
  }
  const std::size_t len = 2 * half;
  if (len < 4 || (len & (len - 1)) != 0) {
    std::ostringstream msg;
    msg << "synthesize: subband length " << half << " does not give a power-of-two signal >= 4";
    throw Error(ErrorKind::kLength, msg.str());
  }
  std::vector<Complex> total(len, Complex(0.0));
  for (std::size_t n = 0; n < 4; ++n) {
    std::vector<Complex> up(len, Complex(0.0));
    for (std::size_t j = 0; j < half; ++j) up[2 * j] = subbands[n][j];
    const std::vector<Complex> u_hat = dft(std::move(up), FFTW_FORWARD);
    const std::vector<Complex> h_hat = dft(fold(bank.coeffs[n], len), FFTW_FORWARD);
    for (std::size_t w = 0; w < len; ++w) total[w] += h_hat[(len - w) % len] * u_hat[w];
  }
  std::vector<Complex> f = dft(std::move(total), FFTW_BACKWARD);
  for (Complex& v : f) v *= kSqrt2 / static_cast<double>(len);
  return PeriodicSignal(std::move(f));
}

MultilevelCoefficients analyze_multilevel(const FrameletBank& bank, const PeriodicSignal& signal,
                                          int levels) {
  if (levels < 1) throw Error(ErrorKind::kDomain, "analyze_multilevel: levels must be >= 1");
  MultilevelCoefficients out;
  PeriodicSignal current = signal;
  for (int level = 0; level < levels; ++level) {
    Subbands bands = analyze(bank, current);
    out.details.push_back({std::move(bands[1]), std::move(bands[2]), std::move(bands[3])});
    if (level + 1 < levels) {
      current = PeriodicSignal(std::move(bands[0]));
    } else {
      out.coarse = std::move(bands[0]);
    }
  }
  return out;
}

PeriodicSignal synthesize_multilevel(const FrameletBank& bank,
                                     const MultilevelCoefficients& coefficients) {
  if (coefficients.details.empty()) {
    throw Error(ErrorKind::kLength, "synthesize_multilevel: no detail levels");
  }
  std::vector<Complex> coarse = coefficients.coarse;
  for (auto it = coefficients.details.rbegin(); it != coefficients.details.rend(); ++it) {
    const Subbands bands{coarse, (*it)[0], (*it)[1], (*it)[2]};
    coarse = synthesize(bank, bands).samples();
  }
  return PeriodicSignal(std::move(coarse));
}

}  // namespace pseudospline
