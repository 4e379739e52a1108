#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "pseudospline/cascade.hpp"
#include "pseudospline/symbol.hpp"

namespace pseudospline {

/// eta(gamma) = 1 - |H0(gamma)|^2 - |H0(gamma + 1/2)|^2.
///
/// Evaluated on the half of the torus where x = sin^2 pi gamma <= 1/2 (eta has
/// period 1/2) through the series for 1 - q, so no digits are lost near the
/// zeros of eta. Values in [-1e-9, 0) are clamped to 0; anything below throws
/// ErrorKind::kConsistency since it means the partition bound is broken.
double eval_eta(const PseudoSplineOrder& order, double gamma);

enum class SigmaBranch {
  kSigned,       ///< sgn(sin 2 pi gamma)^(l+1) sqrt(eta): smooth, short filters
  kNonnegative,  ///< +sqrt(eta): even, but has a kink at the zeros of eta for even l
};

double eval_sigma(const PseudoSplineOrder& order, double gamma,
                  SigmaBranch branch = SigmaBranch::kSigned);

/// H_n(gamma) for n = 0..3:
///   H1 = e^{2 pi i g} conj H0(g + 1/2), H2 = sigma / sqrt 2, H3 = e^{2 pi i g} sigma / sqrt 2.
Complex eval_framelet_symbol(const PseudoSplineOrder& order, int n, double gamma,
                             SigmaBranch branch = SigmaBranch::kSigned);

/// Truncated two-sided sequence c_k, k = offset .. offset + size - 1.
struct CoefficientSequence {
  int offset = 0;
  std::vector<Complex> values;
  double tail_norm = 0.0;  ///< l2 norm of the discarded coefficients

  int first() const noexcept { return offset; }
  int last() const noexcept { return offset + static_cast<int>(values.size()) - 1; }
  Complex at(int k) const noexcept {
    return (k < first() || k > last()) ? Complex(0.0) : values[static_cast<std::size_t>(k - offset)];
  }
};

struct BankOptions {
  double eps = 1e-10;            ///< bound on the l2 norm of each discarded tail
  std::optional<int> max_k;      ///< defaults to N/4
  SigmaBranch sigma = SigmaBranch::kSigned;
};

struct FrameletBank {
  PseudoSplineOrder order;
  TorusGrid grid;
  SigmaBranch sigma_branch;
  std::array<std::vector<Complex>, 4> symbols;  ///< H_n sampled on the grid
  std::array<CoefficientSequence, 4> coeffs;
  double truncation_eps;

  /// Largest recorded tail norm over the four filters.
  double max_tail_norm() const noexcept;
};

/// Samples H0..H3 and extracts their coefficients. The grid must have N >= 64.
FrameletBank build_bank(const PseudoSplineOrder& order, const TorusGrid& grid,
                        const BankOptions& options = {});

/// c_k = (1/N) sum_j H(gamma_j) e^{-2 pi i k gamma_j}, truncated at the
/// smallest K <= max_k whose discarded tail has l2 norm <= eps.
/// Throws ErrorKind::kTolerance when no such K exists, ErrorKind::kResolution
/// when N < 2 max_k.
CoefficientSequence extract_coeffs(const std::vector<Complex>& samples, int max_k, double eps);
CoefficientSequence extract_coeffs(const FrameletBank& bank, int n, int max_k, double eps);

struct UepDefects {
  double diagonal;      ///< max |sum_n |H_n|^2 - 1|
  double off_diagonal;  ///< max |sum_n H_n(g) conj H_n(g + 1/2)|
};

UepDefects uep_defects(const FrameletBank& bank);

/// psi_n^(gamma) = H_n(gamma/2) phi^(gamma/2). H_n is evaluated exactly, phi^
/// is linearly interpolated on the profile (exact when gamma/2 is a grid
/// point). Throws ErrorKind::kWindow if gamma/2 leaves the profile window.
Complex framelet_hat(const FrameletBank& bank, const FourierProfile& phi, int n, double gamma);

/// psi_n^ on the grid of step 2 * phi.step and half width 2 * phi.half_width.
FourierProfile framelet_profile(const FrameletBank& bank, const FourierProfile& phi, int n);

/// psi_n(x) = 2 sum_k c_{k,n} phi(2x + k) on phi's time grid, which must have
/// 0.5 / dt integral (ErrorKind::kGridIncompatible otherwise). Samples of phi
/// outside [-T, T] count as zero. The error estimate combines the coefficient
/// tail (Cauchy-Schwarz against the phi samples) with phi's own estimate.
TimeProfile framelet_time(const FrameletBank& bank, const TimeProfile& phi, int n);

/// Periodic signal of power-of-two length >= 4.
class PeriodicSignal {
 public:
  explicit PeriodicSignal(std::vector<Complex> samples);

  std::size_t length() const noexcept { return samples_.size(); }
  const std::vector<Complex>& samples() const noexcept { return samples_; }

 private:
  std::vector<Complex> samples_;
};

using Subbands = std::array<std::vector<Complex>, 4>;

/// One level: a_n[j] = sqrt2 sum_k conj(c_{k,n}) f[(2j - k) mod L], j < L/2.
/// Filters are folded modulo L, so this is the exact periodic transform for
/// any filter length.
Subbands analyze(const FrameletBank& bank, const PeriodicSignal& signal);

/// Adjoint of analyze: f[x] = sqrt2 sum_n sum_j c_{2j-x,n} a_n[j].
PeriodicSignal synthesize(const FrameletBank& bank, const Subbands& subbands);

struct MultilevelCoefficients {
  std::vector<std::array<std::vector<Complex>, 3>> details;  ///< per level, n = 1..3
  std::vector<Complex> coarse;
};

/// Repeats analyze on the lowpass channel; every analysed length must be >= 4.
MultilevelCoefficients analyze_multilevel(const FrameletBank& bank, const PeriodicSignal& signal,
                                          int levels);
PeriodicSignal synthesize_multilevel(const FrameletBank& bank,
                                     const MultilevelCoefficients& coefficients);

}  // namespace pseudospline
