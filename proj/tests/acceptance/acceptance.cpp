// Acceptance runner: one PASS/FAIL line per criterion. argv[1] is the pspline binary.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pseudospline/analysis.hpp"
#include "pseudospline/errors.hpp"
#include "pseudospline/frames.hpp"

using namespace pseudospline;
namespace fs = std::filesystem;

namespace {

// Tolerances.
constexpr double kAc1MinTol = 1e-10;
constexpr double kAc1MaxTol = 1e-12;
constexpr double kAc1Seconds = 1.0;
constexpr double kAc2FormTol = 1e-12;
constexpr double kAc2DerivTol = 1e-6;
constexpr int kAc2Cases = 1000;
constexpr double kAc2Seconds = 1.0;
constexpr double kAc3OracleTol = 1e-8;
constexpr double kAc3ResidualTol = 1e-6;
constexpr double kAc3Seconds = 10.0;
constexpr double kAc4Tol = 1e-10;
constexpr double kAc5Eps = 1e-10;
constexpr double kAc5Tol = 1e-6;
constexpr double kAc5ExactTol = 1e-12;
constexpr double kAc5ExactEps = 1e-14;
constexpr int kAc5Signals = 50;
constexpr double kAc5Seconds = 5.0;
constexpr double kAc6ZeroTol = 0.05;
constexpr double kAc6DecaySlack = 0.2;
constexpr double kAc7Slack = 1e-9;
constexpr double kAc8PhaseTol = 1e-13;
constexpr double kAc8ReportTol = 1e-9;

constexpr std::size_t kGrid = 4096;
constexpr std::size_t kSignalLength = 1024;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<PseudoSplineOrder> sweep() {
  std::vector<PseudoSplineOrder> out{PseudoSplineOrder(1.0, 0), PseudoSplineOrder(1.5, 0),
                                     PseudoSplineOrder(2.0, 0), PseudoSplineOrder(2.0, 1)};
  for (int l = 0; l <= 3; ++l) out.emplace_back(3.5, l);
  for (int l = 0; l <= 3; ++l) out.emplace_back(Complex(3.2, 1.0), l, 0.0, EllRange::kExtended);
  for (int l = 0; l <= 3; ++l) out.emplace_back(4.2, l);
  return out;
}

std::string label(const PseudoSplineOrder& o) {
  std::ostringstream s;
  s << "(" << o.z().real();
  if (o.z().imag() != 0.0) s << (o.z().imag() > 0 ? "+" : "") << o.z().imag() << "i";
  s << "," << o.ell();
  if (o.shift() != 0.0) s << ",u=" << o.shift();
  s << ")";
  return s.str();
}

struct Verdict {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

int report(const char* id, const char* title, const Verdict& v) {
  std::cout << id << ' ' << (v.pass ? "PASS" : "FAIL") << "  " << title << ": " << v.detail << '\n';
  for (const auto& f : v.failures) std::cout << "    " << f << '\n';
  std::cout.flush();
  return v.pass ? 0 : 1;
}

template <class F>
Verdict guarded(F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    Verdict v;
    v.pass = false;
    v.detail = std::string("exception: ") + e.what();
    return v;
  }
}

// ---------------------------------------------------------------------------

Verdict ac1() {
  Verdict v;
  double worst_min = 0.0, worst_max = 0.0, worst_time = 0.0;
  for (const auto& o : sweep()) {
    const auto t0 = Clock::now();
    const PartitionExtrema e = partition_extrema(o, TorusGrid(kGrid));
    const double dt = seconds_since(t0);
    const double dmin = std::fabs(e.min - theta_bound(o));
    const double dmax = std::fabs(e.max - 1.0);
    worst_min = std::max(worst_min, dmin);
    worst_max = std::max(worst_max, dmax);
    worst_time = std::max(worst_time, dt);
    v.require(dmin <= kAc1MinTol, label(o) + " min off theta by " + sci(dmin));
    v.require(dmax <= kAc1MaxTol, label(o) + " max off 1 by " + sci(dmax));
    v.require(dt < kAc1Seconds, label(o) + " took " + sci(dt) + " s");
  }
  v.detail = "max |min-theta| " + sci(worst_min) + ", max |max-1| " + sci(worst_max) +
             ", slowest " + sci(worst_time) + " s";
  return v;
}

Verdict ac2() {
  Verdict v;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> re(1.0, 5.0), im(-2.0, 2.0), xs(0.05, 0.95);
  std::bernoulli_distribution complex_z(0.5);
  double worst_form = 0.0, worst_deriv = 0.0;
  const auto t0 = Clock::now();
  for (int i = 0; i < kAc2Cases; ++i) {
    const Complex z(re(rng), complex_z(rng) ? im(rng) : 0.0);
    std::uniform_int_distribution<int> ell(0, PseudoSplineOrder::max_admissible_ell(z.real()));
    const PseudoSplineOrder o(z, ell(rng));
    const double x = xs(rng);
    const Complex pd = eval_p(o, x, PForm::kDefinition);
    const Complex pt = eval_p(o, x, PForm::kTaylor);
    worst_form = std::max(worst_form, std::abs(pd - pt) / std::abs(pt));
    const Complex fd = oracle::central_difference(
        [&](double t) { return eval_q(o, t); }, x, 1e-5);
    const Complex d = eval_q_prime(o, x);
    worst_deriv = std::max(worst_deriv, std::abs(d - fd) / std::abs(d));
  }
  const double dt = seconds_since(t0);
  v.require(worst_form < kAc2FormTol, "p-form relative error " + sci(worst_form));
  v.require(worst_deriv < kAc2DerivTol, "q' relative error " + sci(worst_deriv));
  v.require(dt < kAc2Seconds, "took " + sci(dt) + " s");
  v.detail = std::to_string(kAc2Cases) + " cases, p-form " + sci(worst_form) + ", q' " +
             sci(worst_deriv) + ", " + sci(dt) + " s";
  return v;
}

Verdict ac3() {
  Verdict v;
  auto orders = sweep();
  orders.emplace_back(3.0, 0);
  double worst_oracle = 0.0, worst_residual = 0.0, worst_time = 0.0;
  for (const auto& o : orders) {
    const auto t0 = Clock::now();
    const CascadeResult r = run_cascade(o);
    const double residual = refinement_residual(r.profile);
    const double dt = seconds_since(t0);
    worst_time = std::max(worst_time, dt);
    worst_residual = std::max(worst_residual, residual);
    v.require(r.diagnostics.l2_monotone, label(o) + " L2 norms not monotone");
    v.require(r.diagnostics.bounded_by_one, label(o) + " L2 norm above 1");
    v.require(residual < kAc3ResidualTol, label(o) + " refinement residual " + sci(residual));
    v.require(dt < kAc3Seconds, label(o) + " took " + sci(dt) + " s");
    const double z = o.z().real();
    if (o.ell() == 0 && o.z().imag() == 0.0 && z == std::floor(z)) {
      double err = 0.0;
      for (std::size_t j = 0; j < r.profile.values.size(); ++j) {
        const double g = r.profile.point(j);
        if (std::fabs(g) > 8.0) continue;
        err = std::max(err, std::abs(r.profile.values[j] - oracle::sinc_pow(g, 2 * int(z))));
      }
      worst_oracle = std::max(worst_oracle, err);
      v.require(err < kAc3OracleTol, label(o) + " sinc oracle error " + sci(err));
    }
  }
  v.detail = "sinc oracle " + sci(worst_oracle) + ", residual " + sci(worst_residual) +
             ", slowest " + sci(worst_time) + " s";
  return v;
}

Verdict ac4() {
  Verdict v;
  double worst = 0.0;
  for (const auto& o : sweep()) {
    const UepDefects d = uep_defects(build_bank(o, TorusGrid(kGrid)));
    worst = std::max({worst, d.diagonal, d.off_diagonal});
    v.require(d.diagonal < kAc4Tol, label(o) + " diagonal defect " + sci(d.diagonal));
    v.require(d.off_diagonal < kAc4Tol, label(o) + " off-diagonal defect " + sci(d.off_diagonal));
  }
  v.detail = "worst defect " + sci(worst);
  return v;
}

struct PrStats {
  double energy = 0.0;
  double roundtrip = 0.0;
};

PrStats pr_stats(const FrameletBank& bank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  PrStats s;
  for (int i = 0; i < kAc5Signals; ++i) {
    std::vector<Complex> f(kSignalLength);
    for (Complex& c : f) c = {g(rng), g(rng)};
    const Subbands a = analyze(bank, PeriodicSignal(f));
    const std::vector<Complex> back = synthesize(bank, a).samples();
    double ef = 0.0, ea = 0.0, diff = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      ef += std::norm(f[k]);
      diff += std::norm(f[k] - back[k]);
    }
    for (const auto& band : a) {
      for (const Complex& c : band) ea += std::norm(c);
    }
    s.energy = std::max(s.energy, std::fabs(ea - ef) / ef);
    s.roundtrip = std::max(s.roundtrip, std::sqrt(diff / ef));
  }
  return s;
}

bool integer_order(const PseudoSplineOrder& o) {
  return o.ell() == 0 && o.z().imag() == 0.0 && o.z().real() == std::floor(o.z().real());
}

Verdict ac5() {
  Verdict v;
  double worst_energy = 0.0, worst_rt = 0.0, worst_exact = 0.0, worst_time = 0.0;
  for (const auto& o : sweep()) {
    const auto t0 = Clock::now();
    const FrameletBank bank = build_bank(o, TorusGrid(kGrid), {kAc5Eps, {}, {}});
    const PrStats s = pr_stats(bank, 7);
    const double dt = seconds_since(t0);
    worst_energy = std::max(worst_energy, s.energy);
    worst_rt = std::max(worst_rt, s.roundtrip);
    worst_time = std::max(worst_time, dt);
    v.require(s.energy < kAc5Tol, label(o) + " energy error " + sci(s.energy));
    v.require(s.roundtrip < kAc5Tol, label(o) + " roundtrip error " + sci(s.roundtrip));
    v.require(dt < kAc5Seconds, label(o) + " took " + sci(dt) + " s");
    if (integer_order(o)) {
      // Only z = 1 has four finite filters; for z = 2 the sigma filters are
      // infinite, so the exact check runs with eps at rounding level.
      const bool finite = bank.max_tail_norm() < 1e-15;
      const PrStats e =
          finite ? s : pr_stats(build_bank(o, TorusGrid(kGrid), {kAc5ExactEps, {}, {}}), 7);
      worst_exact = std::max(worst_exact, e.roundtrip);
      v.require(e.roundtrip < kAc5ExactTol, label(o) + " exact roundtrip " + sci(e.roundtrip));
    }
  }
  v.detail = "energy " + sci(worst_energy) + ", roundtrip " + sci(worst_rt) + ", integer z " +
             sci(worst_exact) + ", slowest " + sci(worst_time) + " s";
  return v;
}

Verdict ac6() {
  Verdict v;
  double worst_zero = 0.0, worst_decay_margin = -1e300;
  for (double a : {1.0, 1.5, 2.0, 2.7, 3.5, 4.2}) {
    for (int l = 0; l <= PseudoSplineOrder::max_admissible_ell(a); ++l) {
      const PseudoSplineOrder o(a, l);
      const double zero = zero_order_fit(o).slope;
      const double dz = std::fabs(zero - 2.0 * (l + 1));
      worst_zero = std::max(worst_zero, dz);
      v.require(dz <= kAc6ZeroTol, label(o) + " zero order " + sci(zero));
      const double bound = -(2.0 * a - kappa(o));
      const double fit = decay_fit(run_cascade(o).profile).slope;
      worst_decay_margin = std::max(worst_decay_margin, fit - bound);
      v.require(fit <= bound + kAc6DecaySlack,
                label(o) + " decay " + sci(fit) + " vs bound " + sci(bound));
      v.require(verify_L_conditions(o), label(o) + " L conditions fail");
    }
  }
  const PseudoSplineOrder known(2.0, 1);
  const double k = kappa(known), s = holder_exponent(known), m = approximation_order(known);
  v.require(std::fabs(k - 1.3219) < 5e-5, "kappa(2,1) = " + sci(k));
  v.require(std::fabs(s - 1.678) < 5e-4, "holder(2,1) = " + sci(s));
  v.require(m == 4.0, "approx order(2,1) = " + sci(m));
  v.detail = "zero-order deviation " + sci(worst_zero) + ", decay fit minus bound at most " +
             sci(worst_decay_margin) + ", kappa(2,1) " + sci(k) + ", s " + sci(s) + ", order " +
             sci(m);
  return v;
}

Verdict ac7() {
  Verdict v;
  const Complex z(3.2, 1.0);
  const FourierProfile base = run_cascade(PseudoSplineOrder(z, 0)).profile;
  double min_floor = 1e300, worst_violation = 0.0, sum3 = 0.0;
  for (int l = 0; l <= 3; ++l) {
    const PseudoSplineOrder o(z, l, 0.0, EllRange::kExtended);
    const LowpassVerdict lp = lowpass_condition(o);
    v.require(lp.satisfied, label(o) + " lowpass condition false");
    if (l == 3) sum3 = lp.arctan_sum;
    const LowpassFloor f = lowpass_floor(run_cascade(o).profile, 0.25, &base);
    min_floor = std::min(min_floor, f.floor);
    worst_violation = std::max(worst_violation, f.max_violation);
    v.require(f.floor > 0.0, label(o) + " floor " + sci(f.floor));
    v.require(f.max_violation <= kAc7Slack, label(o) + " ordering violated by " + sci(f.max_violation));
  }
  // Independent value of the l = 3 sum; the quoted 0.8868 agrees with it to 3 digits.
  double expected = 0.0;
  for (int j = 0; j <= 3; ++j) expected += std::atan(z.imag() / (z.real() + j));
  v.require(std::fabs(sum3 - expected) < 1e-14, "arctan sum " + sci(sum3) + " vs " + sci(expected));
  v.require(std::fabs(sum3 - 0.8868) < 1e-3 && sum3 < oracle::kPi / 2, "arctan sum " + sci(sum3));
  v.detail = "arctan sum (l=3) " + std::to_string(sum3) + ", min floor " + sci(min_floor) +
             ", max ordering violation " + sci(worst_violation);
  return v;
}

Verdict ac8() {
  Verdict v;
  double worst_phase = 0.0, worst_report = 0.0, worst_uep = 0.0, worst_pr = 0.0;
  for (const auto& base : sweep()) {
    const SampledSymbol s0 = sample_H0(base, TorusGrid(kGrid));
    const AnalysisReport r0 = full_report(base);
    for (double u : {-1.0, 0.5, 2.0}) {
      const PseudoSplineOrder o = base.with_shift(u);
      const SampledSymbol s = sample_H0(o, TorusGrid(kGrid));
      for (std::size_t j = 0; j < s.values.size(); ++j) {
        const double g = s.grid.point(j);
        const Complex phase = std::exp(Complex(0.0, -2.0 * oracle::kPi * u * g));
        worst_phase = std::max(worst_phase, std::abs(s.values[j] - phase * s0.values[j]));
      }

      const AnalysisReport r = full_report(o);
      auto cmp = [&](std::optional<double> a, std::optional<double> b, const char* what) {
        const bool same_presence = a.has_value() == b.has_value();
        const double d = (a && b) ? std::fabs(*a - *b) : 0.0;
        worst_report = std::max(worst_report, d);
        v.require(same_presence && d <= kAc8ReportTol, label(o) + " report " + what + " differs");
      };
      cmp(r.theta, r0.theta, "theta");
      cmp(r.lowpass.arctan_sum, r0.lowpass.arctan_sum, "arctan sum");
      cmp(r.kappa, r0.kappa, "kappa");
      cmp(r.holder_s, r0.holder_s, "holder");
      cmp(r.approx_order, r0.approx_order, "approx order");
      cmp(r.zero_order.slope, r0.zero_order.slope, "zero order");
      cmp(r.decay ? std::optional(r.decay->slope) : std::nullopt,
          r0.decay ? std::optional(r0.decay->slope) : std::nullopt, "decay");
      cmp(r.floor ? std::optional(r.floor->floor) : std::nullopt,
          r0.floor ? std::optional(r0.floor->floor) : std::nullopt, "floor");
      v.require(r.lowpass.satisfied == r0.lowpass.satisfied, label(o) + " lowpass verdict differs");
      v.require(r.L_conditions == r0.L_conditions, label(o) + " L conditions differ");

      // A half-integer shift puts a phase jump at gamma = +-1/2; z = 1 then
      // needs a finer grid to reach the 1e-10 tail.
      const std::size_t n = (u != std::round(u) && base.z().real() < 1.5) ? 4 * kGrid : kGrid;
      const FrameletBank bank = build_bank(o, TorusGrid(n), {kAc5Eps, {}, {}});
      const UepDefects d = uep_defects(bank);
      worst_uep = std::max({worst_uep, d.diagonal, d.off_diagonal});
      v.require(std::max(d.diagonal, d.off_diagonal) < kAc4Tol, label(o) + " UEP defect");
      const PrStats pr = pr_stats(bank, 11);
      worst_pr = std::max({worst_pr, pr.energy, pr.roundtrip});
      v.require(pr.energy < kAc5Tol && pr.roundtrip < kAc5Tol,
                label(o) + " PR error " + sci(std::max(pr.energy, pr.roundtrip)));
    }
  }
  v.require(worst_phase < kAc8PhaseTol, "phase identity error " + sci(worst_phase));
  v.detail = "phase " + sci(worst_phase) + ", report " + sci(worst_report) + ", UEP " +
             sci(worst_uep) + ", PR " + sci(worst_pr);
  return v;
}

// ---------------------------------------------------------------------------

struct Exec {
  int code;
  std::string out;
};

Exec exec(const std::string& cli, const std::string& args, const fs::path& log) {
  const std::string cmd = "'" + cli + "' " + args + " > '" + log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::ostringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict ac9(const std::string& cli) {
  Verdict v;
  const fs::path root = fs::temp_directory_path() /
                        ("pspline_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(root);
  const fs::path log = root / "log.txt";
  const std::string order = "--z 3.2+1i --ell 2 ";
  const std::string cascade = "--levels 16 --window 16 --step 0.0625 --time-half-width 4 ";

  int identical = 0;
  for (const char* run : {"a", "b"}) {
    const std::string dir = (root / run).string();
    for (const std::string& cmd :
         {"filter --all --grid 1024 " + order, "cascade " + cascade + order,
          "framelets --grid 1024 " + cascade + order, "analyze " + order}) {
      const Exec e = exec(cli, cmd + " --out-dir '" + dir + "'", log);
      v.require(e.code == 0, cmd + " exited " + std::to_string(e.code));
    }
  }
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    const fs::path other = root / "b" / entry.path().filename();
    const bool same = fs::exists(other) && slurp(entry.path()) == slurp(other);
    v.require(same, entry.path().filename().string() + " differs between runs");
    identical += same;
  }
  v.require(identical >= 10, "only " + std::to_string(identical) + " files compared");

  const Exec bad = exec(cli, "filter --z 2 --ell 3", log);
  v.require(bad.code == 2, "constraint violation exited " + std::to_string(bad.code));
  v.require(bad.out.find("floor(alpha - 1/2) = 1") != std::string::npos,
            "constraint message missing");

  const Exec io = exec(cli, "transform --bank '" + (root / "missing.json").string() +
                                "' --input '" + (root / "missing.csv").string() + "'",
                       log);
  v.require(io.code == 1, "missing input exited " + std::to_string(io.code));

  const Exec verification =
      exec(cli, "verify --z 2+3i --ell 1 --grid 256 --levels 8 --window 4 --step 0.25", log);
  v.require(verification.code == 3, "failed verification exited " + std::to_string(verification.code));

  const Exec tolerance = exec(cli,
                              "framelets --z 1.5 --eps 1e-14 --max-k 4 --grid 256 --out-dir '" +
                                  (root / "t").string() + "'",
                              log);
  v.require(tolerance.code == 4, "unreachable tolerance exited " + std::to_string(tolerance.code));

  const Exec ok = exec(cli, "verify --z 1 --ell 0", log);
  v.require(ok.code == 0 && ok.out.find("min partition = 0.5") != std::string::npos,
            "verify (1,0) exited " + std::to_string(ok.code));

  std::error_code ec;
  fs::remove_all(root, ec);
  v.detail = std::to_string(identical) + " files byte-identical; exit codes 0/1/2/3/4 checked";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to pspline>\n";
    return 2;
  }
  const std::string cli = argv[1];
  int failed = 0;
  failed += report("AC1", "partition bound", guarded(ac1));
  failed += report("AC2", "p-form and q' identities", guarded(ac2));
  failed += report("AC3", "cascade convergence", guarded(ac3));
  failed += report("AC4", "UEP identities", guarded(ac4));
  failed += report("AC5", "Parseval and reconstruction", guarded(ac5));
  failed += report("AC6", "regularity fits", guarded(ac6));
  failed += report("AC7", "lowpass condition", guarded(ac7));
  failed += report("AC8", "shift invariance", guarded(ac8));
  failed += report("AC9", "CLI contract", guarded([&] { return ac9(cli); }));
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << '\n';
  return failed == 0 ? 0 : 1;
}
