#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "pseudospline/analysis.hpp"
#include "pseudospline/cascade.hpp"
#include "pseudospline/errors.hpp"
#include "pseudospline/frames.hpp"
#include "pseudospline/io.hpp"
#include "pseudospline/symbol.hpp"

namespace pspline {
namespace {

namespace fs = std::filesystem;
using namespace pseudospline;
using nlohmann::json;

fs::path output_dir(const RunConfig& cfg) {
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* env = std::getenv("PSPLINE_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

using Writer = std::function<void(std::ostream&)>;

void write_file(const Context& ctx, const fs::path& path, const Writer& writer) {
  if (path == "-") {
    writer(ctx.out);
    return;
  }
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  writer(file);
  file.flush();
  if (!file) throw IoError("write to '" + path.string() + "' failed");
  ctx.out << "wrote " << path.string() << '\n';
}

// The -o path if given, else the default name inside the output directory.
fs::path primary_path(const RunConfig& cfg, const std::string& default_name) {
  if (!cfg.output.empty()) return cfg.output;
  return output_dir(cfg) / default_name;
}

fs::path side_path(const RunConfig& cfg, const std::string& name) { return output_dir(cfg) / name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool json_format(const RunConfig& cfg) {
  if (cfg.format == "json") return true;
  if (cfg.format == "csv") return false;
  throw Error(ErrorKind::kDomain, "format must be csv or json, got '" + cfg.format + "'");
}

SigmaBranch sigma_branch(const RunConfig& cfg) {
  if (cfg.sigma == "signed") return SigmaBranch::kSigned;
  if (cfg.sigma == "nonnegative") return SigmaBranch::kNonnegative;
  throw Error(ErrorKind::kDomain, "sigma must be signed or nonnegative, got '" + cfg.sigma + "'");
}

CascadeOptions cascade_options(const RunConfig& cfg) {
  CascadeOptions o;
  o.levels = cfg.levels;
  o.window = cfg.window;
  o.step = cfg.step;
  return o;
}

BankOptions bank_options(const RunConfig& cfg) {
  BankOptions o;
  o.eps = cfg.truncation_eps;
  o.max_k = cfg.max_k;
  o.sigma = sigma_branch(cfg);
  return o;
}

AnalysisOptions analysis_options(const RunConfig& cfg) {
  AnalysisOptions o;
  o.cascade = cascade_options(cfg);
  o.decay_lo = cfg.decay_lo;
  o.decay_hi = cfg.decay_hi;
  o.zero_lo = cfg.zero_lo;
  o.zero_hi = cfg.zero_hi;
  return o;
}

double norm2(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const Complex& c : v) s += std::norm(c);
  return s;
}

double relative_error(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += std::norm(a[i] - b[i]);
  const double ref = norm2(a);
  return ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
}

std::vector<Complex> random_signal(std::mt19937_64& rng, std::size_t length) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> v(length);
  for (Complex& c : v) c = {gauss(rng), gauss(rng)};
  return v;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::setprecision(6) << std::scientific << v;
  return ss.str();
}

struct Check {
  std::string suite;
  std::string name;
  double value;
  double threshold;
  bool pass;
};

std::vector<Check> symbol_checks(const PseudoSplineOrder& order, const TorusGrid& grid) {
  std::vector<Check> checks;
  const double theta = theta_bound(order);
  const PartitionExtrema ext = partition_extrema(order, grid);
  checks.push_back({"symbol", "partition min - theta", std::fabs(ext.min - theta), 1e-10,
                    std::fabs(ext.min - theta) <= 1e-10});
  checks.push_back({"symbol", "partition max - 1", std::fabs(ext.max - 1.0), 1e-12,
                    std::fabs(ext.max - 1.0) <= 1e-12});

  double form_err = 0.0;
  double fd_err = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double x = i / 10.0;
    const Complex a = eval_p(order, x, PForm::kDefinition);
    const Complex b = eval_p(order, x, PForm::kTaylor);
    form_err = std::max(form_err, std::abs(a - b) / std::abs(b));
    if (i == 0 || i == 10) continue;
    const double h = 1e-6;
    const Complex fd = (eval_q(order, x + h) - eval_q(order, x - h)) / (2.0 * h);
    const Complex exact = eval_q_prime(order, x);
    fd_err = std::max(fd_err, std::abs(fd - exact) / std::abs(exact));
  }
  checks.push_back({"symbol", "p definition vs taylor (rel)", form_err, 1e-12, form_err <= 1e-12});
  checks.push_back({"symbol", "q' vs central difference (rel)", fd_err, 1e-6, fd_err < 1e-6});

  const PseudoSplineOrder plain = order.with_shift(0.0);
  double phase_err = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double g = grid.point(j);
    const SinCosPi e = sincos_pi(2.0 * order.shift() * g);
    phase_err = std::max(phase_err, std::abs(eval_H0(order, g) -
                                             Complex(e.cos, -e.sin) * eval_H0(plain, g)));
  }
  checks.push_back({"symbol", "shift phase identity", phase_err, 1e-13, phase_err <= 1e-13});
  const double lip = lipschitz_check(order, grid);
  checks.push_back({"symbol", "Lipschitz-type constant (finite)", lip, 1e300, std::isfinite(lip)});
  return checks;
}

std::vector<Check> cascade_checks(const PseudoSplineOrder& order, const RunConfig& cfg) {
  std::vector<Check> checks;
  const CascadeResult r = run_cascade(order, cascade_options(cfg));
  const auto& d = r.diagnostics;
  double max_norm = 0.0;
  for (double n : d.l2_norms) max_norm = std::max(max_norm, n);
  checks.push_back({"cascade", "L2 norms non-increasing", d.l2_monotone ? 0.0 : 1.0, 0.5,
                    d.l2_monotone});
  checks.push_back({"cascade", "max L2 norm", max_norm, 1.0 + 1e-10, max_norm <= 1.0 + 1e-10});
  checks.push_back({"cascade", "|phi_m| <= 1", d.bounded_by_one ? 0.0 : 1.0, 0.5, d.bounded_by_one});
  const double res = refinement_residual(r.profile);
  checks.push_back({"cascade", "refinement residual", res, 1e-6, res < 1e-6});
  return checks;
}

std::vector<Check> frame_checks(const PseudoSplineOrder& order, const RunConfig& cfg) {
  std::vector<Check> checks;
  const FrameletBank bank = build_bank(order, TorusGrid(cfg.grid), bank_options(cfg));
  const UepDefects uep = uep_defects(bank);
  checks.push_back({"frames", "UEP diagonal", uep.diagonal, 1e-10, uep.diagonal < 1e-10});
  checks.push_back({"frames", "UEP off-diagonal", uep.off_diagonal, 1e-10, uep.off_diagonal < 1e-10});
  double moment = 0.0;
  for (int n = 1; n <= 3; ++n) {
    moment = std::max(moment, std::abs(eval_framelet_symbol(order, n, 0.0, bank.sigma_branch)));
  }
  checks.push_back({"frames", "vanishing moments |H_n(0)|", moment, 1e-12, moment < 1e-12});

  const double tol = std::max(1e-6, 10.0 * cfg.truncation_eps);
  std::mt19937_64 rng(20240611);
  double energy_err = 0.0;
  double pr_err = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const PeriodicSignal f(random_signal(rng, 1024));
    const Subbands a = analyze(bank, f);
    double energy = 0.0;
    for (const auto& band : a) energy += norm2(band);
    energy_err = std::max(energy_err, std::fabs(energy - norm2(f.samples())) / norm2(f.samples()));
    pr_err = std::max(pr_err, relative_error(f.samples(), synthesize(bank, a).samples()));
  }
  checks.push_back({"frames", "Parseval energy (rel)", energy_err, tol, energy_err < tol});
  checks.push_back({"frames", "perfect reconstruction (rel)", pr_err, tol, pr_err < tol});
  return checks;
}

void write_profile(const Context& ctx, const fs::path& path, const FourierProfile& p,
                   const CascadeDiagnostics* diag, bool as_json) {
  write_file(ctx, path, [&](std::ostream& os) {
    if (as_json) {
      os << to_json(p, diag) << '\n';
    } else {
      write_csv(os, p);
    }
  });
}

void write_time(const Context& ctx, const fs::path& path, const TimeProfile& p, bool as_json) {
  write_file(ctx, path, [&](std::ostream& os) {
    if (as_json) {
      os << to_json(p) << '\n';
    } else {
      write_csv(os, p);
    }
  });
}

void write_samples(const Context& ctx, const fs::path& path, const std::vector<Complex>& v) {
  write_file(ctx, path, [&](std::ostream& os) { write_signal_csv(os, v); });
}

}  // namespace

int cmd_filter(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const PseudoSplineOrder order = make_order(cfg);
  const TorusGrid grid(cfg.grid);
  const bool as_json = json_format(cfg);
  const std::string ext = as_json ? ".json" : ".csv";
  const int count = cfg.all_filters ? 4 : 1;
  for (int n = 0; n < count; ++n) {
    SampledSymbol s{order, grid, std::vector<Complex>(grid.size())};
    for (std::size_t j = 0; j < grid.size(); ++j) {
      s.values[j] = eval_framelet_symbol(order, n, grid.point(j), sigma_branch(cfg));
    }
    const std::string name = "H" + std::to_string(n) + ext;
    const fs::path path = n == 0 ? primary_path(cfg, name) : side_path(cfg, name);
    write_file(ctx, path, [&](std::ostream& os) {
      if (as_json) {
        os << to_json(s) << '\n';
      } else {
        write_csv(os, s);
      }
    });
  }
  return 0;
}

int cmd_cascade(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const PseudoSplineOrder order = make_order(cfg);
  const bool as_json = json_format(cfg);
  const std::string ext = as_json ? ".json" : ".csv";
  const CascadeResult r = run_cascade(order, cascade_options(cfg));
  const auto& d = r.diagnostics;
  write_profile(ctx, primary_path(cfg, "phi_hat" + ext), r.profile, &d, as_json);
  if (cfg.time_half_width > 0.0) {
    const TimeProfile t = to_time_domain(r.profile, cfg.time_half_width, cfg.time_step);
    write_time(ctx, side_path(cfg, "phi" + ext), t, as_json);
    ctx.out << "time-domain tail error estimate: " << fmt(t.tail_error_estimate) << '\n';
  }
  ctx.out << "levels run: " << *r.profile.level << ", converged: " << (d.converged ? "yes" : "no")
          << ", final sup change: " << fmt(d.sup_changes.back())
          << ", refinement residual: " << fmt(refinement_residual(r.profile)) << '\n';
  if (!d.warning.empty()) ctx.err << "warning: " << d.warning << '\n';
  return 0;
}

int cmd_framelets(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const PseudoSplineOrder order = make_order(cfg);
  const bool as_json = json_format(cfg);
  const std::string ext = as_json ? ".json" : ".csv";
  const FrameletBank bank = build_bank(order, TorusGrid(cfg.grid), bank_options(cfg));
  write_file(ctx, primary_path(cfg, "bank.json"),
             [&](std::ostream& os) { os << to_json(bank) << '\n'; });

  const CascadeResult r = run_cascade(order, cascade_options(cfg));
  const TimeProfile phi = cfg.time_half_width > 0.0
                              ? to_time_domain(r.profile, cfg.time_half_width, cfg.time_step)
                              : TimeProfile{order, 0.0, cfg.time_step, {}, 0.0};
  for (int n = 1; n <= 3; ++n) {
    const std::string tag = std::to_string(n);
    write_profile(ctx, side_path(cfg, "psi_hat_" + tag + ext), framelet_profile(bank, r.profile, n),
                  nullptr, as_json);
    if (cfg.time_half_width > 0.0) {
      write_time(ctx, side_path(cfg, "psi_" + tag + ext), framelet_time(bank, phi, n), as_json);
    }
  }
  for (int n = 0; n < 4; ++n) {
    const auto& c = bank.coeffs[static_cast<std::size_t>(n)];
    ctx.out << "H" << n << ": " << c.values.size() << " taps, k = " << c.first() << ".."
            << c.last() << ", tail norm " << fmt(c.tail_norm) << '\n';
  }
  return 0;
}

int cmd_transform(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  if (cfg.bank.empty() || cfg.input.empty()) {
    throw Error(ErrorKind::kDomain, "transform needs --bank and --input");
  }
  const FrameletBank bank = bank_from_json(read_file(cfg.bank));
  std::istringstream in(read_file(cfg.input));
  const PeriodicSignal signal(read_values_csv(in));
  std::vector<Complex> reconstructed;
  double energy = 0.0;

  if (cfg.transform_levels == 1) {
    const Subbands bands = analyze(bank, signal);
    for (std::size_t n = 0; n < 4; ++n) {
      const std::string name = "subband_" + std::to_string(n) + ".csv";
      write_samples(ctx, n == 0 ? primary_path(cfg, name) : side_path(cfg, name), bands[n]);
      energy += norm2(bands[n]);
    }
    if (cfg.roundtrip) reconstructed = synthesize(bank, bands).samples();
  } else {
    const MultilevelCoefficients mc = analyze_multilevel(bank, signal, cfg.transform_levels);
    write_samples(ctx, primary_path(cfg, "coarse.csv"), mc.coarse);
    energy += norm2(mc.coarse);
    for (std::size_t level = 0; level < mc.details.size(); ++level) {
      for (std::size_t n = 0; n < 3; ++n) {
        write_samples(ctx,
                      side_path(cfg, "detail_" + std::to_string(level + 1) + "_" +
                                         std::to_string(n + 1) + ".csv"),
                      mc.details[level][n]);
        energy += norm2(mc.details[level][n]);
      }
    }
    if (cfg.roundtrip) reconstructed = synthesize_multilevel(bank, mc).samples();
  }

  const double total = norm2(signal.samples());
  const double energy_err = total > 0.0 ? std::fabs(energy - total) / total : energy;
  ctx.out << "energy relative error: " << fmt(energy_err) << '\n';
  if (!cfg.roundtrip) return 0;
  write_samples(ctx, side_path(cfg, "reconstruction.csv"), reconstructed);
  const double err = relative_error(signal.samples(), reconstructed);
  const double tol = std::max(1e-6, 10.0 * bank.truncation_eps);
  ctx.out << "roundtrip relative error: " << fmt(err) << " (tolerance " << fmt(tol) << ")\n";
  return err < tol ? 0 : kExitVerification;
}

int cmd_verify(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const PseudoSplineOrder order = make_order(cfg);
  const TorusGrid grid(cfg.grid);
  ctx.out << "order z = " << format_complex(order.z()) << ", l = " << order.ell()
          << ", u = " << format_double(order.shift()) << '\n';
  const PartitionExtrema ext = partition_extrema(order, grid);
  ctx.out << "min partition = " << format_double(ext.min) << " at gamma = "
          << format_double(ext.argmin) << ", theta = " << format_double(theta_bound(order))
          << ", max partition = " << format_double(ext.max) << '\n';

  // A suite that throws is reported as failed; the remaining suites still run.
  std::vector<Check> checks;
  std::optional<ErrorKind> aborted;
  const auto run_suite = [&](const char* suite, const std::function<std::vector<Check>()>& body) {
    try {
      for (auto&& c : body()) checks.push_back(std::move(c));
    } catch (const Error& e) {
      ctx.err << suite << " suite aborted (" << to_string(e.kind()) << "): " << e.what() << '\n';
      if (!aborted) aborted = e.kind();
    }
  };
  run_suite("symbol", [&] { return symbol_checks(order, grid); });
  run_suite("cascade", [&] { return cascade_checks(order, cfg); });
  run_suite("frames", [&] { return frame_checks(order, cfg); });

  bool all = true;
  for (const Check& c : checks) {
    all = all && c.pass;
    ctx.out << std::left << std::setw(8) << c.suite << std::setw(34) << c.name << " value "
            << fmt(c.value) << "  limit " << fmt(c.threshold) << "  margin "
            << fmt(c.threshold - c.value) << "  " << (c.pass ? "PASS" : "FAIL") << '\n';
  }
  ctx.out << (all && !aborted ? "all checks passed" : "verification FAILED") << '\n';
  if (!cfg.output.empty()) {
    json j = json::array();
    for (const Check& c : checks) {
      j.push_back({{"suite", c.suite},
                   {"name", c.name},
                   {"value", c.value},
                   {"threshold", c.threshold},
                   {"pass", c.pass}});
    }
    write_file(ctx, cfg.output, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  }
  if (!all) return kExitVerification;
  return aborted ? exit_code(*aborted) : 0;
}

int cmd_analyze(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const AnalysisReport report = full_report(make_order(cfg), analysis_options(cfg));
  write_file(ctx, primary_path(cfg, "report.json"),
             [&](std::ostream& os) { os << to_json(report) << '\n'; });
  return 0;
}

int cmd_sweep(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  if (cfg.sweep_orders.empty()) {
    throw Error(ErrorKind::kDomain, "sweep needs --orders, e.g. --orders 1:0,3.2+1i:2");
  }
  json results = json::array();
  int status = 0;
  for (const OrderSpec& spec : cfg.sweep_orders) {
    json entry = {{"z_re", spec.z_re}, {"z_im", spec.z_im}, {"ell", spec.ell}, {"u", cfg.shift}};
    try {
      const PseudoSplineOrder order = make_order(cfg, spec);
      const PartitionExtrema ext = partition_extrema(order, TorusGrid(cfg.grid));
      entry["partition_min"] = ext.min;
      entry["partition_max"] = ext.max;
      entry["report"] = json::parse(to_json(full_report(order, analysis_options(cfg))));
      const UepDefects uep = uep_defects(build_bank(order, TorusGrid(cfg.grid), bank_options(cfg)));
      entry["uep_diagonal"] = uep.diagonal;
      entry["uep_off_diagonal"] = uep.off_diagonal;
    } catch (const Error& e) {
      entry["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
      ctx.err << "order " << format_complex({spec.z_re, spec.z_im}) << ":" << spec.ell << ": "
              << e.what() << '\n';
      if (status == 0) status = exit_code(e.kind());
    }
    results.push_back(std::move(entry));
  }
  write_file(ctx, primary_path(cfg, "sweep.json"),
             [&](std::ostream& os) { os << json{{"results", results}}.dump(2) << '\n'; });
  return status;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
      return kExitIo;
    case ErrorKind::kConsistency:
    case ErrorKind::kConditionViolated:
      return kExitVerification;
    case ErrorKind::kTolerance:
      return kExitTolerance;
    default:
      return kExitConfig;
  }
}

int dispatch(const Context& ctx) {
  switch (ctx.cfg.command) {
    case Command::kFilter: return cmd_filter(ctx);
    case Command::kCascade: return cmd_cascade(ctx);
    case Command::kFramelets: return cmd_framelets(ctx);
    case Command::kTransform: return cmd_transform(ctx);
    case Command::kVerify: return cmd_verify(ctx);
    case Command::kAnalyze: return cmd_analyze(ctx);
    case Command::kSweep: return cmd_sweep(ctx);
  }
  return 2;
}

}  // namespace pspline
