#include "cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "pseudospline/errors.hpp"

namespace pspline {
namespace {

using pseudospline::Error;
using pseudospline::ErrorKind;

struct Bindings {
  std::string z_text;
  std::string orders_text;
  std::string config_path;
  std::vector<CLI::Option*> z;
  std::vector<CLI::Option*> orders;
};

void add_order_options(CLI::App& sub, RunConfig& cfg, Bindings& b) {
  b.z.push_back(sub.add_option("--z", b.z_text, "order z, e.g. 3.2+1i (default 1)"));
  sub.add_option("--ell", cfg.order.ell, "pseudo-spline parameter l");
  sub.add_option("-u,--shift", cfg.shift, "real time-domain shift u");
  sub.add_flag("--allow-extended-ell", cfg.allow_extended_ell,
               "admit l > floor(Re z - 1/2)");
  sub.add_option("--config", b.config_path, "JSON run configuration; flags override it");
  sub.add_option("-o,--output", cfg.output, "primary output file ('-' for stdout)");
  sub.add_option("--out-dir", cfg.out_dir,
                 "directory for output files (default $PSPLINE_OUTPUT_DIR or .)");
  sub.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_grid_options(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--grid", cfg.grid, "torus grid resolution (power of two)");
  sub.add_option("--sigma", cfg.sigma, "sigma branch: signed or nonnegative")
      ->check(CLI::IsMember({"signed", "nonnegative"}));
}

void add_bank_options(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--eps", cfg.truncation_eps, "l2 bound on each discarded coefficient tail");
  sub.add_option("--max-k", cfg.max_k, "largest retained |k| (default grid/4)");
}

void add_cascade_options(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--levels", cfg.levels, "cascade levels");
  sub.add_option("--window", cfg.window, "half width W of the frequency window");
  sub.add_option("--step", cfg.step, "frequency step");
  sub.add_option("--time-half-width", cfg.time_half_width, "time window T (0 disables)");
  sub.add_option("--time-step", cfg.time_step, "time step");
}

void add_fit_options(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--decay-lo", cfg.decay_lo, "lower end of the decay fit range");
  sub.add_option("--decay-hi", cfg.decay_hi, "upper end of the decay fit range");
  sub.add_option("--zero-lo", cfg.zero_lo, "lower end of the zero-order fit range");
  sub.add_option("--zero-hi", cfg.zero_hi, "upper end of the zero-order fit range");
}

// Applies the string-valued options that need parsing into the config.
void apply_text_options(RunConfig& cfg, const Bindings& b) {
  for (const CLI::Option* o : b.z) {
    if (o->count() == 0) continue;
    const auto z = parse_complex(b.z_text);
    cfg.order.z_re = z.real();
    cfg.order.z_im = z.imag();
  }
  for (const CLI::Option* o : b.orders) {
    if (o->count() > 0) cfg.sweep_orders = parse_order_list(b.orders_text);
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  Bindings b;
  CLI::App app{"Pseudo-spline filters, cascade, framelets and analysis", "pspline"};
  app.require_subcommand(1);

  struct Sub {
    Command command;
    const char* help;
  };
  const Sub subs[] = {
      {Command::kFilter, "sample H0 (and H1..H3 with --all) on the torus grid"},
      {Command::kCascade, "run the cascade and write phi_hat and phi"},
      {Command::kFramelets, "build the framelet bank and write the framelets"},
      {Command::kTransform, "periodic framelet transform of a signal"},
      {Command::kVerify, "run the invariant suites and report margins"},
      {Command::kAnalyze, "write the analysis report"},
      {Command::kSweep, "analysis over a list of orders"},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(std::string(command_name(s.command)), s.help);
    sub->callback([&cfg, c = s.command] { cfg.command = c; });
    add_order_options(*sub, cfg, b);
    switch (s.command) {
      case Command::kFilter:
        add_grid_options(*sub, cfg);
        sub->add_flag("--all", cfg.all_filters, "also write H1, H2, H3");
        break;
      case Command::kCascade:
        add_cascade_options(*sub, cfg);
        break;
      case Command::kFramelets:
        add_grid_options(*sub, cfg);
        add_bank_options(*sub, cfg);
        add_cascade_options(*sub, cfg);
        break;
      case Command::kTransform:
        sub->add_option("--bank", cfg.bank, "bank JSON written by 'framelets'");
        sub->add_option("--input", cfg.input, "signal CSV (t,re,im[,abs])");
        sub->add_flag("--roundtrip", cfg.roundtrip, "synthesize and print the relative error");
        sub->add_option("--depth", cfg.transform_levels, "levels on the lowpass channel");
        break;
      case Command::kVerify:
        add_grid_options(*sub, cfg);
        add_bank_options(*sub, cfg);
        add_cascade_options(*sub, cfg);
        break;
      case Command::kAnalyze:
        add_cascade_options(*sub, cfg);
        add_fit_options(*sub, cfg);
        break;
      case Command::kSweep:
        add_grid_options(*sub, cfg);
        add_bank_options(*sub, cfg);
        add_cascade_options(*sub, cfg);
        add_fit_options(*sub, cfg);
        b.orders.push_back(sub->add_option("--orders", b.orders_text, "z:ell list, e.g. 1:0,2:1"));
        break;
    }
  }

  // CLI11 expects the arguments in reverse order.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (!b.config_path.empty()) {
      // The file provides the base configuration; explicit flags win.
      const Command chosen = cfg.command;
      const std::string path = b.config_path;
      cfg = config_from_json(read_text(path));
      if (cfg.command != chosen) {
        throw Error(ErrorKind::kDomain, "config file is for '" +
                                            std::string(command_name(cfg.command)) +
                                            "', command line asks for '" +
                                            std::string(command_name(chosen)) + "'");
      }
      reversed.assign(args.rbegin(), args.rend());
      app.parse(reversed);
    }
    apply_text_options(cfg, b);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    make_order(cfg);  // reject invalid (z, l) before any work
    return dispatch(Context{cfg, out, err});
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace pspline
