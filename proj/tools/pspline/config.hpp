#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pseudospline/symbol.hpp"

namespace pspline {

enum class Command { kFilter, kCascade, kFramelets, kTransform, kVerify, kAnalyze, kSweep };

std::string_view command_name(Command c);
std::optional<Command> command_from_name(std::string_view name);

struct OrderSpec {
  double z_re = 1.0;
  double z_im = 0.0;
  int ell = 0;

  friend bool operator==(const OrderSpec&, const OrderSpec&) = default;
};

struct RunConfig {
  Command command = Command::kFilter;

  OrderSpec order;
  double shift = 0.0;
  bool allow_extended_ell = false;

  int levels = 24;
  double window = 64.0;
  double step = 1.0 / 64.0;
  std::size_t grid = 4096;
  double truncation_eps = 1e-10;
  std::optional<int> max_k;
  std::string sigma = "signed";
  double time_half_width = 8.0;
  double time_step = 1.0 / 64.0;
  double decay_lo = 16.0;
  std::optional<double> decay_hi;
  double zero_lo = 1e-4;
  double zero_hi = 1e-2;

  bool all_filters = false;   // filter: also write H1..H3
  bool roundtrip = false;     // transform: synthesize and report the error
  int transform_levels = 1;
  std::vector<OrderSpec> sweep_orders;

  std::string input;
  std::string bank;
  std::string output;   // primary output file, "-" for stdout
  std::string out_dir;  // directory for every other file
  std::string format = "csv";

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// "a", "a+bi", "a-bi", "bi", "a+i" (whitespace ignored).
pseudospline::Complex parse_complex(std::string_view text);
std::string format_complex(pseudospline::Complex z);

/// "z:ell" items separated by commas, e.g. "1:0,3.2+1i:2".
std::vector<OrderSpec> parse_order_list(std::string_view text);

pseudospline::PseudoSplineOrder make_order(const RunConfig& cfg, const OrderSpec& spec);
pseudospline::PseudoSplineOrder make_order(const RunConfig& cfg);

std::string config_to_json(const RunConfig& cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
RunConfig config_from_json(std::string_view text);

}  // namespace pspline
