#include "config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <set>

#include "json.hpp"
#include "pseudospline/errors.hpp"
#include "pseudospline/io.hpp"

namespace pspline {
namespace {

using nlohmann::json;
using pseudospline::Complex;
using pseudospline::Error;
using pseudospline::ErrorKind;

constexpr std::array<std::pair<Command, std::string_view>, 7> kCommands = {{
    {Command::kFilter, "filter"},
    {Command::kCascade, "cascade"},
    {Command::kFramelets, "framelets"},
    {Command::kTransform, "transform"},
    {Command::kVerify, "verify"},
    {Command::kAnalyze, "analyze"},
    {Command::kSweep, "sweep"},
}};

json order_spec_json(const OrderSpec& o) {
  return {{"z_re", o.z_re}, {"z_im", o.z_im}, {"ell", o.ell}};
}

OrderSpec order_spec_of(const json& j) {
  return {j.at("z_re").get<double>(), j.value("z_im", 0.0), j.at("ell").get<int>()};
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
void read_optional(const json& j, const char* key, std::optional<T>& into) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null()) {
    into.reset();
  } else {
    into = j.at(key).get<T>();
  }
}

template <class T>
void read(const json& j, const char* key, T& into) {
  if (j.contains(key)) into = j.at(key).get<T>();
}

}  // namespace

std::string_view command_name(Command c) {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) return name;
  }
  return "unknown";
}

std::optional<Command> command_from_name(std::string_view name) {
  for (const auto& [cmd, n] : kCommands) {
    if (n == name) return cmd;
  }
  return std::nullopt;
}

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw Error(ErrorKind::kParse, "empty complex number");
  if (s.back() != 'i') return {pseudospline::parse_double(s), 0.0};
  s.pop_back();
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? std::string() : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  try {
    return {re.empty() ? 0.0 : pseudospline::parse_double(re), pseudospline::parse_double(im)};
  } catch (const Error&) {
    throw Error(ErrorKind::kParse, "malformed complex number '" + std::string(text) + "'");
  }
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return pseudospline::format_double(z.real());
  const std::string im = pseudospline::format_double(std::fabs(z.imag()));
  return pseudospline::format_double(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + im + "i";
}

std::vector<OrderSpec> parse_order_list(std::string_view text) {
  std::vector<OrderSpec> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    const std::size_t colon = item.rfind(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorKind::kParse, "order list item '" + std::string(item) + "' is not z:ell");
    }
    const Complex z = parse_complex(item.substr(0, colon));
    const double ell = pseudospline::parse_double(item.substr(colon + 1));
    if (ell != std::floor(ell)) {
      throw Error(ErrorKind::kParse, "order list item '" + std::string(item) + "': ell not integral");
    }
    out.push_back({z.real(), z.imag(), static_cast<int>(ell)});
    pos = comma + 1;
  }
  return out;
}

pseudospline::PseudoSplineOrder make_order(const RunConfig& cfg, const OrderSpec& spec) {
  return pseudospline::PseudoSplineOrder(
      {spec.z_re, spec.z_im}, spec.ell, cfg.shift,
      cfg.allow_extended_ell ? pseudospline::EllRange::kExtended
                             : pseudospline::EllRange::kAdmissible);
}

pseudospline::PseudoSplineOrder make_order(const RunConfig& cfg) { return make_order(cfg, cfg.order); }

std::string config_to_json(const RunConfig& cfg) {
  json sweep = json::array();
  for (const OrderSpec& o : cfg.sweep_orders) sweep.push_back(order_spec_json(o));
  const json j = {
      {"command", command_name(cfg.command)},
      {"order", order_spec_json(cfg.order)},
      {"shift", cfg.shift},
      {"allow_extended_ell", cfg.allow_extended_ell},
      {"levels", cfg.levels},
      {"window", cfg.window},
      {"step", cfg.step},
      {"grid", cfg.grid},
      {"truncation_eps", cfg.truncation_eps},
      {"max_k", optional_json(cfg.max_k)},
      {"sigma", cfg.sigma},
      {"time_half_width", cfg.time_half_width},
      {"time_step", cfg.time_step},
      {"decay_lo", cfg.decay_lo},
      {"decay_hi", optional_json(cfg.decay_hi)},
      {"zero_lo", cfg.zero_lo},
      {"zero_hi", cfg.zero_hi},
      {"all_filters", cfg.all_filters},
      {"roundtrip", cfg.roundtrip},
      {"transform_levels", cfg.transform_levels},
      {"sweep_orders", sweep},
      {"input", cfg.input},
      {"bank", cfg.bank},
      {"output", cfg.output},
      {"out_dir", cfg.out_dir},
      {"format", cfg.format},
  };
  return j.dump(2);
}

RunConfig config_from_json(std::string_view text) {
  static const std::set<std::string> kKeys = {
      "command",   "order",          "shift",        "allow_extended_ell", "levels",
      "window",    "step",           "grid",         "truncation_eps",     "max_k",
      "sigma",     "time_half_width", "time_step",   "decay_lo",           "decay_hi",
      "zero_lo",   "zero_hi",        "all_filters",  "roundtrip",          "transform_levels",
      "sweep_orders", "input",       "bank",         "output",             "out_dir",
      "format"};
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw Error(ErrorKind::kParse, "config: expected a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (!kKeys.count(key)) throw Error(ErrorKind::kParse, "config: unknown key '" + key + "'");
    }
    RunConfig cfg;
    if (j.contains("command")) {
      const auto cmd = command_from_name(j.at("command").get<std::string>());
      if (!cmd) throw Error(ErrorKind::kParse, "config: unknown command");
      cfg.command = *cmd;
    }
    if (j.contains("order")) cfg.order = order_spec_of(j.at("order"));
    read(j, "shift", cfg.shift);
    read(j, "allow_extended_ell", cfg.allow_extended_ell);
    read(j, "levels", cfg.levels);
    read(j, "window", cfg.window);
    read(j, "step", cfg.step);
    read(j, "grid", cfg.grid);
    read(j, "truncation_eps", cfg.truncation_eps);
    read_optional(j, "max_k", cfg.max_k);
    read(j, "sigma", cfg.sigma);
    read(j, "time_half_width", cfg.time_half_width);
    read(j, "time_step", cfg.time_step);
    read(j, "decay_lo", cfg.decay_lo);
    read_optional(j, "decay_hi", cfg.decay_hi);
    read(j, "zero_lo", cfg.zero_lo);
    read(j, "zero_hi", cfg.zero_hi);
    read(j, "all_filters", cfg.all_filters);
    read(j, "roundtrip", cfg.roundtrip);
    read(j, "transform_levels", cfg.transform_levels);
    if (j.contains("sweep_orders")) {
      for (const json& o : j.at("sweep_orders")) cfg.sweep_orders.push_back(order_spec_of(o));
    }
    read(j, "input", cfg.input);
    read(j, "bank", cfg.bank);
    read(j, "output", cfg.output);
    read(j, "out_dir", cfg.out_dir);
    read(j, "format", cfg.format);
    return cfg;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::kParse, std::string("config: ") + e.what());
  }
}

}  // namespace pspline
