#include "pseudospline/io.hpp"

#include <charconv>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "pseudospline/errors.hpp"

namespace pseudospline {
namespace {

using nlohmann::json;

json complex_array(const std::vector<Complex>& values) {
  json arr = json::array();
  for (const Complex& v : values) arr.push_back({v.real(), v.imag()});
  return arr;
}

std::vector<Complex> complex_values(const json& arr) {
  std::vector<Complex> out;
  out.reserve(arr.size());
  for (const json& pair : arr) {
    if (!pair.is_array() || pair.size() != 2) {
      throw Error(ErrorKind::kParse, "expected [re, im] pairs");
    }
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

json order_json(const PseudoSplineOrder& order) {
  return {{"z_re", order.z().real()},
          {"z_im", order.z().imag()},
          {"ell", order.ell()},
          {"u", order.shift()}};
}

PseudoSplineOrder order_of(const json& j) {
  return PseudoSplineOrder({j.at("z_re").get<double>(), j.at("z_im").get<double>()},
                           j.at("ell").get<int>(), j.value("u", 0.0), EllRange::kExtended);
}

json diagnostics_json(const CascadeDiagnostics& d) {
  json j = {{"sup_changes", d.sup_changes},
            {"l2_norms", d.l2_norms},
            {"l2_monotone", d.l2_monotone},
            {"bounded_by_one", d.bounded_by_one},
            {"converged", d.converged},
            {"converged_level", nullptr},
            {"warning", d.warning}};
  if (d.converged_level) j["converged_level"] = *d.converged_level;
  return j;
}

json fit_json(const FitResult& f) {
  return {{"slope", f.slope},
          {"intercept", f.intercept},
          {"rms_residual", f.rms_residual},
          {"points", f.points},
          {"warning", f.warning}};
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

// Runs a JSON parse and maps library exceptions onto ErrorKind::kParse.
template <class F>
auto parsing(std::string_view what, F&& body) {
  try {
    return body();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::kParse, std::string(what) + ": " + e.what());
  }
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  return cells;
}

void write_rows(std::ostream& out, const char* axis, std::size_t count,
                const std::function<double(std::size_t)>& point, const std::vector<Complex>& values) {
  out << axis << ",re,im,abs\n";
  for (std::size_t j = 0; j < count; ++j) {
    const Complex v = values[j];
    out << format_double(point(j)) << ',' << format_double(v.real()) << ','
        << format_double(v.imag()) << ',' << format_double(std::abs(v)) << '\n';
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorKind::kParse, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

void write_csv(std::ostream& out, const SampledSymbol& symbol) {
  write_rows(out, "gamma", symbol.values.size(),
             [&](std::size_t j) { return symbol.grid.point(j); }, symbol.values);
}

void write_csv(std::ostream& out, const FourierProfile& profile) {
  write_rows(out, "gamma", profile.values.size(),
             [&](std::size_t j) { return profile.point(j); }, profile.values);
}

void write_csv(std::ostream& out, const TimeProfile& profile) {
  write_rows(out, "t", profile.values.size(), [&](std::size_t j) { return profile.point(j); },
             profile.values);
}

void write_signal_csv(std::ostream& out, const std::vector<Complex>& samples) {
  write_rows(out, "t", samples.size(), [](std::size_t j) { return static_cast<double>(j); },
             samples);
}

std::vector<Complex> read_values_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::kParse, "csv: missing header row");
  const std::vector<std::string> header = split_row(line);
  std::ptrdiff_t re_col = -1;
  std::ptrdiff_t im_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "re") re_col = static_cast<std::ptrdiff_t>(c);
    if (header[c] == "im") im_col = static_cast<std::ptrdiff_t>(c);
  }
  if (re_col < 0 || im_col < 0) throw Error(ErrorKind::kParse, "csv: header lacks re/im columns");
  std::vector<Complex> values;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_row(line);
    if (cells.size() != header.size()) {
      std::ostringstream msg;
      msg << "csv: row " << row << " has " << cells.size() << " cells, header has "
          << header.size();
      throw Error(ErrorKind::kParse, msg.str());
    }
    values.emplace_back(parse_double(cells[static_cast<std::size_t>(re_col)]),
                        parse_double(cells[static_cast<std::size_t>(im_col)]));
  }
  return values;
}

std::string to_json(const PseudoSplineOrder& order) { return order_json(order).dump(2); }

std::string to_json(const SampledSymbol& symbol) {
  const json j = {{"order", order_json(symbol.order)},
                  {"resolution", symbol.grid.resolution()},
                  {"values", complex_array(symbol.values)}};
  return j.dump(2);
}

std::string to_json(const FourierProfile& profile, const CascadeDiagnostics* diagnostics) {
  json meta = {{"level_m", optional_json(profile.level)},
               {"window", profile.half_width},
               {"step", profile.step},
               {"diagnostics", nullptr}};
  if (diagnostics) meta["diagnostics"] = diagnostics_json(*diagnostics);
  const json j = {{"order", order_json(profile.order)},
                  {"metadata", meta},
                  {"values", complex_array(profile.values)}};
  return j.dump(2);
}

std::string to_json(const TimeProfile& profile) {
  const json j = {{"order", order_json(profile.order)},
                  {"metadata",
                   {{"half_width", profile.half_width},
                    {"step", profile.step},
                    {"tail_error_estimate", profile.tail_error_estimate}}},
                  {"values", complex_array(profile.values)}};
  return j.dump(2);
}

std::string to_json(const FrameletBank& bank) {
  json coeffs = json::object();
  for (std::size_t n = 0; n < 4; ++n) {
    const CoefficientSequence& c = bank.coeffs[n];
    coeffs[std::to_string(n)] = {
        {"offset", c.offset}, {"tail_norm", c.tail_norm}, {"values", complex_array(c.values)}};
  }
  const json j = {{"order", order_json(bank.order)},
                  {"resolution", bank.grid.resolution()},
                  {"sigma", bank.sigma_branch == SigmaBranch::kSigned ? "signed" : "nonnegative"},
                  {"truncation_eps", bank.truncation_eps},
                  {"coeffs", coeffs}};
  return j.dump(2);
}

std::string to_json(const AnalysisReport& r) {
  json floor = nullptr;
  if (r.floor) {
    floor = {{"floor", r.floor->floor},
             {"ordering_holds", optional_json(r.floor->ordering_holds)},
             {"max_violation", r.floor->max_violation}};
  }
  const json j = {
      {"order", order_json(r.order)},
      {"theta", r.theta},
      {"lowpass_ok", r.lowpass.satisfied},
      {"lowpass_arctan_sum", r.lowpass.arctan_sum},
      {"kappa", optional_json(r.kappa)},
      {"holder_s", optional_json(r.holder_s)},
      {"approx_order", optional_json(r.approx_order)},
      {"L_conditions", optional_json(r.L_conditions)},
      {"fit_decay_exponent", r.decay ? json(r.decay->slope) : json(nullptr)},
      {"decay_bound", optional_json(r.decay_bound)},
      {"fit_decay", r.decay ? fit_json(*r.decay) : json(nullptr)},
      {"fit_zero_order", r.zero_order.slope},
      {"fit_zero", fit_json(r.zero_order)},
      {"lowpass_floor_c", r.floor ? json(r.floor->floor) : json(nullptr)},
      {"lowpass_floor", floor},
      {"refinement_residual", r.refinement_residual},
      {"cascade", diagnostics_json(r.cascade)},
      {"provenance",
       {{"theta", "closed-form"},
        {"lowpass_ok", "closed-form"},
        {"kappa", "closed-form"},
        {"holder_s", "closed-form"},
        {"approx_order", "closed-form"},
        {"L_conditions", "grid-check"},
        {"fit_decay_exponent", "fitted"},
        {"fit_zero_order", "fitted"},
        {"lowpass_floor_c", "grid-check"},
        {"refinement_residual", "grid-check"}}}};
  return j.dump(2);
}

PseudoSplineOrder order_from_json(std::string_view text) {
  return parsing("order json", [&] { return order_of(json::parse(text)); });
}

SampledSymbol symbol_from_json(std::string_view text) {
  return parsing("symbol json", [&] {
    const json j = json::parse(text);
    SampledSymbol s{order_of(j.at("order")), TorusGrid(j.at("resolution").get<std::size_t>()),
                    complex_values(j.at("values"))};
    if (s.values.size() != s.grid.size()) {
      throw Error(ErrorKind::kParse, "symbol json: value count differs from resolution");
    }
    return s;
  });
}

FourierProfile profile_from_json(std::string_view text) {
  return parsing("profile json", [&] {
    const json j = json::parse(text);
    const json& meta = j.at("metadata");
    std::optional<int> level;
    if (!meta.at("level_m").is_null()) level = meta.at("level_m").get<int>();
    FourierProfile p{order_of(j.at("order")), level, meta.at("window").get<double>(),
                     meta.at("step").get<double>(), complex_values(j.at("values"))};
    if (p.values.size() % 2 != 1) {
      throw Error(ErrorKind::kParse, "profile json: expected an odd number of samples");
    }
    return p;
  });
}

FrameletBank bank_from_json(std::string_view text) {
  return parsing("bank json", [&] {
    const json j = json::parse(text);
    const PseudoSplineOrder order = order_of(j.at("order"));
    const TorusGrid grid(j.at("resolution").get<std::size_t>());
    const std::string sigma = j.value("sigma", std::string("signed"));
    if (sigma != "signed" && sigma != "nonnegative") {
      throw Error(ErrorKind::kParse, "bank json: unknown sigma branch '" + sigma + "'");
    }
    FrameletBank bank{order,
                      grid,
                      sigma == "signed" ? SigmaBranch::kSigned : SigmaBranch::kNonnegative,
                      {},
                      {},
                      j.at("truncation_eps").get<double>()};
    for (int n = 0; n < 4; ++n) {
      auto& values = bank.symbols[static_cast<std::size_t>(n)];
      values.resize(grid.size());
      for (std::size_t k = 0; k < grid.size(); ++k) {
        values[k] = eval_framelet_symbol(order, n, grid.point(k), bank.sigma_branch);
      }
      const json& c = j.at("coeffs").at(std::to_string(n));
      auto& seq = bank.coeffs[static_cast<std::size_t>(n)];
      seq.offset = c.at("offset").get<int>();
      seq.tail_norm = c.value("tail_norm", 0.0);
      seq.values = complex_values(c.at("values"));
    }
    return bank;
  });
}

}  // namespace pseudospline
