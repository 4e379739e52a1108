#include <catch_amalgamated.hpp>

#include "json.hpp"
#include <sstream>

#include "pseudospline/errors.hpp"
#include "pseudospline/io.hpp"

using namespace pseudospline;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::kDomain;
}

}  // namespace

TEST_CASE("double formatting round-trips") {
  for (double v : {0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, 6.02214076e23, -4.9e-324, 1e-310}) {
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(kind_of([] { parse_double("1.5x"); }) == ErrorKind::kParse);
  CHECK(kind_of([] { parse_double(""); }) == ErrorKind::kParse);
}

TEST_CASE("symbol CSV") {
  const SampledSymbol s = sample_H0(PseudoSplineOrder(1.0, 0), TorusGrid(4));
  std::ostringstream out;
  write_csv(out, s);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "gamma,re,im,abs");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 4);

  std::istringstream in(out.str());
  const std::vector<Complex> back = read_values_csv(in);
  REQUIRE(back.size() == 4);
  for (std::size_t j = 0; j < 4; ++j) CHECK(back[j] == s.values[j]);
}

TEST_CASE("values CSV accepts re/im without abs and rejects junk") {
  std::istringstream ok("t,re,im\n0,1,2\n1,3,-4\n");
  const auto v = read_values_csv(ok);
  REQUIRE(v.size() == 2);
  CHECK(v[1] == Complex(3, -4));

  std::istringstream no_header("0,1,2\n");
  CHECK(kind_of([&] { read_values_csv(no_header); }) == ErrorKind::kParse);
  std::istringstream bad("t,re,im\n0,1,abc\n");
  CHECK(kind_of([&] { read_values_csv(bad); }) == ErrorKind::kParse);
  std::istringstream short_row("t,re,im\n0,1\n");
  CHECK(kind_of([&] { read_values_csv(short_row); }) == ErrorKind::kParse);
}

TEST_CASE("signal CSV round trip") {
  const std::vector<Complex> v{{1, 2}, {-0.25, 1e-300}, {3, 0}, {0, -7}};
  std::ostringstream out;
  write_signal_csv(out, v);
  std::istringstream in(out.str());
  CHECK(read_values_csv(in) == v);
}

TEST_CASE("JSON round trips") {
  const PseudoSplineOrder o(Complex(3.2, 1.0), 3, 0.5, EllRange::kExtended);
  CHECK(order_from_json(to_json(o)) == o);

  const SampledSymbol s = sample_H0(o, TorusGrid(64));
  const SampledSymbol s2 = symbol_from_json(to_json(s));
  CHECK(s2.order == o);
  CHECK(s2.grid.resolution() == 64);
  CHECK(s2.values == s.values);

  const CascadeResult r = run_cascade(PseudoSplineOrder(1.5, 0), {.levels = 10, .window = 4, .step = 0.25});
  const FourierProfile p = profile_from_json(to_json(r.profile, &r.diagnostics));
  CHECK(p.values == r.profile.values);
  CHECK(p.level == r.profile.level);
  CHECK(p.half_width == 4.0);
  CHECK(p.step == 0.25);

  const FrameletBank b = build_bank(PseudoSplineOrder(2.0, 1), TorusGrid(256));
  const FrameletBank b2 = bank_from_json(to_json(b));
  CHECK(b2.order == b.order);
  CHECK(b2.sigma_branch == b.sigma_branch);
  CHECK(b2.truncation_eps == b.truncation_eps);
  for (std::size_t n = 0; n < 4; ++n) {
    CHECK(b2.coeffs[n].offset == b.coeffs[n].offset);
    CHECK(b2.coeffs[n].values == b.coeffs[n].values);
    CHECK(b2.coeffs[n].tail_norm == b.coeffs[n].tail_norm);
    CHECK(b2.symbols[n] == b.symbols[n]);
  }
}

TEST_CASE("JSON parse errors") {
  CHECK(kind_of([] { order_from_json("{"); }) == ErrorKind::kParse);
  CHECK(kind_of([] { order_from_json(R"({"z_re": 1})"); }) == ErrorKind::kParse);
  CHECK(kind_of([] { bank_from_json(R"({"order": 3})"); }) == ErrorKind::kParse);
}

TEST_CASE("report JSON marks absent fields") {
  AnalysisOptions opt;
  opt.cascade.levels = 12;
  opt.cascade.window = 16;
  opt.cascade.step = 1.0 / 16;
  const auto j = nlohmann::json::parse(
      to_json(full_report(PseudoSplineOrder(Complex(3.2, 1.0), 1), opt)));
  CHECK(j.at("kappa").is_null());
  CHECK(j.at("holder_s").is_null());
  CHECK(j.at("approx_order").is_null());
  CHECK(j.at("lowpass_ok").get<bool>());
  CHECK(j.contains("provenance"));

  const auto r = nlohmann::json::parse(to_json(full_report(PseudoSplineOrder(2.0, 1))));
  CHECK(r.at("approx_order").get<double>() == 4.0);
  CHECK(std::abs(r.at("kappa").get<double>() - 1.3219) < 1e-4);
}
