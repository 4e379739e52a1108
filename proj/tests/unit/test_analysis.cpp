#include <catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "pseudospline/analysis.hpp"
#include "pseudospline/errors.hpp"

using namespace pseudospline;
using Catch::Matchers::WithinAbs;

namespace {

// Valid (alpha, l) pairs for the fractional sweep.
std::vector<PseudoSplineOrder> fractional_sweep() {
  std::vector<PseudoSplineOrder> out;
  for (double a : {1.0, 1.5, 2.0, 2.7, 3.5, 4.2}) {
    for (int l = 0; l <= PseudoSplineOrder::max_admissible_ell(a); ++l) out.emplace_back(a, l);
  }
  return out;
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::kParse;
}

}  // namespace

TEST_CASE("lowpass condition") {
  for (int l = 0; l <= 3; ++l) {
    const LowpassVerdict v = lowpass_condition(PseudoSplineOrder(3.5, l));
    CHECK(v.satisfied);
    CHECK(v.arctan_sum == 0.0);
  }
  const LowpassVerdict c =
      lowpass_condition(PseudoSplineOrder(Complex(3.2, 1.0), 3, 0.0, EllRange::kExtended));
  CHECK(c.satisfied);
  const double expected =
      std::atan(1 / 3.2) + std::atan(1 / 4.2) + std::atan(1 / 5.2) + std::atan(1 / 6.2);
  CHECK_THAT(c.arctan_sum, WithinAbs(expected, 1e-15));
  CHECK_THAT(c.arctan_sum, WithinAbs(0.8865, 1e-4));

  const LowpassVerdict l0 = lowpass_condition(PseudoSplineOrder(Complex(1.0, 50.0), 0));
  CHECK(l0.satisfied);
  CHECK(l0.arctan_sum == 0.0);

  const LowpassVerdict bad = lowpass_condition(PseudoSplineOrder(Complex(3.0, 50.0), 2));
  CHECK_FALSE(bad.satisfied);
  CHECK(bad.arctan_sum > oracle::kPi / 2);
}

TEST_CASE("lowpass floor") {
  const FourierProfile hat = run_cascade(PseudoSplineOrder(1.0, 0)).profile;
  const LowpassFloor f = lowpass_floor(hat);
  CHECK_THAT(f.floor, WithinAbs(std::pow(2.0 * std::sqrt(2.0) / oracle::kPi, 2), 1e-9));
  CHECK_THAT(f.floor, WithinAbs(0.8106, 1e-4));
  CHECK_FALSE(f.ordering_holds.has_value());

  const Complex z(3.2, 1.0);
  const FourierProfile base = run_cascade(PseudoSplineOrder(z, 0)).profile;
  for (int l = 1; l <= 3; ++l) {
    const FourierProfile p =
        run_cascade(PseudoSplineOrder(z, l, 0.0, EllRange::kExtended)).profile;
    const LowpassFloor fl = lowpass_floor(p, 0.25, &base);
    CHECK(fl.floor > 0.0);
    REQUIRE(fl.ordering_holds.has_value());
    CHECK(*fl.ordering_holds);
  }

  const FourierProfile violating = run_cascade(PseudoSplineOrder(Complex(3.0, 50.0), 2),
                                               {.levels = 12, .window = 8, .step = 1.0 / 16})
                                       .profile;
  CHECK(kind_of([&] { lowpass_floor(violating); }) == ErrorKind::kConditionViolated);

  const FourierProfile coarse =
      run_cascade(PseudoSplineOrder(z, 1), {.levels = 12, .window = 8, .step = 1.0 / 16}).profile;
  CHECK(kind_of([&] { lowpass_floor(coarse, 0.25, &base); }) == ErrorKind::kGridIncompatible);
}

TEST_CASE("kappa, Holder exponent and approximation order") {
  CHECK(kappa(PseudoSplineOrder(2.7, 0)) == 0.0);
  CHECK_THAT(kappa(PseudoSplineOrder(2.0, 1)), WithinAbs(std::log2(2.5), 1e-15));
  CHECK_THAT(kappa(PseudoSplineOrder(2.0, 1)), WithinAbs(1.3219, 1e-4));
  CHECK_THAT(kappa(PseudoSplineOrder(3.0, 1)), WithinAbs(std::log2(3.25), 1e-15));

  CHECK(holder_exponent(PseudoSplineOrder(1.0, 0)) == 1.0);
  CHECK(holder_exponent(PseudoSplineOrder(2.0, 0)) == 3.0);
  CHECK_THAT(holder_exponent(PseudoSplineOrder(2.0, 1)), WithinAbs(1.678, 1e-3));
  for (double a : {1.0, 1.5, 2.7, 4.2}) CHECK(holder_exponent(PseudoSplineOrder(a, 0)) == 2 * a - 1);

  CHECK(approximation_order(PseudoSplineOrder(1.0, 0)) == 2.0);
  CHECK(approximation_order(PseudoSplineOrder(2.0, 1)) == 4.0);
  CHECK(approximation_order(PseudoSplineOrder(3.5, 1)) == 4.0);
  CHECK(approximation_order(PseudoSplineOrder(1.5, 1)) == 3.0);

  const PseudoSplineOrder complex_order(Complex(3.2, 1.0), 1);
  CHECK(kind_of([&] { kappa(complex_order); }) == ErrorKind::kDomain);
  CHECK(kind_of([&] { holder_exponent(complex_order); }) == ErrorKind::kDomain);
  CHECK(kind_of([&] { approximation_order(complex_order); }) == ErrorKind::kDomain);
}

TEST_CASE("kappa is nondecreasing in l") {
  for (double a : {1.5, 2.7, 3.5, 4.2}) {
    double prev = -1.0;
    for (int l = 0; l <= PseudoSplineOrder::max_admissible_ell(a); ++l) {
      const double k = kappa(PseudoSplineOrder(a, l));
      CHECK(k >= prev);
      CHECK(k >= 0.0);
      prev = k;
    }
  }
}

TEST_CASE("decay fit on B-splines") {
  const FourierProfile hat =
      run_cascade(PseudoSplineOrder(1.0, 0), {.window = 512}).profile;
  const FitResult f1 = decay_fit(hat, 16, 512);
  CHECK_THAT(f1.slope, WithinAbs(-2.0, 0.1));
  CHECK(f1.points >= 3);

  const FourierProfile cubic = run_cascade(PseudoSplineOrder(2.0, 0), {.window = 512}).profile;
  CHECK_THAT(decay_fit(cubic, 16, 512).slope, WithinAbs(-4.0, 0.1));

  const FourierProfile narrow = run_cascade(PseudoSplineOrder(2.0, 0)).profile;
  CHECK(kind_of([&] { decay_fit(narrow, 16, 100); }) == ErrorKind::kInsufficientRange);
  CHECK(kind_of([&] { decay_fit(narrow, 20, 21); }) == ErrorKind::kInsufficientRange);
}

TEST_CASE("decay fit respects the bound over the sweep") {
  for (const auto& o : fractional_sweep()) {
    const FourierProfile p = run_cascade(o).profile;
    const double bound = -(2 * o.alpha() - kappa(o));
    CHECK(decay_fit(p).slope <= bound + 0.2);
  }
}

TEST_CASE("L conditions") {
  CHECK(verify_L_conditions(PseudoSplineOrder(1.0, 0)));
  CHECK(verify_L_conditions(PseudoSplineOrder(2.0, 1)));
  CHECK(verify_L_conditions(PseudoSplineOrder(1.5, 1)));
  for (const auto& o : fractional_sweep()) CHECK(verify_L_conditions(o));
}

TEST_CASE("zero order fit") {
  CHECK_THAT(zero_order_fit(PseudoSplineOrder(1.0, 0)).slope, WithinAbs(2.0, 0.02));
  CHECK_THAT(zero_order_fit(PseudoSplineOrder(2.0, 1)).slope, WithinAbs(4.0, 0.05));
  CHECK_THAT(zero_order_fit(PseudoSplineOrder(3.4, 2)).slope, WithinAbs(6.0, 0.05));
  for (const auto& o : fractional_sweep()) {
    const FitResult f = zero_order_fit(o);
    CHECK_THAT(f.slope, WithinAbs(2.0 * (o.ell() + 1), 0.05));
    CHECK(f.warning.empty());
  }
  CHECK_FALSE(zero_order_fit(PseudoSplineOrder(4.2, 3), 1e-9, 1e-8).warning.empty());
  CHECK(kind_of([&] { zero_order_fit(PseudoSplineOrder(1.0, 0), 1e-2, 1e-3); }) ==
        ErrorKind::kDomain);
  CHECK(kind_of([&] { zero_order_fit(PseudoSplineOrder(1.0, 0), 1e-3, 0.1); }) ==
        ErrorKind::kDomain);
}

TEST_CASE("full report") {
  const AnalysisReport r = full_report(PseudoSplineOrder(2.0, 0));
  CHECK(r.theta == 0.125);
  CHECK(r.kappa == 0.0);
  CHECK(r.holder_s == 3.0);
  CHECK(r.approx_order == 2.0);
  CHECK(r.lowpass.satisfied);
  CHECK(r.L_conditions == true);
  REQUIRE(r.decay_bound.has_value());
  CHECK(*r.decay_bound == -4.0);
  CHECK(r.refinement_residual < 1e-6);

  const PseudoSplineOrder c(Complex(3.2, 1.0), 3, 0.0, EllRange::kExtended);
  const AnalysisReport rc = full_report(c);
  CHECK(rc.theta == theta_bound(c));
  CHECK(rc.lowpass.satisfied);
  CHECK_FALSE(rc.kappa.has_value());
  CHECK_FALSE(rc.holder_s.has_value());
  CHECK_FALSE(rc.approx_order.has_value());
  CHECK_FALSE(rc.decay.has_value());
  REQUIRE(rc.floor.has_value());
  CHECK(rc.floor->ordering_holds == true);

  const AnalysisReport hat = full_report(PseudoSplineOrder(1.0, 0));
  CHECK_THAT(hat.zero_order.slope, WithinAbs(2.0, 0.02));
  REQUIRE(hat.decay.has_value());
  CHECK_THAT(hat.decay->slope, WithinAbs(-2.0, 0.1));
}

TEST_CASE("shifted orders give the same report") {
  const PseudoSplineOrder base(3.5, 2);
  const AnalysisReport r0 = full_report(base);
  for (double u : {-1.0, 0.5, 2.0}) {
    const AnalysisReport r = full_report(base.with_shift(u));
    CHECK(r.theta == r0.theta);
    CHECK(r.kappa == r0.kappa);
    CHECK(r.holder_s == r0.holder_s);
    CHECK(r.approx_order == r0.approx_order);
    CHECK(r.zero_order.slope == r0.zero_order.slope);
    CHECK_THAT(r.decay->slope, WithinAbs(r0.decay->slope, 1e-9));
    CHECK_THAT(r.floor->floor, WithinAbs(r0.floor->floor, 1e-9));
  }
}
