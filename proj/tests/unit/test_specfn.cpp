#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "oracles/bessel_series.hpp"
#include "oracles/elliptic_ode.hpp"
#include "svealab/errors.hpp"
#include "svealab/specfn.hpp"

using namespace svea;
using namespace svea::specfn;

TEST_CASE("jacobi limits m = 0 and m = 1") {
  const auto a = jacobi_elliptic(0.7, 0.0);
  CHECK(a.sn == doctest::Approx(std::sin(0.7)).epsilon(1e-15));
  CHECK(a.cn == doctest::Approx(std::cos(0.7)).epsilon(1e-15));
  CHECK(a.dn == doctest::Approx(1.0).epsilon(1e-15));

  const auto b = jacobi_elliptic(0.7, 1.0);
  CHECK(std::abs(b.sn - std::tanh(0.7)) < 1e-14);
  CHECK(std::abs(b.cn - 1.0 / std::cosh(0.7)) < 1e-14);
  CHECK(std::abs(b.dn - 1.0 / std::cosh(0.7)) < 1e-14);
}

TEST_CASE("jacobi m = -1 matches the ODE oracle") {
  const auto got = jacobi_elliptic(1.0, -1.0);
  const auto ref = oracle::elliptic_by_ode(1.0, -1.0);
  CHECK(std::abs(got.sn - ref.sn) < 1e-9);
  CHECK(std::abs(got.cn - ref.cn) < 1e-9);
  CHECK(std::abs(got.dn - ref.dn) < 1e-9);
  CHECK(std::abs(got.sn - oracle::sn_by_second_order_ode(1.0, -1.0)) < 1e-9);
}

TEST_CASE("jacobi across parameter regimes against the ODE oracle") {
  for (double m : {-3.0, -1.0, -0.25, 0.1, 0.5, 0.9, 0.999, 1.5, 4.0}) {
    for (double u : {-4.3, -1.1, 0.2, 0.9, 2.5, 5.0}) {
      CAPTURE(m);
      CAPTURE(u);
      const auto got = jacobi_elliptic(u, m);
      const auto ref = oracle::elliptic_by_ode(u, m);
      CHECK(std::abs(got.sn - ref.sn) < 1e-9);
      CHECK(std::abs(got.cn - ref.cn) < 1e-9);
      CHECK(std::abs(got.dn - ref.dn) < 1e-9);
    }
  }
}

TEST_CASE("jacobi identities on [-5,5] x [0,1]") {
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double u = -5.0 + 0.1 * i;
    for (int j = 0; j <= 50; ++j) {
      const double m = 0.02 * j;
      const auto e = jacobi_elliptic(u, m);
      worst = std::max(worst, std::abs(e.sn * e.sn + e.cn * e.cn - 1.0));
      worst = std::max(worst, std::abs(e.dn * e.dn + m * e.sn * e.sn - 1.0));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("jacobi parity") {
  for (double m : {-0.7, 0.3, 2.0}) {
    const auto p = jacobi_elliptic(1.3, m);
    const auto q = jacobi_elliptic(-1.3, m);
    CHECK(q.sn == doctest::Approx(-p.sn).epsilon(1e-14));
    CHECK(q.cn == doctest::Approx(p.cn).epsilon(1e-14));
    CHECK(q.dn == doctest::Approx(p.dn).epsilon(1e-14));
  }
}

TEST_CASE("jacobi quarter period") {
  for (double m : {0.2, 0.6, 0.95}) {
    const double k = elliptic_k(m);
    const auto e = jacobi_elliptic(k, m);
    CHECK(e.sn == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(e.cn) < 1e-7);
    CHECK(e.dn == doctest::Approx(std::sqrt(1.0 - m)).epsilon(1e-10));
  }
}

TEST_CASE("jacobi rejects non-finite input") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(jacobi_elliptic(nan, 0.5), DomainError);
  CHECK_THROWS_AS(jacobi_elliptic(1.0, inf), DomainError);
}

TEST_CASE("jacobi_dc values and poles") {
  CHECK(jacobi_dc(0.0, 0.4) == doctest::Approx(1.0));
  CHECK(jacobi_dc(0.5, 0.0) == doctest::Approx(1.0 / std::cos(0.5)).epsilon(1e-14));
  const auto ref = oracle::elliptic_by_ode(0.8, -1.0);
  CHECK(std::abs(jacobi_dc(0.8, -1.0) - ref.dn / ref.cn) < 1e-9);

  const double k = elliptic_k(0.5);
  try {
    (void)jacobi_dc(k, 0.5);
    FAIL("expected PoleError");
  } catch (const PoleError& e) {
    CHECK(e.distance() < 1e-8);
    CHECK(e.location() == k);
  }
  CHECK_NOTHROW(jacobi_dc(k - 1e-3, 0.5));
}

TEST_CASE("complete elliptic integral") {
  CHECK(elliptic_k(0.0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  for (double m : {0.1, 0.5, 0.9, 0.999}) {
    // boost takes the modulus k = sqrt(m)
    CHECK(elliptic_k(m) == doctest::Approx(boost::math::ellint_1(std::sqrt(m))).epsilon(1e-13));
  }
  // K(m) = K(-m/(1-m)) / sqrt(1-m) from the other side
  const double m = -1.0;
  CHECK(elliptic_k(m) ==
        doctest::Approx(boost::math::ellint_1(std::sqrt(0.5)) / std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("J1 against the 50-digit series") {
  CHECK(bessel_j1(0.0) == 0.0);
  double worst = 0.0;
  for (int i = -500; i <= 500; ++i) {
    const double z = 0.1 * i + 0.0137;
    worst = std::max(worst, std::abs(bessel_j1(z) - oracle::bessel_j1_series(z)));
  }
  CHECK(worst < 1e-13);
  CHECK(std::abs(bessel_j1(1.0) - oracle::bessel_j1_series(1.0)) < 1e-15);
}

TEST_CASE("J1 against boost beyond the series range") {
  for (double z : {60.0, 123.4, 1000.0, 1e4}) {
    CHECK(std::abs(bessel_j1(z) - boost::math::cyl_bessel_j(1, z)) < 1e-13);
    CHECK(bessel_j1(-z) == -bessel_j1(z));
  }
}

TEST_CASE("first zero of J1") {
  const double z = bessel_j1_first_zero();
  CHECK(std::abs(z - 3.8317) < 5e-4);
  CHECK(std::abs(bessel_j1(z)) < 1e-14);
  CHECK(z == doctest::Approx(boost::math::cyl_bessel_j_zero(1.0, 1)).epsilon(1e-13));
}

TEST_CASE("0F1(;2;z)") {
  CHECK(hyp0f1_two(0.0) == 1.0);
  CHECK(std::abs(hyp0f1_two(-0.25) - 2.0 * oracle::bessel_j1_series(1.0)) < 1e-15);
  for (double z : {-20.0, -3.3, 0.7, 5.0}) {
    CHECK(hyp0f1_two(z) == doctest::Approx(oracle::hyp0f1_two_series(z)).epsilon(1e-13));
  }
}

TEST_CASE("J1 and 0F1 identity for |x| <= 10") {
  double worst = 0.0;
  for (int i = -1000; i <= 1000; ++i) {
    const double x = 0.01 * i;
    worst = std::max(worst, std::abs(bessel_j1(x) - 0.5 * x * hyp0f1_two(-0.25 * x * x)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("J1(x)/x across the series cutover") {
  CHECK(bessel_j1_over_x(0.0) == 0.5);
  const double x = 1e-6;
  CHECK(std::abs(bessel_j1_over_x(x) - bessel_j1(x) / x) < 1e-12);
  const double c = kBesselJ1OverXCutover;
  CHECK(std::abs(bessel_j1_over_x(c * (1 - 1e-12)) - bessel_j1_over_x(c * (1 + 1e-12))) < 1e-14);
  for (double z : {0.3, 2.0, 7.5}) {
    CHECK(bessel_j1_over_x(z) == doctest::Approx(oracle::bessel_j1_series(z) / z).epsilon(1e-13));
    CHECK(bessel_j1_over_x(-z) == bessel_j1_over_x(z));
  }
}
