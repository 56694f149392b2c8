#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "oracles/bessel_series.hpp"
#include "svealab/errors.hpp"
#include "svealab/models.hpp"
#include "svealab/specfn.hpp"

using namespace svea;

TEST_CASE("kg_force examples") {
  CHECK(kg_force(make_cubic_kg(1.0), 0.0) == std::complex<double>(0.0));
  CHECK(std::abs(kg_force(make_double_well_kg(1.0, 1.0), 1.0)) == 0.0);
  CHECK(std::abs(kg_force(make_double_well_kg(1.0, 1.0), -1.0)) == 0.0);
  CHECK(kg_force(make_sine_gordon_kg(1.0), std::numbers::pi / 2).real() ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(kg_force(make_bessel_nls(), 1.0), FamilyMismatchError);
}

TEST_CASE("nls phase rate examples") {
  const ModelSpec bessel = make_bessel_nls(1.0, 1.0);
  CHECK(nls_nonlinear_phase_rate(bessel, 0.0) == 0.5);
  CHECK(std::abs(nls_nonlinear_phase_rate(bessel, specfn::bessel_j1_first_zero())) < 1e-15);
  CHECK(std::abs(nls_nonlinear_phase_rate(bessel, 3.8317)) < 1e-5);
  CHECK(nls_nonlinear_phase_rate(make_cubic_nls(1.0, 1.0), 2.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(nls_nonlinear_phase_rate(bessel, -1.0), DomainError);
  CHECK_THROWS_AS(nls_nonlinear_phase_rate(make_cubic_kg(1.0), 1.0), FamilyMismatchError);
}

TEST_CASE("Bessel rate follows lambda^2 J1(a) / (omega a)") {
  const ModelSpec model = make_bessel_nls(1.7, 0.6);
  for (double a : {0.3, 2.0, 5.5, 11.0}) {
    const double expected = 1.7 * 1.7 * oracle::bessel_j1_series(a) / (0.6 * a);
    CHECK(nls_nonlinear_phase_rate(model, a) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("Bessel rate is smooth at zero amplitude") {
  const ModelSpec model = make_bessel_nls();
  const double a = 1e-6;
  CHECK(std::abs(nls_nonlinear_phase_rate(model, a) - specfn::bessel_j1(a) / a) < 1e-12);
}

TEST_CASE("double-well rate vanishes on the vacuum amplitude") {
  const ModelSpec model = make_double_well_nls(1.3, 0.7, 1.0);
  CHECK(std::abs(nls_nonlinear_phase_rate(model, 1.3 / std::sqrt(0.7))) < 1e-14);
}

TEST_CASE("every NLS rate is a finite real") {
  const std::vector<ModelSpec> models{make_cubic_nls(1.0, 1.0), make_double_well_nls(1.0, 1.0, 1.0),
                                      make_cubic_quintic_nls(1.0, 1.0), make_bessel_nls()};
  for (const auto& model : models) {
    for (double a = 0.0; a < 30.0; a += 0.37) {
      CHECK(std::isfinite(nls_nonlinear_phase_rate(model, a)));
    }
  }
}

TEST_CASE("canonical dispersion") {
  CHECK(make_cubic_nls(1.0, 2.0).dispersion == 0.5);
  CHECK(make_double_well_nls(1.0, 1.0, 4.0).dispersion == 0.25);
  CHECK(make_bessel_nls(1.0, 2.0).dispersion == 0.25);
  CHECK(make_cubic_quintic_nls(1.0, 1.0).dispersion == 1.0);
  CHECK(ModelSpec::canonical_dispersion(ModelFamily::CubicKG, 1.0) == 0.0);
}

TEST_CASE("model validation") {
  ModelSpec m = make_cubic_nls(1.0, 1.0);
  m.omega = 0.0;
  CHECK_THROWS_AS(m.validate(), ConfigError);
  m = make_bessel_nls();
  m.lambda = std::nan("");
  CHECK_THROWS_AS(m.validate(), ConfigError);
  CHECK_NOTHROW(make_bessel_nls().validate());
}

TEST_CASE("family names round-trip") {
  for (auto f : {ModelFamily::CubicKG, ModelFamily::DoubleWellKG, ModelFamily::CubicQuinticKG,
                 ModelFamily::SineGordonKG, ModelFamily::CubicNLS, ModelFamily::DoubleWellNLS,
                 ModelFamily::CubicQuinticNLS, ModelFamily::BesselNLS}) {
    CHECK(model_family_from_string(to_string(f)) == f);
    CHECK(is_kg(f) != is_nls(f));
  }
  CHECK_THROWS_AS(model_family_from_string("Bogus"), ConfigError);
}

TEST_CASE("cubic-quintic constraints") {
  CHECK(cubic_quintic_kg_constraint_holds(1.0, 15.0 / 16.0));
  CHECK_FALSE(cubic_quintic_kg_constraint_holds(1.0, 1.0));
  CHECK(cubic_quintic_nls_constraint_holds(0.2, 1.0, 15.0 / 16.0));
  CHECK_FALSE(cubic_quintic_nls_constraint_holds(0.3, 1.0, 15.0 / 16.0));
}

TEST_CASE("kappa curve") {
  const std::vector<double> amps{0.0, 3.8317, 1.0};
  const auto samples = kappa_curve(amps);
  REQUIRE(samples.size() == 3);
  CHECK(samples[0].kappa == 0.0);
  CHECK(std::abs(samples[1].kappa) < 1e-4);
  CHECK(samples[2].kappa == doctest::Approx(oracle::bessel_j1_series(1.0)));
  CHECK(kappa_sign_regimes(14.0) >= 5);
}

TEST_CASE("kappa changes sign exactly at the J1 zeros") {
  for (int k = 1; k <= 4; ++k) {
    const double z = boost::math::cyl_bessel_j_zero(1.0, k);
    const std::vector<double> amps{z - 1e-6, z + 1e-6};
    const auto s = kappa_curve(amps);
    CHECK(s[0].kappa * s[1].kappa < 0.0);
  }
  // four zeros below 14 give five regimes
  CHECK(kappa_sign_regimes(14.0) == 5);
}
