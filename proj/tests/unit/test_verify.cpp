#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "svealab/errors.hpp"
#include "svealab/specfn.hpp"
#include "svealab/verify.hpp"

using namespace svea;
using namespace svea::verify;

namespace {

AnalyticSolution make(SolutionId id, SolutionParams p = {}) {
  AnalyticSolution s;
  s.id = id;
  s.params = p;
  return s;
}

const std::vector<double> kStatic{0.0};
const std::vector<double> kTimes{0.0, 0.4, 1.0};

}  // namespace

TEST_CASE("KG residual examples") {
  const auto sn = make(SolutionId::CubicKgSn);
  const auto r = kg_residual(model_for(sn), sn, -3.0, 3.0, 2001, kStatic);
  CHECK(r.relative_residual < 1e-6);
  CHECK(r.relative_residual == doctest::Approx(r.max_abs_residual / std::max(r.normalizer, 1.0)));

  const auto cst = make(SolutionId::DwKgConst);
  CHECK(kg_residual(model_for(cst), cst, -3.0, 3.0, 2001, kStatic).max_abs_residual < 1e-14);

  SolutionParams sg;
  sg.nu = 0.5;
  const auto kink = make(SolutionId::SgKink, sg);
  const std::vector<double> ts{0.0, 0.4};
  CHECK(kg_residual(model_for(kink), kink, -6.0, 6.0, 2001, ts).relative_residual < 1e-6);
}

TEST_CASE("NLS residual examples") {
  SolutionParams p;
  p.m = 0.6;
  const auto sn = make(SolutionId::CubicNlsSn, p);
  CHECK(nls_residual(model_for(sn), sn, -3.0, 3.0, 2001, kTimes).relative_residual < 1e-6);

  SolutionParams vac;
  vac.a = 1.0;
  vac.mass = 1.0;
  vac.lambda = 1.0;
  const auto cst = make(SolutionId::DwNlsConst, vac);
  CHECK(nls_residual(model_for(cst), cst, -3.0, 3.0, 2001, kTimes).max_abs_residual < 1e-14);

  SolutionParams bu;
  bu.psi0 = 3.0;
  const auto uni = make(SolutionId::BesselUniform, bu);
  CHECK(nls_residual(model_for(uni), uni, -3.0, 3.0, 2001, kTimes).relative_residual < 1e-10);
}

TEST_CASE("residuals reject the wrong family") {
  const auto kg = make(SolutionId::CubicKgSn);
  const auto nls = make(SolutionId::BesselUniform);
  CHECK_THROWS_AS(nls_residual(model_for(kg), kg, -1.0, 1.0, 101, kStatic), FamilyMismatchError);
  CHECK_THROWS_AS(kg_residual(model_for(nls), nls, -1.0, 1.0, 101, kStatic), FamilyMismatchError);
}

TEST_CASE("a pole inside the window surfaces as PoleError") {
  SolutionParams p;
  p.m = 0.3;
  const auto dc = make(SolutionId::CubicNlsDc, p);
  const double k = specfn::elliptic_k(0.3);
  // grid through the pole at x = K
  CHECK_THROWS_AS(nls_residual(model_for(dc), dc, -k, k, 201, kStatic), PoleError);
}

TEST_CASE("h^4 convergence on every non-exact entry") {
  for (SolutionId id : all_solution_ids()) {
    CAPTURE(to_string(id));
    const ConvergenceCheck c = convergence(default_residual_setup(id), 201);
    if (c.exact) {
      CHECK(c.fine.relative_residual < kExactResidualFloor);
    } else {
      CHECK(c.order >= 3.5);
    }
  }
}

TEST_CASE("catalog sweep passes") {
  CatalogOptions options;
  options.jobs = 2;
  const auto rows = verify_catalog(options);
  REQUIRE(rows.size() == kCatalogSize);
  for (const auto& row : rows) {
    CAPTURE(to_string(row.report.solution_id));
    CHECK(row.pass());
    CHECK(row.report.n_points == 2001);
  }
  const std::string report = format_catalog_report(rows, options.threshold);
  for (SolutionId id : all_solution_ids()) {
    CHECK(report.find(std::string(to_string(id))) != std::string::npos);
  }
}

TEST_CASE("mapping checks are independent of the time samples") {
  const std::vector<double> ts{0.0, 1.0, 7.3, 100.0};
  for (const MappingPair& pair : mapping_table()) {
    CAPTURE(to_string(pair.nls_id));
    const MappingSetup setup = default_mapping_setup(pair);
    const auto xs = linspace(setup.x_min, setup.x_max, setup.n_points);
    const MappingCheck c = check_mapping(pair, setup.base, xs, ts);
    REQUIRE(c.max_diff_per_t.size() == ts.size());
    CHECK(c.max_diff < 1e-10);
  }
}

TEST_CASE("dc mapping satisfies both equations at m*") {
  const auto pair = find_mapping(SolutionId::CubicNlsDc);
  const auto [kg, nls] = instantiate_mapping(*pair, SolutionParams{});
  CHECK(nls_residual(model_for(nls), nls, -1.0, 1.0, 2001, kTimes).relative_residual < 1e-6);
  CHECK(kg_residual(model_for(kg), kg, -1.0, 1.0, 2001, kStatic).relative_residual < 1e-6);
}

TEST_CASE("detuned cubic cn pair follows the |1 - exp(i theta t)| oracle") {
  const auto pair = find_mapping(SolutionId::CubicNlsCn);
  const SolutionParams base{};
  const double m = 0.3;
  const double detune = m - 0.5;
  const auto xs = linspace(-3.0, 3.0, 401);
  const std::vector<double> ts{0.0, 1.0, 2.0, 3.0};
  const MappingCheck c = check_mapping(*pair, base, xs, ts, detune);

  // Envelope at the wrong m, rotated by its own phase rate, against the KG profile.
  const auto [kg, nls] = instantiate_mapping(*pair, base, detune);
  const double theta = -(1.0 - 2.0 * m) * base.c * base.c / base.omega;
  CHECK(phase_rate(nls) == doctest::Approx(theta).epsilon(1e-14));
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double expected = 0.0;
    for (double x : xs) {
      const auto a = eval_solution(nls, x, 0.0) * std::exp(std::complex<double>(0.0, theta * ts[i]));
      expected = std::max(expected, std::abs(a - eval_solution(kg, x, 0.0)));
    }
    CHECK(c.max_diff_per_t[i] == doctest::Approx(expected).epsilon(1e-9));
  }
  for (std::size_t i = 1; i < ts.size(); ++i) CHECK(c.max_diff_per_t[i] > c.max_diff_per_t[i - 1]);
  CHECK(c.max_diff > 1e-10);
}

TEST_CASE("double-well constant pair is exact") {
  const auto pair = find_mapping(SolutionId::DwNlsConst);
  const auto xs = linspace(-3.0, 3.0, 101);
  const std::vector<double> ts{0.0, 1.0, 10.0};
  CHECK(check_mapping(*pair, SolutionParams{}, xs, ts).max_diff == 0.0);
}
