#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>

#include "oracles/bessel_series.hpp"
#include "oracles/elliptic_ode.hpp"
#include "svealab/errors.hpp"
#include "svealab/solutions.hpp"
#include "svealab/specfn.hpp"

using namespace svea;
using namespace std::complex_literals;

namespace {

AnalyticSolution make(SolutionId id, SolutionParams p = {}) {
  AnalyticSolution s;
  s.id = id;
  s.params = p;
  return s;
}

}  // namespace

TEST_CASE("catalog has 21 named entries") {
  CHECK(all_solution_ids().size() == kCatalogSize);
  CHECK(kCatalogSize == 21);
  for (SolutionId id : all_solution_ids()) {
    const auto name = to_string(id);
    CHECK(solution_id_from_string(name) == id);
    CHECK(is_kg_solution(id) != is_nls_solution(id));
    CHECK(catalog_entry(id).id == id);
  }
  CHECK_FALSE(solution_id_from_string("NOPE").has_value());
}

TEST_CASE("catalog dump has one record per entry") {
  const std::string dump = catalog_dump();
  for (SolutionId id : all_solution_ids()) {
    CHECK(dump.find(std::string(to_string(id))) != std::string::npos);
  }
}

TEST_CASE("evaluation examples") {
  CHECK(std::abs(eval_solution(make(SolutionId::CubicKgSn), 0.0, 0.0)) == 0.0);

  SolutionParams dw;
  dw.mass = 1.0;
  dw.lambda = 1.0;
  CHECK(eval_solution(make(SolutionId::DwKgKink, dw), 40.0, 0.0).real() ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eval_solution(make(SolutionId::DwKgKink, dw), 1.0, 0.0).real() ==
        doctest::Approx(std::tanh(1.0 / std::sqrt(2.0))).epsilon(1e-14));

  SolutionParams bu;
  bu.psi0 = 2.0;
  const std::complex<double> expected = 2.0 * std::exp(-0.5i * oracle::bessel_j1_series(2.0));
  CHECK(std::abs(eval_solution(make(SolutionId::BesselUniform, bu), 0.3, 1.0) - expected) < 1e-15);

  SolutionParams cq;
  cq.sigma = 1.0;
  cq.lambda = 15.0 / 16.0;
  CHECK(std::abs(eval_solution(make(SolutionId::CqKgSn, cq), 0.0, 0.0) -
                 std::sqrt(3.0 / (8.0 * cq.lambda))) < 1e-15);
}

TEST_CASE("cubic NLS sn envelope against the ODE oracle") {
  SolutionParams p;
  p.m = 0.6;
  const auto sol = make(SolutionId::CubicNlsSn, p);
  const double x = 0.9;
  const double amplitude = std::abs(eval_solution(sol, x, 0.0));
  // c sqrt(2m/lambda) |sn(c x | m)| with c = lambda = 1
  CHECK(amplitude ==
        doctest::Approx(std::sqrt(1.2) * std::abs(oracle::elliptic_by_ode(x, 0.6).sn)).epsilon(1e-10));
}

TEST_CASE("phase rates vanish at the quenched parameter") {
  SolutionParams p;
  p.m = -1.0;
  CHECK(phase_rate(make(SolutionId::CubicNlsSn, p)) == 0.0);
  p.m = 0.5;
  CHECK(phase_rate(make(SolutionId::CubicNlsCn, p)) == 0.0);
  CHECK_THROWS_AS(phase_rate(make(SolutionId::CubicKgSn)), FamilyMismatchError);

  for (const MappingPair& pair : mapping_table()) {
    const auto [kg, nls] = instantiate_mapping(pair, SolutionParams{});
    CAPTURE(to_string(pair.nls_id));
    CHECK(std::abs(phase_rate(nls)) < 1e-15);
  }
}

TEST_CASE("cubic-quintic rate vanishes at m = 1/5") {
  const auto pair = find_mapping(SolutionId::CqNlsSn);
  REQUIRE(pair);
  REQUIRE(pair->m_star);
  CHECK(*pair->m_star == doctest::Approx(0.2));
  const auto [kg, nls] = instantiate_mapping(*pair, SolutionParams{});
  CHECK(nls.params.m == doctest::Approx(0.2));
  CHECK(std::abs(phase_rate(nls)) < 1e-15);
}

TEST_CASE("mapping table lookups") {
  CHECK(mapping_table().size() == 9);
  const auto sn = find_mapping(SolutionId::CubicNlsSn);
  REQUIRE(sn);
  CHECK(sn->kg_id == SolutionId::CubicKgSn);
  CHECK(*sn->m_star == -1.0);

  const auto tanh = find_mapping(SolutionId::DwNlsTanh);
  REQUIRE(tanh);
  CHECK(tanh->kind == MappingKind::AmplitudeConstraint);
  CHECK(tanh->constraint_note.find("m_s^2 = 2 c^2") != std::string::npos);

  const auto cst = find_mapping(SolutionId::DwNlsConst);
  REQUIRE(cst);
  CHECK(cst->constraint_note.find("m_s / sqrt(lambda)") != std::string::npos);

  CHECK_FALSE(find_mapping(SolutionId::BesselUniform).has_value());
}

TEST_CASE("mapped envelopes equal their KG partners for all t") {
  for (const MappingPair& pair : mapping_table()) {
    CAPTURE(to_string(pair.nls_id));
    const auto [kg, nls] = instantiate_mapping(pair, SolutionParams{});
    for (double t : {0.0, 1.0, 7.3, 100.0}) {
      for (double x = -0.9; x <= 0.9; x += 0.15) {
        CHECK(std::abs(eval_solution(nls, x, t) - eval_solution(kg, x, 0.0)) < 1e-10);
      }
    }
  }
}

TEST_CASE("mapped sn and cn sit outside the NLS validity domain") {
  for (SolutionId id : {SolutionId::CubicNlsSn, SolutionId::CubicNlsCn}) {
    const auto pair = find_mapping(id);
    const auto [kg, nls] = instantiate_mapping(*pair, SolutionParams{});
    CHECK_FALSE(in_validity_domain(nls));
  }
  SolutionParams inside;
  inside.m = 0.6;
  CHECK(in_validity_domain(make(SolutionId::CubicNlsSn, inside)));
  inside.m = -0.5;
  CHECK(in_validity_domain(make(SolutionId::CubicNlsCn, inside)));
}

TEST_CASE("SG_IMAG is purely imaginary") {
  const auto sol = make(SolutionId::SgImag);
  for (double x = -1.4; x <= 1.4; x += 0.1) {
    const auto v = eval_solution(sol, x, 0.0);
    CHECK(std::abs(v.real()) < 1e-14);
  }
  CHECK(eval_solution(sol, 0.7, 0.0).imag() == doctest::Approx(-eval_solution(sol, -0.7, 0.0).imag()));
}

TEST_CASE("sign choices flip the solution") {
  SolutionParams p;
  p.m = 0.6;
  AnalyticSolution plus = make(SolutionId::CubicNlsSn, p);
  AnalyticSolution minus = plus;
  minus.signs.outer = -1;
  const auto a = eval_solution(plus, 0.8, 0.4);
  const auto b = eval_solution(minus, 0.8, 0.4);
  CHECK(std::abs(a + b) < 1e-15);

  AnalyticSolution kink = make(SolutionId::DwKgKink);
  AnalyticSolution anti = kink;
  anti.signs.inner = -1;
  CHECK(std::abs(eval_solution(kink, 1.2, 0.0) + eval_solution(anti, 1.2, 0.0)) < 1e-15);
}

TEST_CASE("constraints are enforced") {
  SolutionParams cq;
  cq.sigma = 1.0;
  cq.lambda = 1.0;
  const auto bad = make(SolutionId::CqKgSn, cq);
  CHECK_THROWS_AS(check_constraints(bad), ConstraintError);
  CHECK_THROWS_AS(eval_solution(bad, 0.0, 0.0), ConstraintError);
  try {
    check_constraints(bad);
  } catch (const ConstraintError& e) {
    CHECK(std::string(e.what()).find("15") != std::string::npos);
  }

  SolutionParams sg;
  sg.nu = 1.2;
  CHECK_THROWS_AS(check_constraints(make(SolutionId::SgKink, sg)), ConstraintError);
}

TEST_CASE("dc entries signal poles") {
  const double k = specfn::elliptic_k(0.3);
  SolutionParams p;
  p.m = 0.3;
  CHECK_THROWS_AS(eval_solution(make(SolutionId::CubicNlsDc, p), k, 0.0), PoleError);
  CHECK(std::isfinite(std::abs(eval_solution(make(SolutionId::CubicNlsDc, p), 0.5 * k, 0.0))));
}

TEST_CASE("cubic-quintic radicand sign change is flagged") {
  SolutionParams cq;
  cq.sigma = -1.0;
  cq.lambda = 15.0 / 16.0;
  const auto sol = make(SolutionId::CqKgSn, cq);
  bool flagged = false;
  for (double x = -3.0; x <= 3.0; x += 0.05) {
    const auto e = evaluate(sol, x, 0.0);
    CHECK(std::isfinite(std::abs(e.value)));
    flagged = flagged || e.negative_radicand;
  }
  CHECK(flagged);
  CHECK_FALSE(evaluate(make(SolutionId::CqKgSn, SolutionParams{.lambda = 15.0 / 16.0, .sigma = 1.0}),
                       0.3, 0.0)
                  .negative_radicand);
}
