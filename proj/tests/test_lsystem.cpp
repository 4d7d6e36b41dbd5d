#include <doctest.h>

#include <cmath>
#include <vector>

#include "lsys/error.hpp"
#include "lsys/lsystem.hpp"

using namespace lsys;
using namespace lsys::lsystem;

namespace {

const weyl::WeylFunction kFree = weyl::WeylFunction::closed_form_free();

SchrodingerLSystem make(cplx h, double mu, const weyl::WeylFunction& w = kFree) {
  return SchrodingerLSystem(BoundaryParameter(h), ExtensionParameter(mu), w);
}

bool close(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(BoundaryParameter({1, 0}), Error);
  CHECK_THROWS_AS(BoundaryParameter({1, -1}), Error);
  CHECK_THROWS_AS(ExtensionParameter(-kInf), Error);
  CHECK_THROWS_AS(ExtensionParameter(std::nan("")), Error);
  CHECK(ExtensionParameter::infinity().is_infinite());
}

TEST_CASE("impedance at z = -1") {
  CHECK(close(impedance(make({0.5, 0.5}, 1), -1.0), 2.0));
  CHECK(close(impedance(make({1, 1}, 0), -1.0), -1.0 / 3.0));
  CHECK(close(impedance(make({1, 1}, kInf), -1.0), 0.5));
}

TEST_CASE("transfer at z = -1") {
  CHECK(close(transfer(make({1, 1}, 0), -1.0), cplx(4, 3) / 5.0));
  CHECK(close(transfer(make({1, 1}, kInf), -1.0), cplx(3, -4) / 5.0));
}

TEST_CASE("impedance from transfer") {
  CHECK(close(impedance_from_transfer(1.0), 0.0));
  CHECK(close(impedance_from_transfer(cplx(4, 3) / 5.0), -1.0 / 3.0));
  // i (i - 1) / (i + 1) = i * i = -1
  CHECK(close(impedance_from_transfer({0, 1}), -1.0));
  CHECK_THROWS_AS(impedance_from_transfer(-1.0), Error);
}

TEST_CASE("poles are reported") {
  // mu = inf: pole where m(z) = -Re h, i.e. -i sqrt(z) = -1 has no solution off the cut;
  // use the raw formula instead.
  try {
    impedance_from_m({1, 1}, kInf, -1.0);
    FAIL("expected a pole");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::pole);
  }
  try {
    transfer_from_m({1, 1}, 0.0, cplx(-1, -1));
    FAIL("expected a pole");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::pole);
  }
}

TEST_CASE("classification of extensions") {
  CHECK(classify_extension(make({0.5, 0.5}, 1)).branch == Branch::stieltjes);
  CHECK(classify_extension(make({1, 1}, 0)).branch == Branch::inverse);
  CHECK(classify_extension(make({1, 1}, 1.5)).branch == Branch::neither);
  CHECK(classify_extension(make({1, 1}, kInf)).branch == Branch::stieltjes);
  CHECK(classify_extension(make({1, 1}, -0.5)).branch == Branch::neither);

  const auto deg = classify_extension(cplx(-1, 1), 1.0, kInf);
  CHECK(deg.branch == Branch::stieltjes);
  CHECK(deg.degenerate);
  CHECK(classify_extension(cplx(-1, 1), 1.0, 100.0).branch != Branch::stieltjes);

  try {
    classify_extension(make({-1, 1}, 0));
    FAIL("expected not_accretive");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_accretive);
  }
}

TEST_CASE("critical mu values") {
  CHECK(mu0_stieltjes({0.5, 0.5}, 0.0).value == doctest::Approx(1));
  CHECK(mu0_stieltjes({1, 1}, 0.0).value == doctest::Approx(2));
  CHECK(mu0_inverse({1, 1}) == 1);
  const auto d = mu0_stieltjes({-1, 1}, 1.0);
  CHECK(d.value == kInf);
  CHECK(d.accretive_not_sectorial_th);
}

TEST_CASE("T_h report") {
  auto r = t_h_report({1, 1}, 0.0);
  CHECK(r.sectorial);
  CHECK(r.exact);
  CHECK(r.theta_tan == doctest::Approx(1));
  r = t_h_report({0.5, 0.5}, 0.0);
  CHECK(r.theta_tan == doctest::Approx(1));
  r = t_h_report({-1, 1}, 1.0);
  CHECK(r.accretive);
  CHECK_FALSE(r.sectorial);
  r = t_h_report({-2, 1}, 1.0);
  CHECK_FALSE(r.accretive);
}

TEST_CASE("class angles") {
  auto a = class_angles(make({0.5, 0.5}, 1));
  CHECK(a.tan_a1 == doctest::Approx(1));
  CHECK(a.tan_a2 == kInf);

  a = class_angles(make({1, 1}, 0));
  CHECK(std::abs(a.tan_a1) < 1e-12);
  CHECK(a.tan_a2 == doctest::Approx(1));

  a = class_angles(make({1, 1}, 3));
  CHECK(a.tan_a1 == doctest::Approx(0.5));
  CHECK(a.tan_a2 == doctest::Approx(3));

  a = class_angles(make({1, 1}, kInf));
  CHECK(a.tan_a1 == 0);
  CHECK(a.tan_a2 == doctest::Approx(1));

  CHECK_THROWS_AS(class_angles(make({1, 1}, 1.5)), Error);

  const auto chk = cross_validate_class_angles(make({1, 1}, 3));
  CHECK(chk.agree);
  CHECK(chk.from_limits.tan_a2 == doctest::Approx(3).epsilon(1e-6));
}

TEST_CASE("alpha and beta") {
  CHECK(alpha_from_class(0, 2.5).tan == 2.5);
  CHECK(alpha_from_class(1, 2).tan == doctest::Approx(4));
  CHECK(alpha_from_class(1, 1).tan == doctest::Approx(1));
  const auto inf = alpha_from_class(1, kInf);
  CHECK(inf.tan == kInf);
  CHECK(inf.flagged);
  CHECK_THROWS_AS(alpha_from_class(2, 1), Error);

  CHECK(universal_beta(1, 4).tan == doctest::Approx(5));
  const auto zero = universal_beta(0, 3);
  CHECK(zero.tan == 0);
  CHECK(zero.flagged);
  CHECK(universal_beta(1, 2).tan == doctest::Approx(1 + 2 * std::sqrt(2.0)));
  CHECK(universal_beta(1, kInf).tan == kInf);
}

TEST_CASE("f(mu)") {
  const cplx h(1, 1);
  // Stieltjes branch: tanA2 + 2 sqrt(tanA1 tanA2)
  CHECK(f_mu(h, 0, 3, Branch::stieltjes) == doctest::Approx(3 + 2 * std::sqrt(1.5)));
  CHECK(f_mu(h, 0, 10, Branch::stieltjes) == doctest::Approx(1.25 + 2 * std::sqrt(1.25 / 9)));
  CHECK(std::abs(f_mu(h, 0, 1e8, Branch::stieltjes) - 1) <= 1e-3);
  CHECK(f_mu(h, 0, 2, Branch::stieltjes) == kInf);
  // inverse branch: tanA1 + 2 sqrt(tanA1 tanA2); at mu = 0.5: tanA1 = 1/3, tanA2 = 2
  CHECK(f_mu(h, 0, 0.5, Branch::inverse) == doctest::Approx(1.0 / 3 + 2 * std::sqrt(2.0 / 3)));
  CHECK_THROWS_AS(f_mu(h, 0, 1.5, Branch::stieltjes), Error);
  CHECK_THROWS_AS(f_mu(h, 0, 1.5, Branch::inverse), Error);
}

TEST_CASE("full reports") {
  auto r = full_report(make({0.5, 0.5}, 1));
  CHECK(r.branch == Branch::stieltjes);
  CHECK(r.state_operator.kind == OperatorStatus::Kind::accretive_not_sectorial);
  CHECK(r.th.theta_tan == doctest::Approx(1));
  CHECK(r.mu0_stieltjes.value == doctest::Approx(1));

  r = full_report(make({1, 1}, 0));
  CHECK(r.branch == Branch::inverse);
  CHECK(r.associated_operator.kind == OperatorStatus::Kind::alpha_sectorial);
  CHECK(r.associated_operator.tan_alpha == doctest::Approx(1));

  r = full_report(make({1, 1}, kInf));
  CHECK(r.branch == Branch::stieltjes);
  CHECK(r.state_operator.kind == OperatorStatus::Kind::alpha_sectorial);
  CHECK(r.state_operator.tan_alpha == doctest::Approx(1));

  r = full_report(make({1, 1}, 1));
  CHECK(r.associated_operator.kind == OperatorStatus::Kind::accretive_not_sectorial);

  r = full_report(make({1, 1}, 3));
  CHECK(r.state_operator.kind == OperatorStatus::Kind::alpha_sectorial);
  CHECK(r.state_operator.tan_alpha == doctest::Approx(3 + 2 * std::sqrt(0.5 * 2.5)));

  r = full_report(make({1, 1}, 1.5));
  CHECK(r.branch == Branch::neither);
  CHECK_FALSE(r.angles);
}

TEST_CASE("scan along the Stieltjes branch") {
  const std::vector<double> grid{100, 2.5, 3, 5, 10};
  const auto res = scan_mu({1, 1}, kFree, Branch::stieltjes, grid);
  REQUIRE(res.rows.size() == 5);
  for (std::size_t i = 1; i < res.rows.size(); ++i) {
    CHECK(res.rows[i].mu > res.rows[i - 1].mu);
    CHECK(res.rows[i].f_mu < res.rows[i - 1].f_mu);
  }
  CHECK(res.summary.direction == Monotonicity::decreasing);
  CHECK(res.summary.mu_star == 2.5);
  CHECK(res.summary.bound_holds);

  const std::vector<double> one{3};
  const auto single = scan_mu({1, 1}, kFree, Branch::stieltjes, one);
  REQUIRE(single.rows.size() == 1);
  CHECK(single.rows[0].f_mu == doctest::Approx(3 + 2 * std::sqrt(1.5)));

  const std::vector<double> with_mu0{2, 4};
  const auto at = scan_mu({1, 1}, kFree, Branch::stieltjes, with_mu0);
  CHECK(at.rows[0].at_mu0);
  CHECK(at.rows[0].f_mu == kInf);
}

TEST_CASE("scan along the inverse branch and bad grids") {
  const std::vector<double> grid{0, 0.25, 0.5, 0.75};
  const auto res = scan_mu({1, 1}, kFree, Branch::inverse, grid);
  CHECK(res.rows.size() == 4);
  CHECK(res.summary.direction == Monotonicity::increasing);

  CHECK_THROWS_AS(scan_mu({1, 1}, kFree, Branch::inverse, std::vector<double>{}), Error);
  CHECK_THROWS_AS(scan_mu({1, 1}, kFree, Branch::stieltjes, std::vector<double>{1.2, 1.5}), Error);
  CHECK_THROWS_AS(scan_mu({1, 1}, kFree, Branch::neither, grid), Error);
}

TEST_CASE("systems over a numeric Weyl function") {
  const auto w = weyl::WeylFunction::from_spec("const:2", true);
  const auto sys = make({1, 1}, kInf, w);
  const double m0 = std::sqrt(2.0);
  CHECK(class_angles(sys).tan_a2 == doctest::Approx(1 / (1 + m0)).epsilon(1e-6));
  CHECK(close(impedance(sys, -1.0), 1.0 / (std::sqrt(3.0) + 1.0), 1e-6));
}
