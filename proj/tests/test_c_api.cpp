#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "lsys/lsys.h"

namespace {

struct Handles {
  lsys_weyl* weyl = nullptr;
  lsys_system* sys = nullptr;
  ~Handles() {
    lsys_system_destroy(sys);
    lsys_weyl_destroy(weyl);
  }
};

}  // namespace

TEST_CASE("weyl handle") {
  Handles h;
  REQUIRE(lsys_weyl_create("free", 0, &h.weyl) == LSYS_OK);
  lsys_complex m{};
  REQUIRE(lsys_weyl_eval(h.weyl, {-4, 0}, &m) == LSYS_OK);
  CHECK(m.re == doctest::Approx(2));
  CHECK(m.im == 0);
  double m0 = -1;
  CHECK(lsys_weyl_neg_zero(h.weyl, &m0) == LSYS_OK);
  CHECK(m0 == 0);
  int src = -1;
  CHECK(lsys_weyl_source(h.weyl, &src) == LSYS_OK);
  CHECK(src == 0);

  CHECK(lsys_weyl_eval(h.weyl, {4, 0}, &m) == LSYS_E_DOMAIN);
  CHECK(std::string(lsys_last_error()).find("cut") != std::string::npos);
}

TEST_CASE("bad arguments") {
  lsys_weyl* w = nullptr;
  CHECK(lsys_weyl_create(nullptr, 0, &w) == LSYS_E_INPUT);
  CHECK(lsys_weyl_create("bogus", 0, &w) == LSYS_E_INPUT);
  CHECK(w == nullptr);
  CHECK(lsys_weyl_create("table:/does/not/exist.csv", 0, &w) == LSYS_E_IO);
  CHECK(lsys_weyl_eval(nullptr, {0, 1}, nullptr) == LSYS_E_INPUT);
  CHECK(std::string(lsys_status_name(LSYS_E_NOT_ACCRETIVE)) == "not_accretive");
  lsys_weyl_destroy(nullptr);
  lsys_system_destroy(nullptr);
}

TEST_CASE("system evaluation and classification") {
  Handles h;
  REQUIRE(lsys_weyl_create("free", 0, &h.weyl) == LSYS_OK);
  REQUIRE(lsys_system_create({1, 1}, 0.0, h.weyl, &h.sys) == LSYS_OK);
  // The system keeps the Weyl function alive on its own.
  lsys_weyl_destroy(h.weyl);
  h.weyl = nullptr;

  lsys_complex v{}, w{}, back{};
  REQUIRE(lsys_impedance(h.sys, {-1, 0}, &v) == LSYS_OK);
  CHECK(v.re == doctest::Approx(-1.0 / 3));
  REQUIRE(lsys_transfer(h.sys, {-1, 0}, &w) == LSYS_OK);
  CHECK(w.re == doctest::Approx(0.8));
  CHECK(w.im == doctest::Approx(0.6));
  REQUIRE(lsys_impedance_from_transfer(w, &back) == LSYS_OK);
  CHECK(back.re == doctest::Approx(v.re));
  CHECK(lsys_impedance_from_transfer({-1, 0}, &back) == LSYS_E_DOMAIN);

  lsys_report r{};
  REQUIRE(lsys_classify(h.sys, &r) == LSYS_OK);
  CHECK(r.klass == LSYS_CLASS_INVERSE_STIELTJES);
  CHECK(r.has_class_angles == 1);
  CHECK(r.tan_alpha2 == doctest::Approx(1));
  CHECK(r.associated_operator.kind == LSYS_OP_ALPHA_SECTORIAL);
  CHECK(r.associated_operator.tan_alpha == doctest::Approx(1));
  CHECK(r.mu0_stieltjes == doctest::Approx(2));
}

TEST_CASE("invalid systems") {
  Handles h;
  REQUIRE(lsys_weyl_create("free", 0, &h.weyl) == LSYS_OK);
  CHECK(lsys_system_create({1, -1}, 0.0, h.weyl, &h.sys) == LSYS_E_DOMAIN);
  CHECK(h.sys == nullptr);
  REQUIRE(lsys_system_create({-1, 1}, 0.0, h.weyl, &h.sys) == LSYS_OK);
  lsys_report r{};
  CHECK(lsys_classify(h.sys, &r) == LSYS_E_NOT_ACCRETIVE);
}

TEST_CASE("scan through the C interface") {
  Handles h;
  REQUIRE(lsys_weyl_create("free", 0, &h.weyl) == LSYS_OK);
  const std::vector<double> grid{2, 3, 10, INFINITY};
  std::vector<lsys_scan_row> rows(grid.size());
  size_t n = 0;
  lsys_scan_summary s{};
  REQUIRE(lsys_scan_mu({1, 1}, h.weyl, LSYS_CLASS_STIELTJES, grid.data(), grid.size(), nullptr, rows.data(), &n, &s) ==
          LSYS_OK);
  REQUIRE(n == 4);
  CHECK((rows[0].flags & LSYS_ROW_AT_MU0) != 0);
  CHECK(std::isinf(rows[0].f_mu));
  CHECK(s.mu_star == 3);
  CHECK(s.direction == LSYS_DECREASING);
  CHECK(s.bound_holds == 1);
  CHECK(lsys_scan_mu({1, 1}, h.weyl, LSYS_CLASS_NEITHER, grid.data(), grid.size(), nullptr, rows.data(), &n, &s) ==
        LSYS_E_INPUT);
}

TEST_CASE("sector angle estimate and verification callback") {
  Handles h;
  REQUIRE(lsys_weyl_create("free", 0, &h.weyl) == LSYS_OK);
  REQUIRE(lsys_system_create({1, 1}, INFINITY, h.weyl, &h.sys) == LSYS_OK);
  double t = 0;
  REQUIRE(lsys_estimate_sector_angle(h.sys, 0, 1, 100, 4, &t) == LSYS_OK);
  CHECK(std::abs(std::atan(t) - std::atan(1.0)) < 2 * M_PI / 180);

  struct Seen {
    int calls = 0;
    int passed = 0;
  } seen;
  int failed = -1;
  auto cb = [](int, const char*, int passed, const char*, void* user) {
    auto* s = static_cast<Seen*>(user);
    ++s->calls;
    s->passed += passed;
  };
  REQUIRE(lsys_verify_run(1, 20041216, cb, &seen, &failed) == LSYS_OK);
  CHECK(seen.calls == 1);
  CHECK(seen.passed == 1);
  CHECK(failed == 0);
  CHECK(lsys_verify_run(9, 1, nullptr, nullptr, &failed) == LSYS_E_INPUT);
}
