// Acceptance run: one PASS/FAIL line per criterion.  Oracles here are written
// independently of the library's own verification suite.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lsys/error.hpp"
#include "lsys/funclass.hpp"
#include "lsys/lsystem.hpp"
#include "lsys/weyl.hpp"

using namespace lsys;
using funclass::Variant;
using lsystem::Branch;
using Kind = lsystem::OperatorStatus::Kind;

namespace {

constexpr std::uint64_t kSeed = 20041216;

// Im >= 0 branch via the half-angle formula, avoiding std::sqrt(complex).
cplx half_angle_root(cplx z) {
  const double r = std::abs(z);
  const double re = std::sqrt(std::max(0.0, (r + z.real()) / 2));
  const double im = std::sqrt(std::max(0.0, (r - z.real()) / 2));
  // sign(Im z) decides the quadrant; pick the root in the closed upper half-plane.
  return z.imag() >= 0 ? cplx(re, im) : cplx(-re, im);
}

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string n(double x) { return format_double(x); }

lsystem::SchrodingerLSystem sys(cplx h, double mu, const weyl::WeylFunction& w = weyl::WeylFunction::closed_form_free()) {
  return lsystem::SchrodingerLSystem(lsystem::BoundaryParameter(h), lsystem::ExtensionParameter(mu), w);
}

std::vector<cplx> twenty_points(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lr(-2.0, 2.0), ang(0.05, std::numbers::pi - 0.05);
  std::vector<cplx> out;
  for (int k = 0; k < 20; ++k) {
    const cplx z = std::polar(std::pow(10.0, lr(rng)), ang(rng));
    out.push_back(k % 2 ? std::conj(z) : z);
  }
  return out;
}

Outcome criterion1() {
  Outcome o;
  const auto s = sys({0.5, 0.5}, 1.0);
  double worst = 0;
  for (cplx z : twenty_points(kSeed)) {
    const cplx want = 1.0 + cplx(0, 1) / half_angle_root(z);
    worst = std::max(worst, std::abs(lsystem::impedance(s, z) - want) / std::abs(want));
  }
  o.require(worst <= 1e-10, "V rel err " + n(worst));
  const auto r = lsystem::full_report(s);
  o.require(r.branch == Branch::stieltjes, "class");
  o.require(r.angles && std::abs(r.angles->tan_a1 - 1) <= 1e-8, "tanA1");
  o.require(r.angles && std::isinf(r.angles->tan_a2), "tanA2");
  o.require(std::abs(r.mu0_stieltjes.value - 1) <= 1e-12, "mu0 " + n(r.mu0_stieltjes.value));
  o.require(r.state_operator.kind == Kind::accretive_not_sectorial, "state operator");
  o.require(r.th.exact && std::abs(r.th.theta_tan - 1) <= 1e-10, "theta");
  if (o.ok) o.detail = "V rel err " + n(worst);
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto s = sys({1, 1}, 0.0);
  double worst = 0;
  for (cplx z : twenty_points(kSeed + 1)) {
    const cplx r = half_angle_root(z);
    const cplx want = -r / (r + cplx(0, 2));
    worst = std::max(worst, std::abs(lsystem::impedance(s, z) - want) / std::abs(want));
  }
  o.require(worst <= 1e-10, "V rel err " + n(worst));
  const auto r = lsystem::full_report(s);
  o.require(r.branch == Branch::inverse, "class");
  o.require(r.angles && std::abs(r.angles->tan_a1) <= 1e-8, "tanA1");
  o.require(r.angles && std::abs(r.angles->tan_a2 - 1) <= 1e-8, "tanA2");
  o.require(r.th.exact && std::abs(r.th.theta_tan - 1) <= 1e-10, "theta");
  o.require(r.associated_operator.kind == Kind::alpha_sectorial &&
                std::abs(r.associated_operator.tan_alpha - 1) <= 1e-10,
            "associated operator");
  if (o.ok) o.detail = "V rel err " + n(worst);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const std::vector<cplx> lams{{0, 1}, {1, 1}, {-1, 0}, {-4, 0}, {2, 3}, {-0.01, 0}};
  double worst = 0, slowest = 0;
  for (double c : {0.0, 2.0}) {
    const auto p = c == 0 ? weyl::Potential::free() : weyl::Potential::constant(c);
    for (cplx lam : lams) {
      const auto t0 = std::chrono::steady_clock::now();
      const cplx m = weyl::weyl_m(p, lam);
      slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      const cplx want = cplx(0, -1) * half_angle_root(lam - c);
      const double e = std::abs(m - want) / std::abs(want);
      worst = std::max(worst, e);
      o.require(e <= 1e-6, "c=" + n(c) + " lambda=" + format_complex(lam) + " err " + n(e));
    }
  }
  const double z0 = weyl::weyl_m_neg_zero(weyl::Potential::free());
  const double z2 = weyl::weyl_m_neg_zero(weyl::Potential::constant(2.0));
  o.require(std::abs(z0) <= 1e-6, "m_free(-0) " + n(z0));
  o.require(std::abs(z2 - std::sqrt(2.0)) <= 1e-6, "m_2(-0) " + n(z2));
  o.require(slowest < 1.0, "slowest " + n(slowest) + " s");
  if (o.ok) o.detail = "max rel err " + n(worst) + ", slowest " + n(slowest) + " s";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 4);
  std::uniform_real_distribution<double> reh(-3, 3), imh(0.01, 4), mu(-10, 10), u(0, 1), lr(-3, 3),
      ang(-std::numbers::pi, std::numbers::pi);
  const auto w = weyl::WeylFunction::closed_form_free();
  double worst = 0;
  int count = 0;
  while (count < 200) {
    const cplx h(reh(rng), imh(rng));
    const double m = u(rng) < 0.15 ? kInf : mu(rng);
    const cplx z = std::polar(std::pow(10.0, lr(rng)), ang(rng));
    if (std::abs(z.imag()) < 1e-6) continue;
    try {
      const auto s = sys(h, m, w);
      const cplx v = lsystem::impedance(s, z);
      const cplx back = lsystem::impedance_from_transfer(lsystem::transfer(s, z));
      worst = std::max(worst, std::abs(back - v) / std::abs(v));
      ++count;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::pole && e.code() != ErrorCode::domain) throw;
    }
  }
  o.require(worst <= 1e-10, "max rel err " + n(worst));
  if (o.ok) o.detail = "200 triples, max rel err " + n(worst);
  return o;
}

double min_eig(const funclass::AnalyticFunction& f, const std::vector<cplx>& pts, double tan_alpha) {
  return funclass::is_psd(funclass::build_sector_kernel(f, pts, tan_alpha, Variant::stieltjes)).min_eigenvalue;
}

Outcome criterion5() {
  Outcome o;
  const auto v = lsystem::impedance_function(sys({1, 1}, kInf));
  const auto v1 = lsystem::impedance_function(sys({0.5, 0.5}, 1.0));
  std::mt19937_64 rng(kSeed + 5);
  double lowest = kInf;
  for (int t = 0; t < 50; ++t) lowest = std::min(lowest, min_eig(v, funclass::sample_upper_half_plane(rng, 4), 1.0));
  o.require(lowest >= -1e-8, "pi/4 min eig " + n(lowest));

  auto violation_trial = [&](const funclass::AnalyticFunction& f, double tan_alpha) {
    for (int t = 1; t <= 200; ++t)
      if (min_eig(f, funclass::sample_upper_half_plane(rng, 4), tan_alpha) < -1e-6) return t;
    return 0;
  };
  const int t6 = violation_trial(v, std::tan(std::numbers::pi / 6));
  const int t3 = violation_trial(v1, std::tan(std::numbers::pi / 3));
  o.require(t6 > 0, "no violation at pi/6");
  o.require(t3 > 0, "no violation at pi/3 for the first worked example");

  const auto est = funclass::min_sector_angle(v, Variant::stieltjes, {kSeed, 200, 4});
  const double deg = std::atan(est.tan_alpha) * 180 / std::numbers::pi;
  o.require(std::abs(deg - 45) <= 2, "estimated angle " + n(deg));
  if (o.ok)
    o.detail = "seed " + std::to_string(kSeed) + ", violations at trials " + std::to_string(t6) + " and " +
               std::to_string(t3) + ", estimated angle " + n(deg) + " deg";
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (double t = 0; t <= 100; t += 0.37) o.require(lsystem::alpha_from_class(0, t).tan == t, "alpha(0," + n(t) + ")");
  const std::vector<double> mus{2.1, 2.5, 3, 5, 10, 100};
  std::vector<double> f;
  for (double m : mus) f.push_back(lsystem::f_mu({1, 1}, 0, m, Branch::stieltjes));
  for (std::size_t i = 1; i < f.size(); ++i) o.require(f[i] < f[i - 1], "not decreasing at mu=" + n(mus[i]));
  const double far = lsystem::f_mu({1, 1}, 0, 1e8, Branch::stieltjes);
  o.require(std::abs(far - 1) <= 1e-3, "f(1e8)=" + n(far));
  if (o.ok) o.detail = "f(2.1)=" + n(f.front()) + ", f(100)=" + n(f.back()) + ", f(1e8)=" + n(far);
  return o;
}

// Composite Simpson on u in [0, U] for (2/pi) / (1 + u^2), i.e. t = u^2.
double oracle_integral() {
  const double U = 1e4;
  const int N = 2'000'000;
  const double hh = U / N;
  auto g = [](double u) { return 2 / (std::numbers::pi * (1 + u * u)); };
  double s = g(0) + g(U);
  for (int k = 1; k < N; ++k) s += (k % 2 ? 4 : 2) * g(k * hh);
  return s * hh / 3 + 2 / (std::numbers::pi * U);  // analytic tail
}

Outcome criterion7() {
  Outcome o;
  const double oracle = oracle_integral();
  o.require(std::abs(oracle - 1) <= 1e-8, "oracle integral " + n(oracle));
  const auto v = lsystem::impedance_function(sys({1, 1}, kInf));
  const double lim = funclass::angle_from_measure(v);
  const double quad = funclass::angle_from_measure_quadrature(v);
  o.require(std::abs(lim - 1) <= 1e-8, "limit tan alpha " + n(lim));
  o.require(std::abs(quad - lim) <= 0.02 * lim, "quadrature " + n(quad));
  if (o.ok) o.detail = "oracle " + n(oracle) + ", limits " + n(lim) + ", inversion " + n(quad);
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 8);
  std::uniform_real_distribution<double> part(0.05, 3);
  const auto w = weyl::WeylFunction::closed_form_free();
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    const cplx h(part(rng), part(rng));
    const double mu0 = h.imag() * h.imag() / h.real() + h.real();  // m(-0) = 0
    const auto pts = funclass::sample_upper_half_plane(rng, 200);
    // Gap systems just past Re h violate the inverse inequality only at large
    // |z|, so the witness search for them reaches out to |z| = 1e6.
    std::uniform_real_distribution<double> wide_r(-3, 6), wide_a(0, std::numbers::pi);
    std::vector<cplx> wide = pts;
    for (int k = 0; k < 2000; ++k) wide.push_back(std::polar(std::pow(10.0, wide_r(rng)), wide_a(rng)));
    const std::vector<std::pair<double, Branch>> cases{
        {0.0, Branch::inverse},           {0.3 * h.real(), Branch::inverse}, {h.real(), Branch::inverse},
        {h.real() + 0.01 * (mu0 - h.real()), Branch::neither},
        {0.5 * (h.real() + mu0), Branch::neither},  {-0.5, Branch::neither},
        {mu0, Branch::stieltjes},         {mu0 * 1.5 + 2, Branch::stieltjes}, {kInf, Branch::stieltjes}};
    for (const auto& [mu, want] : cases) {
      const auto s = sys(h, mu, w);
      const Branch got = lsystem::classify_extension(s).branch;
      const std::string tag = "h=" + format_complex(h) + ",mu=" + n(mu);
      o.require(got == want, tag + " classified " + lsystem::to_string(got));
      const auto v = lsystem::impedance_function(s);
      const auto& sample = want == Branch::neither ? wide : pts;
      const bool st = funclass::stieltjes_check(v, sample, 1e-9, Variant::stieltjes).pass;
      const bool inv = funclass::stieltjes_check(v, sample, 1e-9, Variant::inverse_stieltjes).pass;
      o.require(st == (want == Branch::stieltjes), tag + " Stieltjes check " + (st ? "passes" : "fails"));
      o.require(inv == (want == Branch::inverse), tag + " inverse check " + (inv ? "passes" : "fails"));
      ++checked;
    }
  }
  if (o.ok) o.detail = std::to_string(checked) + " systems";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Example 1 reproduction", criterion1},     {"Example 2 reproduction", criterion2},
      {"Weyl oracle", criterion3},                {"Round trip V<->W", criterion4},
      {"Kernel positivity", criterion5},          {"Angle identities", criterion6},
      {"Measure/angle consistency", criterion7}, {"Classification table", criterion8}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.ok) ++failed;
    std::printf("criterion %zu (%s): %s - %s\n", i + 1, criteria[i].first, o.ok ? "PASS" : "FAIL", o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
