#include "lsys/verify.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "lsys/error.hpp"
#include "lsys/funclass.hpp"
#include "lsys/lsystem.hpp"
#include "lsys/weyl.hpp"

namespace lsys::verify {

namespace {

using funclass::Variant;
using lsystem::Branch;
using lsystem::BoundaryParameter;
using lsystem::ExtensionParameter;
using lsystem::OperatorStatus;
using lsystem::SchrodingerLSystem;

// sqrt with Im >= 0, computed without the library's branch helper.
cplx oracle_sqrt(cplx z) {
  cplx s = std::sqrt(z);
  if (s.imag() < 0 || (s.imag() == 0 && s.real() < 0)) s = -s;
  return s;
}

double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::max(1e-300, std::abs(want)); }

class Recorder {
 public:
  void check(bool ok, const std::string& what) {
    if (ok) return;
    passed_ = false;
    if (++failed_ <= 3) {
      if (!failures_.empty()) failures_ += "; ";
      failures_ += what;
    }
  }
  void note(const std::string& s) {
    if (!notes_.empty()) notes_ += "; ";
    notes_ += s;
  }
  CriterionResult finish(int id) const {
    std::string detail = passed_ ? notes_ : failures_;
    if (failed_ > 3) detail += "; ... " + std::to_string(failed_ - 3) + " more failed checks";
    return {id, criterion_name(id), passed_, detail};
  }

 private:
  bool passed_ = true;
  int failed_ = 0;
  std::string failures_, notes_;
};

std::string num(double x) { return format_double(x); }

std::vector<cplx> points_off_cut(std::mt19937_64& rng, std::size_t n) {
  auto pts = funclass::sample_upper_half_plane(rng, n);
  for (std::size_t i = 1; i < pts.size(); i += 2) pts[i] = std::conj(pts[i]);
  return pts;
}

bool close(double got, double want, double tol) {
  if (std::isinf(want)) return got == want;
  return std::abs(got - want) <= tol;
}

CriterionResult example_one(std::uint64_t seed) {
  Recorder rec;
  const SchrodingerLSystem sys(BoundaryParameter({0.5, 0.5}), ExtensionParameter(1.0),
                               weyl::WeylFunction::closed_form_free());
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (cplx z : points_off_cut(rng, 20))
    worst = std::max(worst, rel_err(lsystem::impedance(sys, z), 1.0 + cplx(0, 1) / oracle_sqrt(z)));
  rec.check(worst <= 1e-10, "impedance vs 1+i/sqrt(z): rel err " + num(worst) + " > 1e-10");
  rec.note("max rel err " + num(worst));

  const auto r = lsystem::full_report(sys);
  rec.check(r.branch == Branch::stieltjes, std::string("class ") + lsystem::to_string(r.branch) + " != stieltjes");
  if (r.angles) {
    rec.check(close(r.angles->tan_a1, 1.0, 1e-8), "tan a1 " + num(r.angles->tan_a1) + " != 1");
    rec.check(r.angles->tan_a2 == kInf, "tan a2 " + num(r.angles->tan_a2) + " != inf");
  }
  rec.check(close(r.mu0_stieltjes.value, 1.0, 1e-12), "mu0 " + num(r.mu0_stieltjes.value) + " != 1");
  rec.check(r.state_operator.kind == OperatorStatus::Kind::accretive_not_sectorial,
            "state operator is not accretive_not_sectorial");
  rec.check(r.th.sectorial && r.th.exact && close(r.th.theta_tan, 1.0, 1e-10),
            "tan theta " + num(r.th.theta_tan) + " != 1 (exact)");
  return rec.finish(1);
}

CriterionResult example_two(std::uint64_t seed) {
  Recorder rec;
  const SchrodingerLSystem sys(BoundaryParameter({1.0, 1.0}), ExtensionParameter(0.0),
                               weyl::WeylFunction::closed_form_free());
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (cplx z : points_off_cut(rng, 20)) {
    const cplx s = oracle_sqrt(z);
    worst = std::max(worst, rel_err(lsystem::impedance(sys, z), -s / (s + cplx(0, 2))));
  }
  rec.check(worst <= 1e-10, "impedance vs -sqrt(z)/(sqrt(z)+2i): rel err " + num(worst) + " > 1e-10");
  rec.note("max rel err " + num(worst));

  const auto r = lsystem::full_report(sys);
  rec.check(r.branch == Branch::inverse, std::string("class ") + lsystem::to_string(r.branch) + " != inverse_stieltjes");
  if (r.angles) {
    rec.check(close(r.angles->tan_a1, 0.0, 1e-8), "tan a1 " + num(r.angles->tan_a1) + " != 0");
    rec.check(close(r.angles->tan_a2, 1.0, 1e-8), "tan a2 " + num(r.angles->tan_a2) + " != 1");
  }
  rec.check(r.th.sectorial && r.th.exact && close(r.th.theta_tan, 1.0, 1e-10),
            "tan theta " + num(r.th.theta_tan) + " != 1 (exact)");
  rec.check(r.associated_operator.kind == OperatorStatus::Kind::alpha_sectorial &&
                close(r.associated_operator.tan_alpha, 1.0, 1e-10),
            "associated operator not alpha-sectorial with tan alpha = 1");
  return rec.finish(2);
}

CriterionResult weyl_oracle(std::uint64_t) {
  Recorder rec;
  const cplx lambdas[] = {{0, 1}, {1, 1}, {-1, 0}, {-4, 0}, {2, 3}, {-0.01, 0}};
  const auto free_p = weyl::Potential::free();
  const auto const_p = weyl::Potential::constant(2.0);
  double worst = 0.0, slowest = 0.0;
  auto timed = [&](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    const cplx v = fn();
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return v;
  };
  for (cplx lam : lambdas) {
    const cplx want_free = cplx(0, -1) * oracle_sqrt(lam);
    const cplx got_free = timed([&] { return weyl::weyl_m(free_p, lam); });
    const double e1 = rel_err(got_free, want_free);
    rec.check(e1 <= 1e-6, "free m(" + format_complex(lam) + ")=" + format_complex(got_free) + " expected " +
                              format_complex(want_free));
    const cplx want_c = cplx(0, -1) * oracle_sqrt(lam - 2.0);
    const cplx got_c = timed([&] { return weyl::weyl_m(const_p, lam); });
    const double e2 = rel_err(got_c, want_c);
    rec.check(e2 <= 1e-6, "const:2 m(" + format_complex(lam) + ")=" + format_complex(got_c) + " expected " +
                              format_complex(want_c));
    worst = std::max({worst, e1, e2});
  }
  const double m0_free = weyl::weyl_m_neg_zero(free_p);
  const double m0_const = weyl::weyl_m_neg_zero(const_p);
  rec.check(close(m0_free, 0.0, 1e-6), "m_free(-0)=" + num(m0_free) + " expected 0");
  rec.check(close(m0_const, std::sqrt(2.0), 1e-6), "m_const2(-0)=" + num(m0_const) + " expected sqrt 2");
  rec.check(slowest < 1.0, "slowest point took " + num(slowest) + " s");
  rec.note("max rel err " + num(worst) + ", each point under 1 s");
  return rec.finish(3);
}

CriterionResult round_trip(std::uint64_t seed) {
  Recorder rec;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re_h(-2.0, 2.0), im_h(0.05, 3.0), mu_d(-5.0, 5.0), u(0.0, 1.0);
  const auto m = weyl::WeylFunction::closed_form_free();
  double worst = 0.0;
  int done = 0;
  while (done < 200) {
    const cplx h(re_h(rng), im_h(rng));
    const double mu = u(rng) < 0.1 ? kInf : mu_d(rng);
    cplx z = funclass::sample_upper_half_plane(rng, 1).front();
    if (u(rng) < 0.5) z = std::conj(z);
    try {
      const cplx mz = m(z);
      const cplx v = lsystem::impedance_from_m(h, mu, mz);
      const cplx v_rt = lsystem::impedance_from_transfer(lsystem::transfer_from_m(h, mu, mz));
      worst = std::max(worst, std::abs(v_rt - v) / std::max(1e-300, std::abs(v)));
      ++done;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::pole && e.code() != ErrorCode::domain) throw;
    }
  }
  rec.check(worst <= 1e-10, "max rel err " + num(worst) + " > 1e-10");
  rec.note("200 triples, max rel err " + num(worst));
  return rec.finish(4);
}

CriterionResult kernel_positivity(std::uint64_t seed) {
  Recorder rec;
  const auto free_m = weyl::WeylFunction::closed_form_free();
  const SchrodingerLSystem inf_sys(BoundaryParameter({1.0, 1.0}), ExtensionParameter::infinity(), free_m);
  const SchrodingerLSystem ex1(BoundaryParameter({0.5, 0.5}), ExtensionParameter(1.0), free_m);
  const auto v_inf = lsystem::impedance_function(inf_sys);
  const auto v_ex1 = lsystem::impedance_function(ex1);

  std::mt19937_64 rng(seed);
  double min_at_quarter = kInf;
  for (int t = 0; t < 50; ++t) {
    const auto pts = funclass::sample_upper_half_plane(rng, 4);
    const auto k = funclass::build_sector_kernel(v_inf, pts, 1.0, Variant::stieltjes);
    min_at_quarter = std::min(min_at_quarter, funclass::is_psd(k).min_eigenvalue);
  }
  rec.check(min_at_quarter >= -1e-8, "alpha=pi/4: min eigenvalue " + num(min_at_quarter) + " < -1e-8");

  auto find_violation = [&](const funclass::AnalyticFunction& f, double alpha_tan, int& trials) {
    for (trials = 1; trials <= 200; ++trials) {
      const auto pts = funclass::sample_upper_half_plane(rng, 4);
      const auto k = funclass::build_sector_kernel(f, pts, alpha_tan, Variant::stieltjes);
      if (funclass::is_psd(k).min_eigenvalue < -1e-6) return true;
    }
    return false;
  };
  int trials_sixth = 0, trials_ex1 = 0;
  rec.check(find_violation(v_inf, std::tan(std::numbers::pi / 6), trials_sixth), "alpha=pi/6: no violation in 200 trials");
  rec.check(find_violation(v_ex1, std::tan(std::numbers::pi / 3), trials_ex1),
            "Example 1 at alpha=pi/3: no violation in 200 trials");

  const auto est = funclass::min_sector_angle(v_inf, Variant::stieltjes, {seed, 200, 4});
  const double deg = std::atan(est.tan_alpha) * 180.0 / std::numbers::pi;
  rec.check(std::abs(deg - 45.0) <= 2.0, "estimated angle " + num(deg) + " deg not within 2 deg of 45");
  rec.note("seed " + std::to_string(seed) + ", min eig at pi/4 " + num(min_at_quarter) + ", estimated angle " +
           num(deg) + " deg (estimated)");
  return rec.finish(5);
}

CriterionResult angle_identities(std::uint64_t) {
  Recorder rec;
  for (double t : {0.0, 1e-6, 0.1, 0.5, 1.0, 2.0, 10.0, 1e3, 1e9})
    rec.check(lsystem::alpha_from_class(0.0, t).tan == t, "alpha_from_class(0," + num(t) + ") != " + num(t));
  const cplx h(1.0, 1.0);
  double prev = kInf;
  for (double mu : {2.1, 2.5, 3.0, 5.0, 10.0, 100.0}) {
    const double f = lsystem::f_mu(h, 0.0, mu, Branch::stieltjes);
    rec.check(f < prev, "f_mu not strictly decreasing at mu=" + num(mu));
    prev = f;
  }
  const double far = lsystem::f_mu(h, 0.0, 1e8, Branch::stieltjes);
  rec.check(std::abs(far - 1.0) <= 1e-3, "f(1e8)=" + num(far) + " not within 1e-3 of tan theta = 1");
  rec.note("f(1e8)=" + num(far));
  return rec.finish(6);
}

CriterionResult measure_consistency(std::uint64_t) {
  Recorder rec;
  const SchrodingerLSystem sys(BoundaryParameter({1.0, 1.0}), ExtensionParameter::infinity(),
                               weyl::WeylFunction::closed_form_free());
  const auto v = lsystem::impedance_function(sys);
  const double by_limits = funclass::angle_from_measure(v);
  const double by_quadrature = funclass::angle_from_measure_quadrature(v);
  const double rel = std::abs(by_quadrature - by_limits) / std::abs(by_limits);
  rec.check(std::abs(by_limits - 1.0) <= 1e-8, "limit-based tan alpha " + num(by_limits) + " != 1");
  rec.check(rel <= 0.02, "inversion " + num(by_quadrature) + " vs limits " + num(by_limits) + " differ by " + num(rel));
  rec.note("limits " + num(by_limits) + ", inversion " + num(by_quadrature));
  return rec.finish(7);
}

CriterionResult classification_table(std::uint64_t seed) {
  Recorder rec;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> part(0.05, 3.0);
  const auto m = weyl::WeylFunction::closed_form_free();
  const double m0 = m.m_neg_zero();
  int systems = 0;
  for (int i = 0; i < 20; ++i) {
    const cplx h(part(rng), part(rng));
    const double mu0 = lsystem::mu0_stieltjes(h, m0).value;
    const std::pair<double, Branch> cases[] = {
        {-m0, Branch::inverse},           {0.5 * (h.real() - m0), Branch::inverse},
        {h.real(), Branch::inverse},      {0.5 * (h.real() + mu0), Branch::neither},
        {-m0 - 1.0, Branch::neither},     {mu0, Branch::stieltjes},
        {2.0 * mu0 + 1.0, Branch::stieltjes}, {kInf, Branch::stieltjes}};
    const auto samples = funclass::sample_upper_half_plane(rng, 400);
    for (const auto& [mu, expected] : cases) {
      const SchrodingerLSystem sys(BoundaryParameter(h), ExtensionParameter(mu), m);
      const Branch got = lsystem::classify_extension(sys).branch;
      const std::string tag = "h=" + format_complex(h) + " mu=" + num(mu);
      rec.check(got == expected, tag + ": classified " + lsystem::to_string(got));
      const auto v = lsystem::impedance_function(sys);
      const bool s_ok = funclass::stieltjes_check(v, samples, 1e-9, Variant::stieltjes).pass;
      const bool i_ok = funclass::stieltjes_check(v, samples, 1e-9, Variant::inverse_stieltjes).pass;
      if (expected == Branch::stieltjes) rec.check(s_ok, tag + ": Stieltjes inequality violated");
      if (expected == Branch::inverse) rec.check(i_ok, tag + ": inverse Stieltjes inequality violated");
      if (expected == Branch::neither) rec.check(!s_ok && !i_ok, tag + ": gap system passes a class check");
      ++systems;
    }
  }
  rec.note(std::to_string(systems) + " systems over 20 h values");
  return rec.finish(8);
}

}  // namespace

const char* criterion_name(int id) {
  switch (id) {
    case 1: return "Example 1 reproduction";
    case 2: return "Example 2 reproduction";
    case 3: return "Weyl oracle";
    case 4: return "Round trip V<->W";
    case 5: return "Kernel positivity";
    case 6: return "Angle identities";
    case 7: return "Measure/angle consistency";
    case 8: return "Classification table";
  }
  return "unknown";
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  try {
    switch (id) {
      case 1: return example_one(seed);
      case 2: return example_two(seed);
      case 3: return weyl_oracle(seed);
      case 4: return round_trip(seed);
      case 5: return kernel_positivity(seed);
      case 6: return angle_identities(seed);
      case 7: return measure_consistency(seed);
      case 8: return classification_table(seed);
    }
  } catch (const std::exception& e) {
    return {id, criterion_name(id), false, std::string("error: ") + e.what()};
  }
  fail(ErrorCode::input, "unknown criterion " + std::to_string(id));
}

std::vector<CriterionResult> run(const Options& options) {
  std::vector<CriterionResult> out;
  if (options.only) {
    out.push_back(run_criterion(*options.only, options.seed));
    return out;
  }
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, options.seed));
  return out;
}

}  // namespace lsys::verify
