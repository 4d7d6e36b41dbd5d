#include "lsys/lsystem.hpp"

#include <algorithm>
#include <cmath>

#include "lsys/error.hpp"

namespace lsys::lsystem {

BoundaryParameter::BoundaryParameter(cplx h) : h_(h) {
  if (!std::isfinite(h.real()) || !std::isfinite(h.imag())) fail(ErrorCode::input, "h must be finite");
  if (!(h.imag() > 0)) fail(ErrorCode::domain, "h=" + format_complex(h) + " must satisfy Im h > 0");
}

ExtensionParameter::ExtensionParameter(double mu) : mu_(mu) {
  if (std::isnan(mu) || mu == -kInf) fail(ErrorCode::input, "mu must be a real number or +inf");
}

SchrodingerLSystem::SchrodingerLSystem(BoundaryParameter h, ExtensionParameter mu, weyl::WeylFunction weyl)
    : h_(h), mu_(mu), weyl_(std::move(weyl)) {
  if (!std::isfinite(weyl_.m_neg_zero()))
    fail(ErrorCode::domain, "m(-0) must be finite (got " + format_double(weyl_.m_neg_zero()) + ")");
}

const char* to_string(Branch b) noexcept {
  switch (b) {
    case Branch::stieltjes: return "stieltjes";
    case Branch::inverse: return "inverse_stieltjes";
    case Branch::neither: return "neither";
  }
  return "?";
}

const char* to_string(Monotonicity m) noexcept {
  switch (m) {
    case Monotonicity::decreasing: return "decreasing";
    case Monotonicity::increasing: return "increasing";
    case Monotonicity::constant: return "constant";
    case Monotonicity::mixed: return "mixed";
  }
  return "?";
}

// ---------------------------------------------------------------- V and W

cplx impedance_from_m(cplx h, double mu, cplx m) {
  const double re = h.real(), im = h.imag();
  if (mu == kInf) {
    const cplx den = m + re;
    if (std::abs(den) <= 1e-14 * (std::abs(m) + std::abs(re)))
      fail(ErrorCode::pole, "impedance pole: m + Re h = 0 (m=" + format_complex(m) + ")");
    return im / den;
  }
  const cplx num = (m + mu) * im;
  const cplx den = (mu - re) * m + mu * re - std::norm(h);
  const double scale = std::max(std::abs(mu - re) * std::abs(m) + std::abs(mu * re) + std::norm(h), std::abs(num));
  if (std::abs(den) <= 1e-14 * scale)
    fail(ErrorCode::pole, "impedance pole: vanishing denominator (m=" + format_complex(m) + ")");
  return num / den;
}

cplx transfer_from_m(cplx h, double mu, cplx m) {
  const cplx den = m + h;
  if (std::abs(den) <= 1e-14 * (std::abs(m) + std::abs(h)))
    fail(ErrorCode::pole, "transfer pole: m = -h (eigenvalue of T_h)");
  const cplx tail = (m + std::conj(h)) / den;
  if (mu == kInf) return tail;
  return (mu - h) / (mu - std::conj(h)) * tail;
}

cplx impedance(const SchrodingerLSystem& sys, cplx z) {
  return impedance_from_m(sys.h().value(), sys.mu().value(), sys.weyl()(z));
}

cplx transfer(const SchrodingerLSystem& sys, cplx z) {
  return transfer_from_m(sys.h().value(), sys.mu().value(), sys.weyl()(z));
}

cplx impedance_from_transfer(cplx w) {
  if (std::abs(w + 1.0) <= 1e-14 * std::max(1.0, std::abs(w)))
    fail(ErrorCode::domain, "impedance_from_transfer: W = -1 is singular");
  return cplx(0.0, 1.0) * (w - 1.0) / (w + 1.0);
}

funclass::AnalyticFunction impedance_function(const SchrodingerLSystem& sys) {
  return {[sys](cplx z) { return impedance(sys, z); },
          "V(z), h=" + format_complex(sys.h().value()) + ", mu=" + format_double(sys.mu().value())};
}

// ---------------------------------------------------------------- classification

Mu0 mu0_stieltjes(cplx h, double m_neg_zero) {
  const double d = m_neg_zero + h.real();
  if (d <= 0.0 || nearly_equal(h.real(), -m_neg_zero)) return {kInf, true};
  return {h.imag() * h.imag() / d + h.real(), false};
}

double mu0_inverse(cplx h) { return h.real(); }

ThReport t_h_report(cplx h, double m_neg_zero) {
  ThReport r;
  const bool boundary = nearly_equal(h.real(), -m_neg_zero);
  r.accretive = boundary || h.real() > -m_neg_zero;
  r.sectorial = r.accretive && !boundary;
  if (r.sectorial) {
    r.theta_tan = h.imag() / (h.real() + m_neg_zero);
    r.exact = true;
  }
  return r;
}

Classification classify_extension(cplx h, double m_neg_zero, double mu) {
  if (!std::isfinite(m_neg_zero)) fail(ErrorCode::domain, "m(-0) must be finite");
  if (!(h.imag() > 0)) fail(ErrorCode::domain, "Im h must be positive");
  if (!t_h_report(h, m_neg_zero).accretive)
    fail(ErrorCode::not_accretive, "T_h is not accretive: Re h = " + format_double(h.real()) + " < -m(-0) = " +
                                       format_double(-m_neg_zero));
  const Mu0 mu0 = mu0_stieltjes(h, m_neg_zero);
  if (mu == kInf) return {Branch::stieltjes, mu0.accretive_not_sectorial_th};
  if (!mu0.accretive_not_sectorial_th && (mu >= mu0.value || nearly_equal(mu, mu0.value)))
    return {Branch::stieltjes, false};
  const bool above_lower = mu >= -m_neg_zero || nearly_equal(mu, -m_neg_zero);
  const bool below_upper = mu <= h.real() || nearly_equal(mu, h.real());
  if (above_lower && below_upper) return {Branch::inverse, mu0.accretive_not_sectorial_th};
  return {Branch::neither, mu0.accretive_not_sectorial_th};
}

Classification classify_extension(const SchrodingerLSystem& sys) {
  return classify_extension(sys.h().value(), sys.m_neg_zero(), sys.mu().value());
}

ClassAngles class_angles_closed_form(cplx h, double m_neg_zero, double mu, Branch branch) {
  const double re = h.real(), im = h.imag(), m0 = m_neg_zero;
  ClassAngles a;
  switch (branch) {
    case Branch::stieltjes: {
      if (mu == kInf) {
        a.tan_a1 = 0.0;
        a.tan_a2 = nearly_equal(re, -m0) ? kInf : im / (m0 + re);
        break;
      }
      const Mu0 mu0 = mu0_stieltjes(h, m0);
      a.tan_a1 = im / (mu - re);
      if (nearly_equal(mu, mu0.value))
        a.tan_a2 = kInf;
      else
        a.tan_a2 = (m0 + mu) * im / ((mu - re) * (m0 + re) - im * im);
      break;
    }
    case Branch::inverse: {
      const double d = (mu - re) * (m0 + re) - im * im;
      a.tan_a1 = nearly_equal(mu, -m0) ? 0.0 : -(m0 + mu) * im / d;
      a.tan_a2 = nearly_equal(mu, re) ? kInf : im / (re - mu);
      break;
    }
    case Branch::neither:
      fail(ErrorCode::class_error, "class angles are undefined outside the Stieltjes and inverse Stieltjes branches");
  }
  a.tan_a1 = std::max(a.tan_a1, 0.0);
  a.tan_a2 = std::max(a.tan_a2, 0.0);
  return a;
}

namespace {

bool tangents_agree(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
}

}  // namespace

ClassAngleCheck cross_validate_class_angles(const SchrodingerLSystem& sys, double tol) {
  const Classification c = classify_extension(sys);
  ClassAngleCheck chk;
  chk.closed_form = class_angles_closed_form(sys.h().value(), sys.m_neg_zero(), sys.mu().value(), c.branch);
  const auto v = impedance_function(sys);
  funclass::LimitSettings ls;
  ls.tol = sys.weyl().source() == weyl::Source::numeric ? 1e-7 : 1e-9;
  const double at_zero = funclass::limit_neg_zero(v, ls);
  const double at_inf = funclass::limit_neg_infinity(v, ls);
  if (c.branch == Branch::stieltjes) {
    chk.from_limits = {at_inf, at_zero};
  } else {
    chk.from_limits = {-at_zero, -at_inf};
  }
  chk.agree = tangents_agree(chk.closed_form.tan_a1, chk.from_limits.tan_a1, tol) &&
              tangents_agree(chk.closed_form.tan_a2, chk.from_limits.tan_a2, tol);
  return chk;
}

ClassAngles class_angles(const SchrodingerLSystem& sys, bool cross_validate) {
  const Classification c = classify_extension(sys);
  if (c.branch == Branch::neither)
    fail(ErrorCode::class_error, "class_angles: the system is on neither branch");
  if (!cross_validate) return class_angles_closed_form(sys.h().value(), sys.m_neg_zero(), sys.mu().value(), c.branch);
  const ClassAngleCheck chk = cross_validate_class_angles(sys);
  if (!chk.agree)
    fail(ErrorCode::internal, "class angles disagree: closed form (" + format_double(chk.closed_form.tan_a1) + ", " +
                                  format_double(chk.closed_form.tan_a2) + ") vs limits (" +
                                  format_double(chk.from_limits.tan_a1) + ", " + format_double(chk.from_limits.tan_a2) +
                                  ")");
  return chk.closed_form;
}

// ---------------------------------------------------------------- angles

AngleResult alpha_from_class(double tan_a1, double tan_a2) {
  if (std::isnan(tan_a1) || std::isnan(tan_a2) || tan_a1 < 0.0)
    fail(ErrorCode::domain, "alpha_from_class: tangents must be nonnegative");
  if (tan_a2 == kInf) return {kInf, true};
  if (tan_a1 > tan_a2 && !nearly_equal(tan_a1, tan_a2))
    fail(ErrorCode::domain, "alpha_from_class: requires tanA1 <= tanA2");
  const double gap = std::max(tan_a2 - tan_a1, 0.0);
  return {tan_a2 + 2.0 * std::sqrt(tan_a1 * gap), false};
}

AngleResult universal_beta(double tan_a1, double tan_a2) {
  if (std::isnan(tan_a1) || std::isnan(tan_a2) || tan_a1 < 0.0 || tan_a2 < 0.0)
    fail(ErrorCode::domain, "universal_beta: tangents must be nonnegative");
  if (tan_a1 == 0.0) return {0.0, true};
  if (tan_a2 == kInf) return {kInf, false};
  return {tan_a1 + 2.0 * std::sqrt(tan_a1 * tan_a2), false};
}

double f_mu(cplx h, double m_neg_zero, double mu, Branch branch) {
  const Classification c = classify_extension(h, m_neg_zero, mu);
  if (branch == Branch::neither || c.branch != branch)
    fail(ErrorCode::domain, "f_mu: mu=" + format_double(mu) + " is outside the " + to_string(branch) + " domain");
  const ClassAngles a = class_angles_closed_form(h, m_neg_zero, mu, branch);
  if (a.tan_a2 == kInf) return kInf;
  const double cross = 2.0 * std::sqrt(a.tan_a1 * a.tan_a2);
  return (branch == Branch::stieltjes ? a.tan_a2 : a.tan_a1) + cross;
}

// ---------------------------------------------------------------- report

namespace {

OperatorStatus status_from_alpha(double alpha_tan) {
  if (std::isinf(alpha_tan)) return {OperatorStatus::Kind::accretive_not_sectorial, kInf};
  return {OperatorStatus::Kind::alpha_sectorial, alpha_tan};
}

}  // namespace

SectorReport full_report(const SchrodingerLSystem& sys, bool cross_validate) {
  const cplx h = sys.h().value();
  const double m0 = sys.m_neg_zero();
  const double mu = sys.mu().value();
  SectorReport r;
  r.th = t_h_report(h, m0);
  const Classification c = classify_extension(sys);  // throws when T_h is not accretive
  r.branch = c.branch;
  r.branch_degenerate = c.degenerate;
  r.mu0_stieltjes = mu0_stieltjes(h, m0);
  r.mu0_inverse = mu0_inverse(h);
  if (c.branch == Branch::neither) return r;

  const ClassAngles a = class_angles(sys, cross_validate);
  r.angles = a;
  r.alpha_tan = alpha_from_class(a.tan_a1, a.tan_a2).tan;
  r.beta = universal_beta(a.tan_a1, a.tan_a2);

  OperatorStatus status;
  if (c.branch == Branch::stieltjes) {
    if (mu == kInf && r.th.sectorial)
      status = {OperatorStatus::Kind::alpha_sectorial, r.th.theta_tan};
    else if (!r.mu0_stieltjes.accretive_not_sectorial_th && nearly_equal(mu, r.mu0_stieltjes.value))
      status = {OperatorStatus::Kind::accretive_not_sectorial, kInf};
    else
      status = status_from_alpha(*r.alpha_tan);
    r.state_operator = status;
  } else {
    if (nearly_equal(mu, -m0) && r.th.sectorial)
      status = {OperatorStatus::Kind::alpha_sectorial, r.th.theta_tan};
    else if (nearly_equal(mu, h.real()))
      status = {OperatorStatus::Kind::accretive_not_sectorial, kInf};
    else
      status = status_from_alpha(*r.alpha_tan);
    r.associated_operator = status;
  }
  return r;
}

// ---------------------------------------------------------------- scan

ScanResult scan_mu(cplx h, const weyl::WeylFunction& weyl, Branch branch, std::span<const double> grid,
                   std::optional<double> mu_star) {
  if (grid.empty()) fail(ErrorCode::input, "scan_mu: empty grid");
  if (branch == Branch::neither) fail(ErrorCode::input, "scan_mu: branch must be stieltjes or inverse");
  const double m0 = weyl.m_neg_zero();
  if (!std::isfinite(m0)) fail(ErrorCode::domain, "scan_mu: m(-0) must be finite");
  BoundaryParameter hp(h);
  const double mu0 = branch == Branch::stieltjes ? mu0_stieltjes(h, m0).value : mu0_inverse(h);

  std::vector<double> mus(grid.begin(), grid.end());
  std::sort(mus.begin(), mus.end());
  mus.erase(std::unique(mus.begin(), mus.end()), mus.end());

  ScanResult res;
  for (double mu : mus) {
    if (std::isnan(mu)) fail(ErrorCode::input, "scan_mu: NaN in grid");
    if (classify_extension(h, m0, mu).branch != branch) continue;
    MuScanRow row;
    row.mu = mu;
    row.branch = branch;
    const ClassAngles a = class_angles_closed_form(h, m0, mu, branch);
    row.tan_a1 = a.tan_a1;
    row.tan_a2 = a.tan_a2;
    row.f_mu = f_mu(h, m0, mu, branch);
    row.at_mu0 = nearly_equal(mu, mu0);
    row.accretive_only = row.at_mu0;
    row.sectorial = !row.at_mu0 && std::isfinite(alpha_from_class(a.tan_a1, a.tan_a2).tan);
    res.rows.push_back(row);
  }
  if (res.rows.empty())
    fail(ErrorCode::input, std::string("scan_mu: grid does not intersect the ") + to_string(branch) + " domain");

  std::vector<const MuScanRow*> finite;
  for (const auto& r : res.rows)
    if (std::isfinite(r.f_mu)) finite.push_back(&r);
  ScanSummary& s = res.summary;
  if (finite.size() >= 2) {
    bool dec = true, inc = true, flat = true;
    for (std::size_t i = 1; i < finite.size(); ++i) {
      const double d = finite[i]->f_mu - finite[i - 1]->f_mu;
      dec = dec && d < 0;
      inc = inc && d > 0;
      flat = flat && d == 0;
    }
    s.direction = dec ? Monotonicity::decreasing : inc ? Monotonicity::increasing
                                           : flat ? Monotonicity::constant
                                                  : Monotonicity::mixed;
  }
  const bool lower_side = s.direction == Monotonicity::increasing ||
                          (s.direction == Monotonicity::mixed && branch == Branch::inverse);

  if (mu_star) {
    s.mu_star = *mu_star;
  } else {
    if (finite.empty()) fail(ErrorCode::domain, "scan_mu: no grid point with finite f(mu) to designate as mu*");
    s.mu_star = lower_side ? finite.back()->mu : finite.front()->mu;
  }
  s.tan_beta = f_mu(h, m0, s.mu_star, branch);
  if (!std::isfinite(s.tan_beta)) fail(ErrorCode::domain, "scan_mu: f(mu*) is infinite at mu*=" + format_double(s.mu_star));
  const ClassAngles star = class_angles_closed_form(h, m0, s.mu_star, branch);
  s.tan_beta_universal = universal_beta(star.tan_a1, star.tan_a2).tan;
  s.bound_holds = true;
  for (const auto* r : finite) {
    const bool on_side = lower_side ? r->mu <= s.mu_star : r->mu >= s.mu_star;
    if (on_side && r->f_mu > s.tan_beta * (1.0 + 1e-12)) s.bound_holds = false;
  }
  return res;
}

}  // namespace lsys::lsystem
