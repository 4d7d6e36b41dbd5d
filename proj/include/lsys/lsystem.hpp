#pragma once

// L-systems whose main operator is the Schrodinger operator T_h on [a, +inf)
// with boundary condition h y(a) - y'(a) = 0.  A system is fully described by
// the boundary parameter h (Im h > 0), the extension parameter mu (real or
// +inf) and the Weyl function m(z) of the potential.  Angles are carried as
// tangents throughout; +inf encodes alpha = pi/2.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lsys/funclass.hpp"
#include "lsys/numeric.hpp"
#include "lsys/weyl.hpp"

namespace lsys::lsystem {

/// h with Im h > 0 (dissipative T_h).
class BoundaryParameter {
 public:
  explicit BoundaryParameter(cplx h);
  cplx value() const noexcept { return h_; }
  double re() const noexcept { return h_.real(); }
  double im() const noexcept { return h_.imag(); }

 private:
  cplx h_;
};

/// mu: finite real or +inf.
class ExtensionParameter {
 public:
  explicit ExtensionParameter(double mu);
  static ExtensionParameter infinity() { return ExtensionParameter(kInf); }
  double value() const noexcept { return mu_; }
  bool is_infinite() const noexcept { return mu_ == kInf; }

 private:
  double mu_;
};

class SchrodingerLSystem {
 public:
  /// Throws ErrorCode::domain unless m(-0) is finite.
  SchrodingerLSystem(BoundaryParameter h, ExtensionParameter mu, weyl::WeylFunction weyl);

  const BoundaryParameter& h() const noexcept { return h_; }
  const ExtensionParameter& mu() const noexcept { return mu_; }
  const weyl::WeylFunction& weyl() const noexcept { return weyl_; }
  double m_neg_zero() const noexcept { return weyl_.m_neg_zero(); }

 private:
  BoundaryParameter h_;
  ExtensionParameter mu_;
  weyl::WeylFunction weyl_;
};

enum class Branch { stieltjes, inverse, neither };
const char* to_string(Branch b) noexcept;

/// Impedance V(z) = (m + mu) Im h / [(mu - Re h) m + mu Re h - |h|^2];
/// mu = +inf gives Im h / (m + Re h).
cplx impedance(const SchrodingerLSystem& sys, cplx z);
/// Same formula for a given value m = m(z).
cplx impedance_from_m(cplx h, double mu, cplx m);

/// Transfer W(z) = (mu - h)/(mu - conj h) * (m + conj h)/(m + h); prefactor 1 at mu = +inf.
cplx transfer(const SchrodingerLSystem& sys, cplx z);
cplx transfer_from_m(cplx h, double mu, cplx m);

/// V = i (W + 1)^-1 (W - 1).
cplx impedance_from_transfer(cplx w);

funclass::AnalyticFunction impedance_function(const SchrodingerLSystem& sys);

struct Classification {
  Branch branch = Branch::neither;
  bool degenerate = false;  // Re h = -m(-0): only mu = +inf is Stieltjes
};

/// Stieltjes iff mu >= mu0; inverse iff -m(-0) <= mu <= Re h.
/// Throws not_accretive when Re h < -m(-0).
Classification classify_extension(const SchrodingerLSystem& sys);
Classification classify_extension(cplx h, double m_neg_zero, double mu);

struct Mu0 {
  double value = kInf;
  bool accretive_not_sectorial_th = false;  // Re h + m(-0) = 0
};
Mu0 mu0_stieltjes(cplx h, double m_neg_zero);
double mu0_inverse(cplx h);

struct ThReport {
  bool accretive = false;
  bool sectorial = false;
  double theta_tan = kInf;  // meaningful when accretive
  bool exact = false;
};
ThReport t_h_report(cplx h, double m_neg_zero);

struct ClassAngles {
  double tan_a1 = 0.0;
  double tan_a2 = 0.0;
};

/// Closed-form class angles for a branch (throws class_error on `neither`).
ClassAngles class_angles_closed_form(cplx h, double m_neg_zero, double mu, Branch branch);

struct ClassAngleCheck {
  ClassAngles closed_form;
  ClassAngles from_limits;
  bool agree = false;
};

/// Compares the closed form against boundary limits of the impedance evaluator.
ClassAngleCheck cross_validate_class_angles(const SchrodingerLSystem& sys, double tol = 1e-6);

/// Closed-form angles; with `cross_validate` they must agree with the numeric
/// limits of the impedance within 1e-6 or ErrorCode::internal is thrown.
ClassAngles class_angles(const SchrodingerLSystem& sys, bool cross_validate = true);

struct AngleResult {
  double tan = kInf;
  bool flagged = false;  // alpha: "accretive, not sectorial"; beta: degenerate tanA1 = 0
};

/// tan(alpha) = tanA2 + 2 sqrt(tanA1 (tanA2 - tanA1)).
AngleResult alpha_from_class(double tan_a1, double tan_a2);
/// tan(beta) = tanA1 + 2 sqrt(tanA1 tanA2).
AngleResult universal_beta(double tan_a1, double tan_a2);

/// The sectoriality bound f(mu) along a branch of extensions:
///   Stieltjes: f = tanA2 + 2 sqrt(tanA1 tanA2)   (decreasing, tends to tan theta)
///   inverse:   f = tanA1 + 2 sqrt(tanA1 tanA2)
/// Returns +inf at mu = mu0.
double f_mu(cplx h, double m_neg_zero, double mu, Branch branch);

struct OperatorStatus {
  enum class Kind { alpha_sectorial, accretive_not_sectorial, not_accretive };
  Kind kind = Kind::not_accretive;
  double tan_alpha = kInf;
};

struct SectorReport {
  Branch branch = Branch::neither;
  bool branch_degenerate = false;
  std::optional<ClassAngles> angles;  // absent for `neither`
  std::optional<double> alpha_tan;    // alpha_from_class
  std::optional<AngleResult> beta;    // universal_beta
  ThReport th;
  Mu0 mu0_stieltjes;
  double mu0_inverse = 0.0;
  OperatorStatus state_operator;
  OperatorStatus associated_operator;
};

SectorReport full_report(const SchrodingerLSystem& sys, bool cross_validate = true);

struct MuScanRow {
  double mu = 0.0;
  Branch branch = Branch::neither;
  double tan_a1 = 0.0;
  double tan_a2 = 0.0;
  double f_mu = kInf;
  bool at_mu0 = false;
  bool sectorial = false;
  bool accretive_only = false;
};

enum class Monotonicity { decreasing, increasing, constant, mixed };
const char* to_string(Monotonicity m) noexcept;

struct ScanSummary {
  double mu_star = 0.0;
  double tan_beta = kInf;            // f(mu*)
  double tan_beta_universal = kInf;  // tanA1 + 2 sqrt(tanA1 tanA2) at mu*
  Monotonicity direction = Monotonicity::constant;
  bool bound_holds = false;          // f <= f(mu*) on the designated side
};

struct ScanResult {
  std::vector<MuScanRow> rows;
  ScanSummary summary;
};

/// Rows for the grid points inside the branch domain, sorted by mu.
/// mu_star defaults to the smallest (Stieltjes, or decreasing f) or largest
/// (increasing f) grid point with finite f.
ScanResult scan_mu(cplx h, const weyl::WeylFunction& weyl, Branch branch, std::span<const double> grid,
                   std::optional<double> mu_star = std::nullopt);

}  // namespace lsys::lsystem
