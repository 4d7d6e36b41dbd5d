#pragma once

// Numerical analysis of scalar Herglotz-Nevanlinna functions: class
// membership tests on samples, sector-kernel positivity, boundary limits
// along the negative real axis and recovery of the representing measure.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lsys/hermitian_eigen.hpp"
#include "lsys/numeric.hpp"

namespace lsys::funclass {

/// A scalar function evaluated off the cut [0, +inf).  Evaluators must be
/// deterministic and safe to call concurrently.
struct AnalyticFunction {
  std::function<cplx(cplx)> evaluator;
  std::string description;

  /// Evaluates, re-raising any lsys::Error with the offending point attached.
  cplx operator()(cplx z) const;
};

enum class Variant { stieltjes, inverse_stieltjes };

struct CheckResult {
  bool pass = true;
  std::optional<cplx> witness;  // first violating sample
  double worst = kInf;          // smallest tested quantity
};

/// Im f(z) >= -tol at every sample (all samples in the open upper half-plane).
CheckResult herglotz_check(const AnalyticFunction& f, std::span<const cplx> samples, double tol);

/// Stieltjes: Im[z f(z)] / Im z >= -tol.  Inverse Stieltjes: Im[f(z)/z] / Im z >= -tol.
CheckResult stieltjes_check(const AnalyticFunction& f, std::span<const cplx> samples, double tol,
                            Variant variant);

/// Seeded sampling in the upper half-plane: modulus log-uniform on
/// [1e-3, 1e3], argument uniform on (0, pi).
std::vector<cplx> sample_upper_half_plane(std::mt19937_64& rng, std::size_t count);

struct SectorKernel {
  std::vector<cplx> points;
  double alpha_tan = kInf;  // +inf encodes alpha = pi/2
  Variant variant = Variant::stieltjes;
  ComplexMatrix matrix;
  double symmetrization_defect = 0.0;  // before the Hermitian projection
};

/// Builds the sector kernel
///   K(k,l) = [z_k F(z_k) - conj(z_l F(z_l))] / (z_k - conj z_l) - cot(alpha) conj(F(z_l)) F(z_k)
/// with F = f for the Stieltjes variant, and
///   K(k,l) = [G(z_k) - conj G(z_l)] / (z_k - conj z_l) - cot(alpha) conj(G(z_l)) G(z_k)
/// with G = f(z)/z for the inverse Stieltjes variant.
SectorKernel build_sector_kernel(const AnalyticFunction& f, std::span<const cplx> points,
                                 double alpha_tan, Variant variant);

struct PsdResult {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

PsdResult is_psd(const SectorKernel& kernel, double tol = 1e-8);
PsdResult is_psd(const ComplexMatrix& matrix, double tol = 1e-8);

struct SamplingPlan {
  std::uint64_t seed = 20041216;
  std::size_t trials = 200;
  std::size_t points_per_trial = 4;  // capped at 8
};

struct SectorAngleEstimate {
  double tan_alpha = kInf;  // estimated; a lower bound on the true minimal tan(alpha)
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  bool estimated = true;
};

/// Smallest tan(alpha) for which every sampled kernel is PSD within tol,
/// found by bisection on cot(alpha) to a relative resolution of 1e-3.
SectorAngleEstimate min_sector_angle(const AnalyticFunction& f, Variant variant,
                                     const SamplingPlan& plan, double tol = 1e-8);

struct LimitSettings {
  double scale = 1.0;     // s in x_n = -s * 4^(-+n)
  int last_index = 20;    // n = 0..last_index
  double tol = 1e-8;      // accepted extrapolation error (relative above magnitude 1)
  double divergence_threshold = 1e12;
};

/// lim f(x) as x -> -0, sampled on x_n = -s 4^-n.  Returns +-inf on divergence.
double limit_neg_zero(const AnalyticFunction& f, const LimitSettings& settings = {});
/// lim f(x) as x -> -inf, sampled on x_n = -s 4^n.  Returns +-inf on divergence.
double limit_neg_infinity(const AnalyticFunction& f, const LimitSettings& settings = {});

/// Extrapolates an already sampled sequence f(x_n), x_n = -s 4^(-+n).
double limit_from_samples(std::span<const double> values, const LimitSettings& settings);

struct InversionSettings {
  std::vector<double> epsilon_ladder{1e-3, 5e-4, 2.5e-4, 1.25e-4};
  int nodes_per_panel = 16;
  double quadrature_tol = 1e-11;
  double tol = 1e-6;  // accepted extrapolation error in epsilon
};

/// Mass of the representing measure on [t1, t2] by Stieltjes-Perron
/// inversion, extrapolated to epsilon -> 0.  Atoms at t1 or t2 are not
/// resolved; choose the endpoints off atoms.
double stieltjes_inversion_slice(const AnalyticFunction& f, double t1, double t2,
                                 const InversionSettings& settings = {});

/// Same as the slice but integrating (1/pi) Im f(t + i eps) * weight(t).
double stieltjes_inversion_moment(const AnalyticFunction& f, double t1, double t2,
                                  const std::function<double(double)>& weight,
                                  const InversionSettings& settings = {});

/// tan(alpha) = integral dG(t)/t computed as f(-0) - f(-inf).
double angle_from_measure(const AnalyticFunction& f, double tol = 1e-8);

/// Independent route for integral dG(t)/t: inversion quadrature over
/// log-spaced panels on [t_min, t_max].
double angle_from_measure_quadrature(const AnalyticFunction& f, double t_min = 1e-7,
                                     double t_max = 1e7);

/// Composite Gauss-Legendre integration of g on [a, b] with adaptive panel
/// bisection; `nodes` points per panel.
double integrate_gauss_legendre(const std::function<double(double)>& g, double a, double b,
                                int nodes = 16, double tol = 1e-11);

}  // namespace lsys::funclass
