#pragma once

#include <complex>
#include <limits>
#include <span>
#include <string>

namespace lsys {

using cplx = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Square root with the branch cut on [0, +inf) and Im sqrt(z) >= 0.
///
/// On the cut the sign of the imaginary zero selects the lip: t + 0i maps to
/// +sqrt(t), t - 0i to -sqrt(t).  This is the branch under which the free
/// Weyl function is m(z) = -i sqrt(z).
cplx sqrt_upper(cplx z) noexcept;

/// Relative equality used for the closed boundaries (mu = mu0 and friends).
bool nearly_equal(double a, double b, double rel = 1e-12) noexcept;

std::string format_double(double x);
std::string format_complex(cplx z);

/// Result of extrapolating a sequence to its limit.
struct Extrapolation {
  double value = 0.0;
  double error = 0.0;
};

/// Richardson extrapolation of samples f(h_n) taken on h_n = h_0 / 2^n towards
/// h = 0, eliminating the O(h) and O(h^2) terms.  Needs at least 4 samples.
/// The returned error is the difference between the last two fully
/// eliminated entries.
Extrapolation richardson_halving(std::span<const double> values);

/// Polynomial (Neville) extrapolation to x = 0 through the given nodes; the
/// error is the change contributed by the highest-degree node.
Extrapolation neville_to_zero(std::span<const double> xs, std::span<const double> values);

}  // namespace lsys
