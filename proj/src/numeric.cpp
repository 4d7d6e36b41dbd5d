#include "lsys/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "lsys/error.hpp"

namespace lsys {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::input: return "input";
    case ErrorCode::domain: return "domain";
    case ErrorCode::evaluation: return "evaluation";
    case ErrorCode::integration: return "integration";
    case ErrorCode::convergence: return "convergence";
    case ErrorCode::pole: return "pole";
    case ErrorCode::class_error: return "class";
    case ErrorCode::not_accretive: return "not_accretive";
    case ErrorCode::no_limit: return "no_limit";
    case ErrorCode::accuracy: return "accuracy";
    case ErrorCode::io: return "io";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

cplx sqrt_upper(cplx z) noexcept {
  // i * sqrt(-z) moves the principal cut from (-inf, 0] onto [0, +inf).
  cplx s = cplx(0.0, 1.0) * std::sqrt(-z);
#ifdef LSYS_FLIP_SQRT_BRANCH
  s = -s;
#endif
  return s;
}

bool nearly_equal(double a, double b, double rel) noexcept {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(cplx z) {
  std::string im = format_double(z.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_double(z.real()) + im + "i";
}

Extrapolation richardson_halving(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 4) fail(ErrorCode::input, "richardson_halving needs at least 4 samples");
  // Columns: 0 raw, 1 O(h) removed, 2 O(h^2) removed.
  std::vector<double> c0(values.begin(), values.end());
  std::vector<double> c1(n), c2(n);
  for (std::size_t i = 1; i < n; ++i) c1[i] = 2.0 * c0[i] - c0[i - 1];
  for (std::size_t i = 2; i < n; ++i) c2[i] = (4.0 * c1[i] - c1[i - 1]) / 3.0;
  return {c2[n - 1], std::abs(c2[n - 1] - c2[n - 2])};
}

Extrapolation neville_to_zero(std::span<const double> xs, std::span<const double> values) {
  const std::size_t n = xs.size();
  if (n == 0 || values.size() != n) fail(ErrorCode::input, "neville_to_zero: bad sizes");
  if (n == 1) return {values[0], kInf};
  std::vector<double> p(values.begin(), values.end());
  double prev_top = p[n - 1];
  double top = p[n - 1];
  // p[i] after round k holds the interpolant through nodes i-k..i at x = 0.
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = n - 1; i >= k; --i) {
      p[i] = (xs[i - k] * p[i] - xs[i] * p[i - 1]) / (xs[i - k] - xs[i]);
      if (i == k) break;
    }
    prev_top = top;
    top = p[n - 1];
  }
  return {top, std::abs(top - prev_top)};
}

}  // namespace lsys
