#pragma once

// Dormand-Prince 5(4) with embedded error control for complex systems.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "lsys/error.hpp"
#include "lsys/numeric.hpp"

namespace lsys::ode {

struct Settings {
  double rel_tol = 1e-9;
  double abs_tol = 1e-9;
  double initial_step = 0.0;  // 0 selects |x1 - x0| / 100
  double max_step = 0.0;      // 0 means unbounded
  std::size_t max_steps = 5'000'000;
};

struct Outcome {
  double x_reached = 0.0;
  bool stopped = false;  // observer asked to stop
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

/// Integrates y' = rhs(x, y) from x0 to x1 (either direction).  The observer
/// is called as observer(x, y) after every accepted step and returns false to
/// stop early.  Throws ErrorCode::integration on step-size underflow.
template <std::size_t N, class Rhs, class Observer>
Outcome dopri5(Rhs&& rhs, double x0, double x1, std::array<cplx, N>& y, const Settings& s, Observer&& observer) {
  using State = std::array<cplx, N>;
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  Outcome out;
  out.x_reached = x0;
  if (x0 == x1) return out;
  const double dir = x1 > x0 ? 1.0 : -1.0;
  const double span = std::abs(x1 - x0);
  double h = s.initial_step > 0 ? std::min(s.initial_step, span) : span / 100.0;
  double x = x0;

  auto combine = [](const State& base, double hh, std::initializer_list<std::pair<double, const State*>> terms) {
    State r = base;
    for (const auto& [coef, k] : terms)
      if (coef != 0.0)
        for (std::size_t i = 0; i < N; ++i) r[i] += (hh * coef) * (*k)[i];
    return r;
  };

  State k1 = rhs(x, y), k2, k3, k4, k5, k6, k7;
  std::size_t steps = 0;
  while (dir * (x1 - x) > 0) {
    if (++steps > s.max_steps) fail(ErrorCode::integration, "ODE: step budget exhausted at x=" + format_double(x));
    if (s.max_step > 0 && h > s.max_step) h = s.max_step;
    if (h > std::abs(x1 - x)) h = std::abs(x1 - x);
    if (h < 1e-14 * std::max(1.0, std::abs(x)))
      fail(ErrorCode::integration, "ODE: step size underflow at x=" + format_double(x));
    const double hs = dir * h;
    k2 = rhs(x + c2 * hs, combine(y, hs, {{a21, &k1}}));
    k3 = rhs(x + c3 * hs, combine(y, hs, {{a31, &k1}, {a32, &k2}}));
    k4 = rhs(x + c4 * hs, combine(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    k5 = rhs(x + c5 * hs, combine(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    k6 = rhs(x + hs, combine(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    State y_new = combine(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    k7 = rhs(x + hs, y_new);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const cplx e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = s.abs_tol + s.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err += std::norm(e) / (sc * sc);
    }
    err = std::sqrt(err / N);
    if (!std::isfinite(err)) {
      ++out.rejected;
      h *= 0.2;
      continue;
    }
    if (err <= 1.0) {
      x = (std::abs(x1 - (x + hs)) <= 1e-15 * std::max(1.0, std::abs(x1))) ? x1 : x + hs;
      y = y_new;
      k1 = k7;
      ++out.accepted;
      out.x_reached = x;
      if (!observer(x, static_cast<const State&>(y))) {
        out.stopped = true;
        return out;
      }
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= fac;
    } else {
      ++out.rejected;
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
    }
  }
  out.x_reached = x1;
  return out;
}

}  // namespace lsys::ode
