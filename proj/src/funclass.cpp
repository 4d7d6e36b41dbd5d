#include "lsys/funclass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lsys/error.hpp"

namespace lsys::funclass {

cplx AnalyticFunction::operator()(cplx z) const {
  try {
    return evaluator(z);
  } catch (const Error& e) {
    throw Error(e.code(), "at z=" + format_complex(z) + ": " + e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::evaluation, "at z=" + format_complex(z) + ": " + e.what());
  }
}

CheckResult herglotz_check(const AnalyticFunction& f, std::span<const cplx> samples, double tol) {
  if (!(tol > 0)) fail(ErrorCode::input, "herglotz_check: tol must be positive");
  CheckResult res;
  for (cplx z : samples) {
    if (!(z.imag() > 0)) fail(ErrorCode::domain, "herglotz_check: sample " + format_complex(z) + " not in the upper half-plane");
    const double q = f(z).imag();
    res.worst = std::min(res.worst, q);
    if (q < -tol && res.pass) {
      res.pass = false;
      res.witness = z;
    }
  }
  return res;
}

CheckResult stieltjes_check(const AnalyticFunction& f, std::span<const cplx> samples, double tol,
                            Variant variant) {
  if (!(tol > 0)) fail(ErrorCode::input, "stieltjes_check: tol must be positive");
  CheckResult res;
  for (cplx z : samples) {
    if (z.imag() == 0.0) fail(ErrorCode::domain, "stieltjes_check: sample " + format_complex(z) + " lies on the real axis");
    const cplx v = f(z);
    const cplx w = variant == Variant::stieltjes ? z * v : v / z;
    const double q = w.imag() / z.imag();
    res.worst = std::min(res.worst, q);
    if (!(q >= -tol) && res.pass) {
      res.pass = false;
      res.witness = z;
    }
  }
  return res;
}

std::vector<cplx> sample_upper_half_plane(std::mt19937_64& rng, std::size_t count) {
  std::uniform_real_distribution<double> log_mod(std::log(1e-3), std::log(1e3));
  std::uniform_real_distribution<double> arg(0.0, std::numbers::pi);
  std::vector<cplx> out;
  out.reserve(count);
  while (out.size() < count) {
    const double r = std::exp(log_mod(rng));
    const double a = arg(rng);
    if (a <= 0.0 || a >= std::numbers::pi) continue;
    out.push_back(std::polar(r, a));
  }
  return out;
}

namespace {

double cot_of(double alpha_tan) {
  if (std::isinf(alpha_tan)) return 0.0;
  return 1.0 / alpha_tan;
}

// Kernel at cot(alpha) = 0 plus the vector whose outer product is subtracted.
struct KernelParts {
  ComplexMatrix base;
  std::vector<cplx> v;
  double defect = 0.0;
};

KernelParts kernel_parts(const AnalyticFunction& f, std::span<const cplx> points, Variant variant) {
  const std::size_t n = points.size();
  if (n == 0) fail(ErrorCode::input, "sector kernel needs at least one point");
  for (std::size_t k = 0; k < n; ++k) {
    if (!(points[k].imag() > 0)) fail(ErrorCode::input, "sector kernel point " + format_complex(points[k]) + " not in the upper half-plane");
    for (std::size_t l = 0; l < k; ++l)
      if (points[k] == points[l]) fail(ErrorCode::input, "duplicate sector kernel point " + format_complex(points[k]));
  }
  KernelParts parts{ComplexMatrix(n), std::vector<cplx>(n), 0.0};
  std::vector<cplx> num(n);  // z f(z) for Stieltjes, f(z)/z for inverse
  for (std::size_t k = 0; k < n; ++k) {
    const cplx z = points[k];
    const cplx val = f(z);
    if (variant == Variant::stieltjes) {
      num[k] = z * val;
      parts.v[k] = val;
    } else {
      num[k] = val / z;
      parts.v[k] = val / z;
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      parts.base(k, l) = (num[k] - std::conj(num[l])) / (points[k] - std::conj(points[l]));
  parts.defect = parts.base.hermitian_defect();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k; l < n; ++l) {
      const cplx avg = 0.5 * (parts.base(k, l) + std::conj(parts.base(l, k)));
      parts.base(k, l) = avg;
      parts.base(l, k) = std::conj(avg);
    }
  }
  return parts;
}

ComplexMatrix assemble(const KernelParts& parts, double cot) {
  ComplexMatrix m = parts.base;
  const std::size_t n = m.size();
  if (cot != 0.0)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) {
        m(k, l) -= cot * (std::conj(parts.v[l]) * parts.v[k]);
        if (l != k) m(l, k) = std::conj(m(k, l));
        else m(k, k) = m(k, k).real();
      }
  return m;
}

}  // namespace

SectorKernel build_sector_kernel(const AnalyticFunction& f, std::span<const cplx> points,
                                 double alpha_tan, Variant variant) {
  if (!(alpha_tan > 0)) fail(ErrorCode::input, "alpha_tan must be positive or +inf");
  KernelParts parts = kernel_parts(f, points, variant);
  SectorKernel k;
  k.points.assign(points.begin(), points.end());
  k.alpha_tan = alpha_tan;
  k.variant = variant;
  k.matrix = assemble(parts, cot_of(alpha_tan));
  k.symmetrization_defect = parts.defect;
  return k;
}

PsdResult is_psd(const ComplexMatrix& matrix, double tol) {
  if (matrix.size() == 0) fail(ErrorCode::input, "is_psd: empty matrix");
  double scale = 1.0;
  for (std::size_t r = 0; r < matrix.size(); ++r)
    for (std::size_t c = 0; c < matrix.size(); ++c) scale = std::max(scale, std::abs(matrix(r, c)));
  if (matrix.hermitian_defect() > 1e-10 * scale)
    fail(ErrorCode::internal, "is_psd: matrix is not Hermitian (defect " + format_double(matrix.hermitian_defect()) + ")");
  const auto eig = hermitian_eigenvalues(matrix);
  return {eig.front() >= -tol, eig.front()};
}

PsdResult is_psd(const SectorKernel& kernel, double tol) { return is_psd(kernel.matrix, tol); }

SectorAngleEstimate min_sector_angle(const AnalyticFunction& f, Variant variant,
                                     const SamplingPlan& plan, double tol) {
  if (plan.trials == 0 || plan.points_per_trial == 0) fail(ErrorCode::input, "min_sector_angle: empty sampling plan");
  const std::size_t per_trial = std::min<std::size_t>(plan.points_per_trial, 8);
  std::mt19937_64 rng(plan.seed);

  const auto screen = sample_upper_half_plane(rng, 64);
  const auto check = stieltjes_check(f, screen, 1e-10, variant);
  if (!check.pass)
    fail(ErrorCode::class_error, "min_sector_angle: " + f.description + " fails the class screening at " +
                                     format_complex(*check.witness));

  std::vector<KernelParts> trials;
  trials.reserve(plan.trials);
  for (std::size_t t = 0; t < plan.trials; ++t)
    trials.push_back(kernel_parts(f, sample_upper_half_plane(rng, per_trial), variant));

  auto all_psd = [&](double cot) {
    for (const auto& parts : trials)
      if (!is_psd(assemble(parts, cot), tol).psd) return false;
    return true;
  };

  SectorAngleEstimate est;
  est.seed = plan.seed;
  est.trials = plan.trials;
  constexpr double kMaxTan = 1e9;
  if (!all_psd(0.0))
    fail(ErrorCode::class_error, "min_sector_angle: sampled kernel not PSD even at alpha = pi/2");
  double cot_ok = 1.0 / kMaxTan;
  if (!all_psd(cot_ok)) return est;  // not in any S^alpha with alpha < pi/2
  double cot_bad = cot_ok;
  while (true) {
    cot_bad *= 10.0;
    if (cot_bad > kMaxTan) {
      est.tan_alpha = 1.0 / kMaxTan;
      return est;
    }
    if (!all_psd(cot_bad)) break;
    cot_ok = cot_bad;
  }
  while (cot_bad / cot_ok > 1.0 + 1e-3) {
    const double mid = std::sqrt(cot_ok * cot_bad);
    (all_psd(mid) ? cot_ok : cot_bad) = mid;
  }
  est.tan_alpha = 1.0 / cot_ok;
  return est;
}

double limit_from_samples(std::span<const double> values, const LimitSettings& settings) {
  const std::size_t n = values.size();
  if (n < 5) fail(ErrorCode::input, "limit: need at least 5 samples");
  for (double v : values)
    if (!std::isfinite(v)) fail(ErrorCode::no_limit, "limit: non-finite sample");

  // Tail strictly growing in magnitude with constant sign.
  auto growing_tail = [&] {
    for (std::size_t i = n - 4; i + 1 < n; ++i) {
      if (!(std::abs(values[i + 1]) > std::abs(values[i]))) return false;
      if (std::signbit(values[i + 1]) != std::signbit(values[i])) return false;
    }
    return true;
  };

  const double last = values[n - 1];
  if (std::abs(last) > settings.divergence_threshold && growing_tail()) return std::copysign(kInf, last);

  const Extrapolation direct = richardson_halving(values);
  if (direct.error <= settings.tol * std::max(1.0, std::abs(direct.value))) return direct.value;

  // Divergence at a power rate: the reciprocal extrapolates cleanly to zero.
  if (growing_tail()) {
    std::vector<double> recip(values.begin() + static_cast<std::ptrdiff_t>(n / 2), values.end());
    for (double& r : recip) r = 1.0 / r;
    const Extrapolation inv = richardson_halving(recip);
    if (std::abs(inv.value) <= settings.tol && inv.error <= settings.tol) return std::copysign(kInf, last);
  }
  fail(ErrorCode::no_limit, "limit: sequence does not converge (last " + format_double(last) + ", Richardson error " +
                                format_double(direct.error) + ")");
}

namespace {

// Slowly settling sequences get up to 20 extra samples before giving up.
constexpr int kMaxExtraSamples = 20;

double limit_along(const AnalyticFunction& f, const LimitSettings& settings, bool toward_zero) {
  if (!(settings.scale > 0)) fail(ErrorCode::input, "limit: scale must be positive");
  std::vector<double> values;
  for (int k = 0; k <= settings.last_index + kMaxExtraSamples; ++k) {
    const double x = -settings.scale * std::pow(4.0, toward_zero ? -k : k);
    const cplx v = f(cplx(x, 0.0));
    if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real())))
      fail(ErrorCode::domain, "limit: f is not real at x=" + format_double(x) + " (Im " + format_double(v.imag()) + ")");
    values.push_back(v.real());
    if (k < settings.last_index || (k - settings.last_index) % 4 != 0) continue;
    try {
      return limit_from_samples(values, settings);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::no_limit || k + 4 > settings.last_index + kMaxExtraSamples) throw;
    }
  }
  return limit_from_samples(values, settings);
}

}  // namespace

double limit_neg_zero(const AnalyticFunction& f, const LimitSettings& settings) {
  return limit_along(f, settings, true);
}

double limit_neg_infinity(const AnalyticFunction& f, const LimitSettings& settings) {
  return limit_along(f, settings, false);
}

namespace {

struct GaussRule {
  std::vector<double> x, w;
};

GaussRule gauss_legendre_rule(int n) {
  GaussRule r{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return r;
}

double apply_rule(const GaussRule& r, const std::function<double(double)>& g, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * g(c + h * r.x[i]);
  return s * h;
}

}  // namespace

double integrate_gauss_legendre(const std::function<double(double)>& g, double a, double b, int nodes,
                                double tol) {
  if (nodes < 2) fail(ErrorCode::input, "quadrature needs at least 2 nodes per panel");
  if (a == b) return 0.0;
  const GaussRule rule = gauss_legendre_rule(nodes);
  struct Panel {
    double a, b, whole;
    int depth;
  };
  // Depth-first with a fixed visiting order so the summation order is reproducible.
  std::vector<Panel> stack{{a, b, apply_rule(rule, g, a, b), 0}};
  double total = 0.0;
  const double width = std::abs(b - a);
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const double left = apply_rule(rule, g, p.a, m);
    const double right = apply_rule(rule, g, m, p.b);
    const double diff = std::abs(left + right - p.whole);
    const double allowed = tol * std::max(1.0, std::abs(left + right)) * std::max(std::abs(p.b - p.a) / width, 1e-3);
    if (diff <= allowed || p.depth >= 60) {
      if (diff > allowed) fail(ErrorCode::accuracy, "quadrature did not converge near t=" + format_double(m));
      total += left + right;
    } else {
      stack.push_back({m, p.b, right, p.depth + 1});
      stack.push_back({p.a, m, left, p.depth + 1});
    }
  }
  return total;
}

namespace {

// Integrates over geometric sub-panels when the interval spans decades.
double integrate_panels(const std::function<double(double)>& g, double a, double b, int nodes, double tol) {
  if (a > 0 && b / a > 10.0) {
    const int panels = static_cast<int>(std::ceil(4.0 * std::log10(b / a)));
    const double ratio = std::pow(b / a, 1.0 / panels);
    double sum = 0.0, lo = a;
    for (int k = 0; k < panels; ++k) {
      const double hi = (k + 1 == panels) ? b : lo * ratio;
      sum += integrate_gauss_legendre(g, lo, hi, nodes, tol);
      lo = hi;
    }
    return sum;
  }
  return integrate_gauss_legendre(g, a, b, nodes, tol);
}

}  // namespace

double stieltjes_inversion_moment(const AnalyticFunction& f, double t1, double t2,
                                  const std::function<double(double)>& weight,
                                  const InversionSettings& settings) {
  if (!(t1 >= 0.0 && t1 < t2)) fail(ErrorCode::input, "inversion slice requires 0 <= t1 < t2");
  const auto& ladder = settings.epsilon_ladder;
  if (ladder.empty()) fail(ErrorCode::input, "inversion: empty epsilon ladder");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0)) fail(ErrorCode::input, "inversion: epsilon ladder must be positive");
    if (i > 0 && !(ladder[i] < ladder[i - 1])) fail(ErrorCode::input, "inversion: epsilon ladder must be strictly decreasing");
  }
  std::vector<double> masses;
  for (double eps : ladder) {
    auto integrand = [&](double t) { return f(cplx(t, eps)).imag() * weight(t) / std::numbers::pi; };
    masses.push_back(integrate_panels(integrand, t1, t2, settings.nodes_per_panel, settings.quadrature_tol));
  }
  if (masses.size() == 1) return masses.front();
  // Linear-plus-quadratic extrapolation through the three smallest epsilons.
  const std::size_t k = std::min<std::size_t>(3, masses.size());
  std::span<const double> xs(ladder.data() + ladder.size() - k, k);
  std::span<const double> ys(masses.data() + masses.size() - k, k);
  const Extrapolation ex = neville_to_zero(xs, ys);
  if (ex.error > settings.tol * std::max(1.0, std::abs(ex.value)))
    fail(ErrorCode::accuracy, "inversion: epsilon extrapolation not converged (estimate " + format_double(ex.value) +
                                  ", error " + format_double(ex.error) + ")");
  return ex.value;
}

double stieltjes_inversion_slice(const AnalyticFunction& f, double t1, double t2,
                                 const InversionSettings& settings) {
  return stieltjes_inversion_moment(f, t1, t2, [](double) { return 1.0; }, settings);
}

double angle_from_measure(const AnalyticFunction& f, double tol) {
  LimitSettings s;
  s.tol = tol;
  const double at_zero = limit_neg_zero(f, s);
  if (std::isinf(at_zero)) return kInf;
  const double at_inf = limit_neg_infinity(f, s);
  if (std::isinf(at_inf)) fail(ErrorCode::class_error, "angle_from_measure: f(-inf) is not finite");
  return at_zero - at_inf;
}

double angle_from_measure_quadrature(const AnalyticFunction& f, double t_min, double t_max) {
  if (!(t_min > 0 && t_min < t_max)) fail(ErrorCode::input, "angle_from_measure_quadrature: need 0 < t_min < t_max");
  InversionSettings s;
  s.epsilon_ladder = {1e-3 * t_min, 5e-4 * t_min, 2.5e-4 * t_min};
  s.tol = 1e-4;
  s.quadrature_tol = 1e-9;
  return stieltjes_inversion_moment(f, t_min, t_max, [](double t) { return 1.0 / t; }, s);
}

}  // namespace lsys::funclass
