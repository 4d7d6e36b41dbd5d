#include "lsys/weyl.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lsys/error.hpp"
#include "lsys/ode.hpp"

namespace lsys::weyl {

// ---------------------------------------------------------------- Potential

Potential Potential::free(double a) {
  Potential p;
  p.a_ = a;
  p.kind_ = FreeKind{};
  p.description_ = "free";
  return p;
}

Potential Potential::constant(double c, double a) {
  if (!std::isfinite(c)) fail(ErrorCode::input, "constant potential must be finite");
  Potential p;
  p.a_ = a;
  p.kind_ = ConstantKind{c};
  p.description_ = "const:" + format_double(c);
  return p;
}

Potential Potential::table(std::vector<std::pair<double, double>> nodes, std::optional<double> tail) {
  if (nodes.empty()) fail(ErrorCode::input, "table potential needs at least one node");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i].first) || !std::isfinite(nodes[i].second))
      fail(ErrorCode::input, "table potential: non-finite node " + std::to_string(i));
    if (i > 0 && !(nodes[i].first > nodes[i - 1].first))
      fail(ErrorCode::input, "table potential: x must be strictly increasing (node " + std::to_string(i) + ")");
  }
  Potential p;
  p.a_ = nodes.front().first;
  const double t = tail.value_or(nodes.back().second);
  p.kind_ = TableKind{std::move(nodes), t};
  p.description_ = "table";
  return p;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& s, const std::string& where) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || s.empty()) fail(ErrorCode::io, where + ": cannot parse number '" + s + "'");
  return v;
}

}  // namespace

Potential Potential::from_csv_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  std::vector<std::pair<double, double>> nodes;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    const auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos)
      fail(ErrorCode::io, where + ": expected exactly two columns");
    const std::string c0 = trim(std::string_view(t).substr(0, comma));
    const std::string c1 = trim(std::string_view(t).substr(comma + 1));
    if (!header_seen) {
      if (c0 != "x" || c1 != "q") fail(ErrorCode::io, where + ": expected header 'x,q'");
      header_seen = true;
      continue;
    }
    nodes.emplace_back(parse_number(c0, where), parse_number(c1, where));
  }
  if (!header_seen) fail(ErrorCode::io, origin + ": missing 'x,q' header");
  if (nodes.empty()) fail(ErrorCode::io, origin + ": no data rows");
  try {
    Potential p = table(std::move(nodes));
    p.description_ = "table:" + origin;
    return p;
  } catch (const Error& e) {
    fail(ErrorCode::io, origin + ": " + e.what());
  }
}

Potential Potential::from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open potential table '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_csv_text(buf.str(), path);
}

Potential Potential::parse_spec(const std::string& spec) {
  if (spec == "free") return free();
  if (spec.rfind("const:", 0) == 0) {
    const std::string v = spec.substr(6);
    try {
      return constant(parse_number(v, "potential spec"));
    } catch (const Error& e) {
      fail(ErrorCode::input, std::string("bad potential spec '") + spec + "': " + e.what());
    }
  }
  if (spec.rfind("table:", 0) == 0) {
    if (spec.size() == 6) fail(ErrorCode::input, "potential spec 'table:' needs a path");
    return from_csv_file(spec.substr(6));
  }
  fail(ErrorCode::input, "unknown potential spec '" + spec + "' (expected free | const:<c> | table:<path>)");
}

double Potential::operator()(double x) const {
  return std::visit(
      [x](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, FreeKind>) {
          return 0.0;
        } else if constexpr (std::is_same_v<K, ConstantKind>) {
          return k.c;
        } else {
          const auto& n = k.nodes;
          if (x <= n.front().first) return n.front().second;
          if (x > n.back().first) return k.tail;
          if (x == n.back().first) return n.back().second;
          auto it = std::upper_bound(n.begin(), n.end(), x, [](double v, const auto& node) { return v < node.first; });
          const auto& hi = *it;
          const auto& lo = *(it - 1);
          const double t = (x - lo.first) / (hi.first - lo.first);
          return lo.second + t * (hi.second - lo.second);
        }
      },
      kind_);
}

double Potential::tail_value() const noexcept {
  if (const auto* c = std::get_if<ConstantKind>(&kind_)) return c->c;
  if (const auto* t = std::get_if<TableKind>(&kind_)) return t->tail;
  return 0.0;
}

double Potential::infimum() const noexcept {
  if (const auto* t = std::get_if<TableKind>(&kind_)) {
    double m = t->tail;
    for (const auto& n : t->nodes) m = std::min(m, n.second);
    return m;
  }
  return tail_value();
}

double Potential::tail_start() const noexcept {
  if (const auto* t = std::get_if<TableKind>(&kind_)) return t->nodes.back().first;
  return a_;
}

namespace {

// Interval end points where q may have a kink, restricted to (lo, hi).
std::vector<double> breakpoints(const Potential& p, double lo, double hi) {
  std::vector<double> pts{lo};
  if (const auto* t = std::get_if<TableKind>(&p.kind()))
    for (const auto& n : t->nodes)
      if (n.first > lo && n.first < hi) pts.push_back(n.first);
  pts.push_back(hi);
  return pts;
}

// Slope of q just to the right of a (zero for free and constant potentials).
double slope_at_a(const Potential& p) {
  if (const auto* t = std::get_if<TableKind>(&p.kind()); t && t->nodes.size() > 1)
    return (t->nodes[1].second - t->nodes[0].second) / (t->nodes[1].first - t->nodes[0].first);
  return 0.0;
}

void check_spectrum_domain(const Potential& p, cplx lambda) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    fail(ErrorCode::domain, "lambda must be finite");
  if (lambda.imag() == 0.0 && lambda.real() >= p.tail_value())
    fail(ErrorCode::domain, "lambda=" + format_double(lambda.real()) + " lies in the essential spectrum [" +
                                format_double(p.tail_value()) + ", +inf)");
}

}  // namespace

// ---------------------------------------------------------------- Cauchy

CauchySolution solve_cauchy(const Potential& p, cplx lambda, double x_max, double rel_tol) {
  if (!(x_max > p.a())) fail(ErrorCode::input, "solve_cauchy: x_max must exceed a");
  if (!(rel_tol > 1e-13 && rel_tol < 1e-3)) fail(ErrorCode::input, "solve_cauchy: rel_tol must lie in (1e-13, 1e-3)");

  using State = std::array<cplx, 4>;  // phi1, phi1', phi2, phi2'
  auto rhs = [&](double x, const State& y) {
    const cplx k = p(x) - lambda;
    return State{y[1], k * y[0], y[3], k * y[2]};
  };
  CauchySolution sol;
  sol.lambda = lambda;
  State y{cplx(0.0), cplx(1.0), cplx(-1.0), cplx(0.0)};
  auto record = [&](double x, const State& s) {
    sol.grid_x.push_back(x);
    sol.phi1.push_back(s[0]);
    sol.phi1_prime.push_back(s[1]);
    sol.phi2.push_back(s[2]);
    sol.phi2_prime.push_back(s[3]);
    const cplx w = s[0] * s[3] - s[1] * s[2];
    const double scale = std::max(1.0, std::abs(s[0] * s[3]) + std::abs(s[1] * s[2]));
    sol.wronskian_drift = std::max(sol.wronskian_drift, std::abs(w - 1.0) / scale);
  };
  record(p.a(), y);
  ode::Settings s;
  s.rel_tol = rel_tol;
  s.abs_tol = rel_tol;
  const auto pts = breakpoints(p, p.a(), x_max);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    ode::dopri5<4>(rhs, pts[i], pts[i + 1], y, s, [&](double x, const State& st) {
      record(x, st);
      return true;
    });
  }
  return sol;
}

// ---------------------------------------------------------------- m(lambda)

namespace {

// Backward Riccati integration of u = psi'/psi from b down to a; returns u(a).
// Switches to w = 1/u while |u| is large so that poles of u are crossed.
cplx riccati_u_at_a(const Potential& p, cplx lambda, double b, const WeylSettings& settings) {
  using State = std::array<cplx, 1>;
  constexpr double kSwitch = 1e6;
  bool inverted = false;
  State y{cplx(0.0, 1.0) * sqrt_upper(lambda - p(b))};

  ode::Settings s;
  s.rel_tol = settings.rel_tol;
  s.abs_tol = settings.rel_tol * 1e-3;
  // Resolve the local oscillation scale; longer steps let rounding noise on
  // the decaying branch wander when Im sqrt(lambda - q) is small.
  double q_spread = std::abs(p(p.a())) + std::abs(p.tail_value());
  if (const auto* t = std::get_if<TableKind>(&p.kind()))
    for (const auto& node : t->nodes) q_spread = std::max(q_spread, std::abs(node.second));
  s.max_step = 0.5 / std::sqrt(std::max(1.0, std::abs(lambda) + q_spread));
  auto rhs_u = [&](double x, const State& st) { return State{p(x) - lambda - st[0] * st[0]}; };
  auto rhs_w = [&](double x, const State& st) { return State{1.0 - (p(x) - lambda) * st[0] * st[0]}; };

  const auto pts = breakpoints(p, p.a(), b);
  for (std::size_t seg = pts.size() - 1; seg > 0; --seg) {
    double x = pts[seg];
    const double x_end = pts[seg - 1];
    while (x > x_end) {
      auto observer = [&](double, const State& st) { return std::abs(st[0]) <= kSwitch; };
      const ode::Outcome out = inverted ? ode::dopri5<1>(rhs_w, x, x_end, y, s, observer)
                                        : ode::dopri5<1>(rhs_u, x, x_end, y, s, observer);
      x = out.x_reached;
      if (out.stopped) {
        y[0] = 1.0 / y[0];
        inverted = !inverted;
      }
    }
  }
  return inverted ? 1.0 / y[0] : y[0];
}

}  // namespace

cplx weyl_m(const Potential& p, cplx lambda, const WeylSettings& settings) {
  check_spectrum_domain(p, lambda);
  if (!(settings.initial_length > 0 && settings.growth_factor > 1.0))
    fail(ErrorCode::input, "weyl_m: invalid b schedule");

  // Far from the spectrum the first two WKB terms are exact to rounding.
  const cplx shifted = lambda - p(p.a());
  const double slope = slope_at_a(p);
  if (std::abs(shifted) > 1e8 && std::abs(slope) / (4.0 * std::pow(std::abs(shifted), 1.5)) < 1e-10) {
    const cplx u = cplx(0.0, 1.0) * sqrt_upper(shifted) + slope / (4.0 * shifted);
    return -u;
  }

  const double a = p.a();
  double b = a + settings.initial_length;
  cplx prev = -riccati_u_at_a(p, lambda, b, settings);
  for (int k = 0; k < settings.max_doublings; ++k) {
    b = a + (b - a) * settings.growth_factor;
    const cplx cur = -riccati_u_at_a(p, lambda, b, settings);
    if (std::abs(cur - prev) < settings.convergence_tol * std::max(1.0, std::abs(cur))) return cur;
    if (k + 1 == settings.max_doublings)
      fail(ErrorCode::convergence, "weyl_m: no convergence in b at lambda=" + format_complex(lambda) +
                                       " (last iterates " + format_complex(prev) + ", " + format_complex(cur) + ")");
    prev = cur;
  }
  return prev;
}

cplx weyl_m_dirichlet(const Potential& p, cplx lambda, double b, double rel_tol) {
  const CauchySolution sol = solve_cauchy(p, lambda, b, rel_tol);
  const cplx phi1 = sol.phi1.back();
  if (phi1 == 0.0) fail(ErrorCode::pole, "weyl_m_dirichlet: phi1(b) vanishes");
  return -sol.phi2.back() / phi1;
}

double weyl_m_neg_zero(const Potential& p, const WeylSettings& settings) {
  std::vector<double> values;
  for (int n = 0; n <= 12; ++n) {
    const double x = -std::pow(4.0, -n);
    const cplx m = weyl_m(p, cplx(x, 0.0), settings);
    values.push_back(m.real());
  }
  funclass::LimitSettings ls;
  ls.tol = 1e-7;
  return funclass::limit_from_samples(values, ls);
}

// ---------------------------------------------------------------- WeylFunction

WeylFunction WeylFunction::closed_form_free() {
  auto s = std::make_shared<State>();
  s->source = Source::closed_form_free;
  s->m_neg_zero = 0.0;
  s->description = "m(z) = -i sqrt(z) (free, closed form)";
  return WeylFunction(std::move(s));
}

WeylFunction WeylFunction::closed_form_constant(double c) {
  if (!std::isfinite(c)) fail(ErrorCode::input, "constant potential must be finite");
  if (c < 0.0)
    fail(ErrorCode::domain, "m(-0) undefined for const:" + format_double(c) + ": the spectrum reaches below 0");
  auto s = std::make_shared<State>();
  s->source = Source::closed_form_constant;
  s->c = c;
  s->m_neg_zero = std::sqrt(c);
  s->description = "m(z) = -i sqrt(z - " + format_double(c) + ") (constant, closed form)";
  return WeylFunction(std::move(s));
}

WeylFunction WeylFunction::numeric(Potential p, WeylSettings settings) {
  // Normalization audit: the numeric scheme must reproduce m(i) = exp(-i pi/4)
  // and m(-1) = 1 for the free potential.
  const cplx audit_i = weyl_m(Potential::free(), cplx(0.0, 1.0), settings);
  const cplx audit_m1 = weyl_m(Potential::free(), cplx(-1.0, 0.0), settings);
  const cplx expect_i(std::sqrt(0.5), -std::sqrt(0.5));
  if (std::abs(audit_i - expect_i) > 1e-6 || std::abs(audit_m1 - 1.0) > 1e-6)
    fail(ErrorCode::internal, "Weyl normalization audit failed: m_free(i)=" + format_complex(audit_i) +
                                  ", m_free(-1)=" + format_complex(audit_m1));
  auto s = std::make_shared<State>();
  s->source = Source::numeric;
  s->settings = settings;
  s->m_neg_zero = weyl_m_neg_zero(p, settings);
  s->description = "m(z) numeric, potential " + p.description();
  s->potential = std::move(p);
  return WeylFunction(std::move(s));
}

WeylFunction WeylFunction::from_spec(const std::string& spec, bool force_numeric) {
  Potential p = Potential::parse_spec(spec);
  if (!force_numeric) {
    if (p.is_free()) return closed_form_free();
    if (const auto* c = std::get_if<ConstantKind>(&p.kind())) return closed_form_constant(c->c);
  }
  return numeric(std::move(p));
}

cplx WeylFunction::operator()(cplx lambda) const {
  const State& s = *state_;
  switch (s.source) {
    case Source::closed_form_free:
    case Source::closed_form_constant: {
      if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
        fail(ErrorCode::domain, "lambda must be finite");
      if (lambda.imag() == 0.0 && lambda.real() >= s.c)
        fail(ErrorCode::domain, "lambda=" + format_double(lambda.real()) + " lies on the cut [" + format_double(s.c) + ", +inf)");
      return cplx(0.0, -1.0) * sqrt_upper(lambda - s.c);
    }
    case Source::numeric:
      return weyl_m(*s.potential, lambda, s.settings);
  }
  fail(ErrorCode::internal, "unknown Weyl source");
}

funclass::AnalyticFunction WeylFunction::as_function() const {
  WeylFunction self = *this;
  return {[self](cplx z) { return self(z); }, state_->description};
}

}  // namespace lsys::weyl
