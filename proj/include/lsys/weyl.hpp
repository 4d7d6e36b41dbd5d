#pragma once

// Weyl-Titchmarsh function m(lambda) of -y'' + q(x) y on [a, +inf), normalized
// so that phi2 + m phi1 is square integrable, where
//   phi1(a) = 0, phi1'(a) = 1,   phi2(a) = -1, phi2'(a) = 0.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lsys/funclass.hpp"
#include "lsys/numeric.hpp"

namespace lsys::weyl {

struct FreeKind {};
struct ConstantKind {
  double c = 0.0;
};
struct TableKind {
  std::vector<std::pair<double, double>> nodes;  // (x, q), strictly increasing x
  double tail = 0.0;                             // q beyond the last node
};

class Potential {
 public:
  static Potential free(double a = 0.0);
  static Potential constant(double c, double a = 0.0);
  /// Nodes must be strictly increasing; the first node fixes a.  `tail`
  /// defaults to the last node's value.
  static Potential table(std::vector<std::pair<double, double>> nodes, std::optional<double> tail = std::nullopt);

  /// `x,q` CSV with a header line; lines starting with '#' are comments.
  static Potential from_csv_file(const std::string& path);
  static Potential from_csv_text(const std::string& text, const std::string& origin = "<text>");

  /// `free` | `const:<c>` | `table:<path>`
  static Potential parse_spec(const std::string& spec);

  double a() const noexcept { return a_; }
  double operator()(double x) const;  // linear interpolation for tables
  double tail_value() const noexcept;  // value of q at +inf
  double infimum() const noexcept;     // inf of q over [a, +inf)
  /// Point beyond which q is constant.
  double tail_start() const noexcept;
  const std::string& description() const noexcept { return description_; }
  bool is_free() const noexcept { return std::holds_alternative<FreeKind>(kind_); }
  const std::variant<FreeKind, ConstantKind, TableKind>& kind() const noexcept { return kind_; }

 private:
  double a_ = 0.0;
  std::variant<FreeKind, ConstantKind, TableKind> kind_;
  std::string description_;
};

struct CauchySolution {
  cplx lambda;
  std::vector<double> grid_x;
  std::vector<cplx> phi1, phi1_prime, phi2, phi2_prime;
  /// max over the grid of |W - 1| / max(1, |phi1 phi2'| + |phi1' phi2|),
  /// W = phi1 phi2' - phi1' phi2.
  double wronskian_drift = 0.0;
};

/// Integrates both Cauchy problems of l(y) = lambda y on [a, x_max].
CauchySolution solve_cauchy(const Potential& p, cplx lambda, double x_max, double rel_tol = 1e-9);

struct WeylSettings {
  double initial_length = 20.0;  // b = a + initial_length
  double growth_factor = 2.0;
  double rel_tol = 1e-9;
  double convergence_tol = 1e-8;
  int max_doublings = 8;
};

/// m(lambda) by backward Riccati integration of u = psi'/psi from a WKB seed.
cplx weyl_m(const Potential& p, cplx lambda, const WeylSettings& settings = {});

/// m(lambda) ~ -phi2(b) / phi1(b) (Dirichlet condition at b).  Cross-check for
/// small |lambda| only; overflows for large |lambda| b.
cplx weyl_m_dirichlet(const Potential& p, cplx lambda, double b, double rel_tol = 1e-10);

/// m(-0) by extrapolation along x_n = -4^-n, n = 0..12; +inf on divergence.
double weyl_m_neg_zero(const Potential& p, const WeylSettings& settings = {});

enum class Source { closed_form_free, closed_form_constant, numeric };

/// Immutable evaluator of m(lambda) with its cached limit m(-0).
class WeylFunction {
 public:
  static WeylFunction closed_form_free();
  static WeylFunction closed_form_constant(double c);
  /// ODE-backed.  Refuses to build when the free-potential normalization
  /// audit (numeric m vs -i sqrt(lambda)) fails.
  static WeylFunction numeric(Potential p, WeylSettings settings = {});
  /// Closed form for `free`/`const:` specs unless `force_numeric`.
  static WeylFunction from_spec(const std::string& spec, bool force_numeric = false);

  cplx operator()(cplx lambda) const;
  double m_neg_zero() const noexcept { return state_->m_neg_zero; }
  Source source() const noexcept { return state_->source; }
  const std::string& description() const noexcept { return state_->description; }
  funclass::AnalyticFunction as_function() const;

 private:
  struct State {
    Source source = Source::closed_form_free;
    double c = 0.0;
    std::optional<Potential> potential;
    WeylSettings settings;
    double m_neg_zero = 0.0;
    std::string description;
  };
  explicit WeylFunction(std::shared_ptr<const State> s) : state_(std::move(s)) {}
  std::shared_ptr<const State> state_;
};

}  // namespace lsys::weyl
