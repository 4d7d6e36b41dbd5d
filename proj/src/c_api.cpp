#include "lsys/lsys.h"

#include <string>

#include "lsys/error.hpp"
#include "lsys/funclass.hpp"
#include "lsys/lsystem.hpp"
#include "lsys/verify.hpp"
#include "lsys/weyl.hpp"

struct lsys_weyl {
  lsys::weyl::WeylFunction fn;
};

struct lsys_system {
  lsys::lsystem::SchrodingerLSystem sys;
};

namespace {

thread_local std::string g_last_error;

lsys_status to_status(lsys::ErrorCode c) {
  using lsys::ErrorCode;
  switch (c) {
    case ErrorCode::input: return LSYS_E_INPUT;
    case ErrorCode::domain: return LSYS_E_DOMAIN;
    case ErrorCode::evaluation: return LSYS_E_EVALUATION;
    case ErrorCode::integration: return LSYS_E_INTEGRATION;
    case ErrorCode::convergence: return LSYS_E_CONVERGENCE;
    case ErrorCode::pole: return LSYS_E_POLE;
    case ErrorCode::class_error: return LSYS_E_CLASS;
    case ErrorCode::not_accretive: return LSYS_E_NOT_ACCRETIVE;
    case ErrorCode::no_limit: return LSYS_E_NO_LIMIT;
    case ErrorCode::accuracy: return LSYS_E_ACCURACY;
    case ErrorCode::io: return LSYS_E_IO;
    case ErrorCode::internal: return LSYS_E_INTERNAL;
  }
  return LSYS_E_INTERNAL;
}

template <class F>
lsys_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return LSYS_OK;
  } catch (const lsys::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown exception";
  }
  return LSYS_E_INTERNAL;
}

lsys_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return LSYS_E_INPUT;
}

lsys::cplx in(lsys_complex z) { return {z.re, z.im}; }
lsys_complex out_c(lsys::cplx z) { return {z.real(), z.imag()}; }

lsys_class to_c(lsys::lsystem::Branch b) {
  switch (b) {
    case lsys::lsystem::Branch::stieltjes: return LSYS_CLASS_STIELTJES;
    case lsys::lsystem::Branch::inverse: return LSYS_CLASS_INVERSE_STIELTJES;
    case lsys::lsystem::Branch::neither: break;
  }
  return LSYS_CLASS_NEITHER;
}

lsys_operator_status to_c(const lsys::lsystem::OperatorStatus& s) {
  using K = lsys::lsystem::OperatorStatus::Kind;
  lsys_operator_status o{LSYS_OP_NOT_ACCRETIVE, s.tan_alpha};
  if (s.kind == K::alpha_sectorial) o.kind = LSYS_OP_ALPHA_SECTORIAL;
  if (s.kind == K::accretive_not_sectorial) o.kind = LSYS_OP_ACCRETIVE_NOT_SECTORIAL;
  return o;
}

}  // namespace

extern "C" {

const char* lsys_last_error(void) { return g_last_error.c_str(); }

const char* lsys_status_name(lsys_status status) {
  switch (status) {
    case LSYS_OK: return "ok";
    case LSYS_E_INPUT: return "input";
    case LSYS_E_DOMAIN: return "domain";
    case LSYS_E_EVALUATION: return "evaluation";
    case LSYS_E_INTEGRATION: return "integration";
    case LSYS_E_CONVERGENCE: return "convergence";
    case LSYS_E_POLE: return "pole";
    case LSYS_E_CLASS: return "class";
    case LSYS_E_NOT_ACCRETIVE: return "not_accretive";
    case LSYS_E_NO_LIMIT: return "no_limit";
    case LSYS_E_ACCURACY: return "accuracy";
    case LSYS_E_IO: return "io";
    case LSYS_E_INTERNAL: return "internal";
    case LSYS_E_BUFFER: return "buffer";
  }
  return "unknown";
}

lsys_status lsys_weyl_create(const char* spec, int numeric, lsys_weyl** out) {
  if (!spec) return null_arg("spec");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new lsys_weyl{lsys::weyl::WeylFunction::from_spec(spec, numeric != 0)}; });
}

void lsys_weyl_destroy(lsys_weyl* weyl) { delete weyl; }

lsys_status lsys_weyl_eval(const lsys_weyl* weyl, lsys_complex lambda, lsys_complex* out) {
  if (!weyl) return null_arg("weyl");
  if (!out) return null_arg("out");
  return guarded([&] { *out = out_c(weyl->fn(in(lambda))); });
}

lsys_status lsys_weyl_neg_zero(const lsys_weyl* weyl, double* out) {
  if (!weyl) return null_arg("weyl");
  if (!out) return null_arg("out");
  return guarded([&] { *out = weyl->fn.m_neg_zero(); });
}

lsys_status lsys_weyl_source(const lsys_weyl* weyl, int* out) {
  if (!weyl) return null_arg("weyl");
  if (!out) return null_arg("out");
  return guarded([&] { *out = static_cast<int>(weyl->fn.source()); });
}

lsys_status lsys_system_create(lsys_complex h, double mu, const lsys_weyl* weyl, lsys_system** out) {
  if (!weyl) return null_arg("weyl");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new lsys_system{lsys::lsystem::SchrodingerLSystem(lsys::lsystem::BoundaryParameter(in(h)),
                                                              lsys::lsystem::ExtensionParameter(mu), weyl->fn)};
  });
}

void lsys_system_destroy(lsys_system* sys) { delete sys; }

lsys_status lsys_impedance(const lsys_system* sys, lsys_complex z, lsys_complex* out) {
  if (!sys) return null_arg("sys");
  if (!out) return null_arg("out");
  return guarded([&] { *out = out_c(lsys::lsystem::impedance(sys->sys, in(z))); });
}

lsys_status lsys_transfer(const lsys_system* sys, lsys_complex z, lsys_complex* out) {
  if (!sys) return null_arg("sys");
  if (!out) return null_arg("out");
  return guarded([&] { *out = out_c(lsys::lsystem::transfer(sys->sys, in(z))); });
}

lsys_status lsys_impedance_from_transfer(lsys_complex w, lsys_complex* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = out_c(lsys::lsystem::impedance_from_transfer(in(w))); });
}

lsys_status lsys_classify(const lsys_system* sys, lsys_report* out) {
  if (!sys) return null_arg("sys");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto r = lsys::lsystem::full_report(sys->sys);
    lsys_report rep{};
    rep.klass = to_c(r.branch);
    rep.degenerate = r.branch_degenerate;
    rep.has_class_angles = r.angles.has_value();
    rep.tan_alpha1 = r.angles ? r.angles->tan_a1 : lsys::kInf;
    rep.tan_alpha2 = r.angles ? r.angles->tan_a2 : lsys::kInf;
    rep.tan_alpha = r.alpha_tan.value_or(lsys::kInf);
    rep.tan_beta = r.beta ? r.beta->tan : lsys::kInf;
    rep.beta_degenerate = r.beta && r.beta->flagged;
    rep.th_sectorial = r.th.sectorial;
    rep.tan_theta = r.th.theta_tan;
    rep.theta_exact = r.th.exact;
    rep.mu0_stieltjes = r.mu0_stieltjes.value;
    rep.mu0_inverse = r.mu0_inverse;
    rep.state_operator = to_c(r.state_operator);
    rep.associated_operator = to_c(r.associated_operator);
    *out = rep;
  });
}

lsys_status lsys_scan_mu(lsys_complex h, const lsys_weyl* weyl, lsys_class branch, const double* grid,
                         size_t grid_len, const double* mu_star, lsys_scan_row* rows, size_t* row_count,
                         lsys_scan_summary* summary) {
  if (!weyl) return null_arg("weyl");
  if (!grid && grid_len) return null_arg("grid");
  if (!rows && grid_len) return null_arg("rows");
  if (!row_count) return null_arg("row_count");
  if (!summary) return null_arg("summary");
  return guarded([&] {
    using lsys::lsystem::Branch;
    Branch b = Branch::neither;
    if (branch == LSYS_CLASS_STIELTJES) b = Branch::stieltjes;
    else if (branch == LSYS_CLASS_INVERSE_STIELTJES) b = Branch::inverse;
    else lsys::fail(lsys::ErrorCode::input, "scan branch must be stieltjes or inverse_stieltjes");
    std::optional<double> star;
    if (mu_star) star = *mu_star;
    const auto res = lsys::lsystem::scan_mu(in(h), weyl->fn, b, {grid, grid_len}, star);
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
      const auto& r = res.rows[i];
      unsigned flags = 0;
      if (r.at_mu0) flags |= LSYS_ROW_AT_MU0;
      if (r.sectorial) flags |= LSYS_ROW_SECTORIAL;
      if (r.accretive_only) flags |= LSYS_ROW_ACCRETIVE_ONLY;
      rows[i] = {r.mu, to_c(r.branch), r.tan_a1, r.tan_a2, r.f_mu, flags};
    }
    *row_count = res.rows.size();
    const auto& s = res.summary;
    *summary = {s.mu_star, s.tan_beta, s.tan_beta_universal, static_cast<lsys_direction>(s.direction),
                s.bound_holds};
  });
}

lsys_status lsys_estimate_sector_angle(const lsys_system* sys, int variant, uint64_t seed, size_t trials,
                                       size_t points_per_trial, double* tan_alpha) {
  if (!sys) return null_arg("sys");
  if (!tan_alpha) return null_arg("tan_alpha");
  return guarded([&] {
    const auto v = variant == 0 ? lsys::funclass::Variant::stieltjes : lsys::funclass::Variant::inverse_stieltjes;
    const auto est = lsys::funclass::min_sector_angle(lsys::lsystem::impedance_function(sys->sys), v,
                                                      {seed, trials, points_per_trial});
    *tan_alpha = est.tan_alpha;
  });
}

lsys_status lsys_verify_run(int criterion, uint64_t seed, lsys_verify_callback callback, void* user, int* failed) {
  return guarded([&] {
    lsys::verify::Options opts;
    opts.seed = seed;
    if (criterion != 0) {
      if (criterion < 1 || criterion > lsys::verify::kCriterionCount)
        lsys::fail(lsys::ErrorCode::input, "criterion must be 0..8");
      opts.only = criterion;
    }
    int bad = 0;
    for (const auto& r : lsys::verify::run(opts)) {
      if (!r.passed) ++bad;
      if (callback) callback(r.id, r.name.c_str(), r.passed, r.detail.c_str(), user);
    }
    if (failed) *failed = bad;
  });
}

}  // extern "C"
