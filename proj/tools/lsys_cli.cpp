// lsys: command-line front end over the C interface.
//
//   lsys eval      --h 0.5+0.5i --mu 1 --points=-1,i
//   lsys classify  --h 1+i --mu 0
//   lsys scan-mu   --h 1+i --range "(2,100]" --count 50
//   lsys weyl      --potential const:2 --lambda=-1,i
//   lsys verify    [--example 1|2] [--criterion N]
//
// Exit codes: 0 success, 1 verification or numerical failure, 2 invalid
// input or domain, 3 T_h not accretive.

#include <cmath>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli_parse.hpp"
#include "lsys/lsys.h"

namespace {

using nlohmann::ordered_json;
using lsys::cli::format_number;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitNotAccretive = 3;

struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(lsys_status s) {
  switch (s) {
    case LSYS_OK: return kExitOk;
    case LSYS_E_INPUT:
    case LSYS_E_DOMAIN:
    case LSYS_E_POLE:
    case LSYS_E_CLASS:
    case LSYS_E_IO: return kExitInput;
    case LSYS_E_NOT_ACCRETIVE: return kExitNotAccretive;
    default: return kExitFailure;
  }
}

void check(lsys_status s) {
  if (s != LSYS_OK) throw Failure{exit_code_for(s), std::string(lsys_status_name(s)) + " error: " + lsys_last_error()};
}

struct WeylDeleter {
  void operator()(lsys_weyl* w) const { lsys_weyl_destroy(w); }
};
struct SystemDeleter {
  void operator()(lsys_system* s) const { lsys_system_destroy(s); }
};
using WeylPtr = std::unique_ptr<lsys_weyl, WeylDeleter>;
using SystemPtr = std::unique_ptr<lsys_system, SystemDeleter>;

enum class Format { csv, json };

struct Config {
  std::string h = "1+i";
  std::string mu = "inf";
  std::string potential = "free";
  bool numeric = false;
  std::string output;
  std::uint64_t seed = 20041216;
  std::string points = "-1";
  std::string lambdas = "i,-1";
  std::string grid;
  std::string range;
  int count = 20;
  std::string branch = "auto";
  std::optional<double> mu_star_value;
  std::string mu_star;
  int example = 0;
  int criterion = 0;
};

lsys_complex to_c(std::complex<double> z) { return {z.real(), z.imag()}; }

lsys_complex parse_h(const Config& cfg) { return to_c(lsys::cli::parse_complex(cfg.h)); }

WeylPtr make_weyl(const Config& cfg) {
  lsys_weyl* w = nullptr;
  check(lsys_weyl_create(cfg.potential.c_str(), cfg.numeric ? 1 : 0, &w));
  return WeylPtr(w);
}

SystemPtr make_system(const Config& cfg, const lsys_weyl* weyl) {
  lsys_system* s = nullptr;
  check(lsys_system_create(parse_h(cfg), lsys::cli::parse_extended_real(cfg.mu), weyl, &s));
  return SystemPtr(s);
}

Format format_of(const Config& cfg, Format fallback) {
  if (cfg.output.empty()) return fallback;
  return cfg.output == "json" ? Format::json : Format::csv;
}

ordered_json json_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) throw Failure{kExitFailure, "internal error: NaN in output"};
  return x;
}

// A rectangular table that renders as CSV or as a JSON array of objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // formatted cells

  void print(std::ostream& os, Format f, const std::vector<std::string>& footer = {}) const {
    if (f == Format::csv) {
      for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
      os << '\n';
      for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << '\n';
      }
      for (const auto& line : footer) os << "# " << line << '\n';
      return;
    }
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json obj;
      for (std::size_t i = 0; i < r.size(); ++i) {
        const auto& cell = r[i];
        double v = 0.0;
        std::istringstream is(cell);
        if (cell != "inf" && cell != "-inf" && (is >> v) && is.eof())
          obj[columns[i]] = v;
        else
          obj[columns[i]] = cell;
      }
      arr.push_back(obj);
    }
    ordered_json doc{{"rows", arr}};
    if (!footer.empty()) doc["notes"] = footer;
    os << doc.dump() << '\n';
  }
};

int run_eval(const Config& cfg) {
  const auto weyl = make_weyl(cfg);
  const auto sys = make_system(cfg, weyl.get());
  Table t{{"re_z", "im_z", "re_V", "im_V", "re_W", "im_W"}, {}};
  for (auto z : lsys::cli::parse_complex_list(cfg.points)) {
    std::vector<std::string> row{format_number(z.real()), format_number(z.imag())};
    lsys_complex v{}, w{};
    const lsys_complex zc = to_c(z);
    for (auto [st, out] : {std::pair{lsys_impedance(sys.get(), zc, &v), &v},
                           std::pair{lsys_transfer(sys.get(), zc, &w), &w}}) {
      if (st == LSYS_E_POLE) {
        row.insert(row.end(), {"pole", "pole"});
        continue;
      }
      check(st);
      row.push_back(format_number(out->re));
      row.push_back(format_number(out->im));
    }
    t.rows.push_back(std::move(row));
  }
  t.print(std::cout, format_of(cfg, Format::csv));
  return kExitOk;
}

ordered_json operator_json(const lsys_operator_status& s) {
  switch (s.kind) {
    case LSYS_OP_ALPHA_SECTORIAL: return ordered_json{{"alpha_sectorial", json_number(s.tan_alpha)}};
    case LSYS_OP_ACCRETIVE_NOT_SECTORIAL: return "accretive_not_sectorial";
    case LSYS_OP_NOT_ACCRETIVE: break;
  }
  return "not_accretive";
}

const char* class_name(lsys_class c) {
  switch (c) {
    case LSYS_CLASS_STIELTJES: return "stieltjes";
    case LSYS_CLASS_INVERSE_STIELTJES: return "inverse_stieltjes";
    case LSYS_CLASS_NEITHER: break;
  }
  return "neither";
}

int run_classify(const Config& cfg) {
  const auto weyl = make_weyl(cfg);
  const auto sys = make_system(cfg, weyl.get());
  lsys_report r{};
  const lsys_status st = lsys_classify(sys.get(), &r);
  if (st == LSYS_E_NOT_ACCRETIVE)
    throw Failure{kExitNotAccretive, std::string("T_h is not accretive (Re h < -m(-0)); no sectorial classification: ") +
                                         lsys_last_error()};
  check(st);

  ordered_json j;
  j["class"] = class_name(r.klass);
  const bool angles = r.has_class_angles != 0;
  j["tan_alpha1"] = angles ? json_number(r.tan_alpha1) : ordered_json(nullptr);
  j["tan_alpha2"] = angles ? json_number(r.tan_alpha2) : ordered_json(nullptr);
  j["tan_alpha"] = angles ? json_number(r.tan_alpha) : ordered_json(nullptr);
  j["tan_beta"] = angles ? json_number(r.tan_beta) : ordered_json(nullptr);
  j["tan_theta"] = json_number(r.tan_theta);
  j["theta_exact"] = r.theta_exact != 0;
  j["mu0_stieltjes"] = json_number(r.mu0_stieltjes);
  j["mu0_inverse"] = json_number(r.mu0_inverse);
  j["state_operator"] = operator_json(r.state_operator);
  j["associated_operator"] = operator_json(r.associated_operator);
  j["seed"] = cfg.seed;

  if (format_of(cfg, Format::json) == Format::json) {
    std::cout << j.dump() << '\n';
  } else {
    std::string header, values;
    for (const auto& [k, v] : j.items()) {
      header += (header.empty() ? "" : ",") + k;
      values += (values.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
    }
    std::cout << header << '\n' << values << '\n';
  }
  return kExitOk;
}

std::vector<double> scan_grid(const Config& cfg) {
  if (!cfg.grid.empty() && !cfg.range.empty()) throw Failure{kExitInput, "use either --grid or --range, not both"};
  if (!cfg.grid.empty()) return lsys::cli::parse_real_list(cfg.grid);
  if (!cfg.range.empty()) return lsys::cli::parse_range(cfg.range, cfg.count);
  throw Failure{kExitInput, "scan-mu needs --grid or --range"};
}

lsys_class scan_branch(const Config& cfg, const lsys_weyl* weyl, const std::vector<double>& grid) {
  if (cfg.branch == "stieltjes") return LSYS_CLASS_STIELTJES;
  if (cfg.branch == "inverse") return LSYS_CLASS_INVERSE_STIELTJES;
  // auto: the branch of the first grid point that lies on one
  for (double mu : grid) {
    lsys_system* s = nullptr;
    check(lsys_system_create(parse_h(cfg), mu, weyl, &s));
    SystemPtr sys(s);
    lsys_report r{};
    check(lsys_classify(sys.get(), &r));
    if (r.klass != LSYS_CLASS_NEITHER) return r.klass;
  }
  throw Failure{kExitInput, "no grid point lies on the Stieltjes or inverse Stieltjes branch"};
}

int run_scan(const Config& cfg) {
  const auto weyl = make_weyl(cfg);
  const auto grid = scan_grid(cfg);
  const lsys_class branch = scan_branch(cfg, weyl.get(), grid);
  std::optional<double> star;
  if (!cfg.mu_star.empty()) star = lsys::cli::parse_extended_real(cfg.mu_star);

  std::vector<lsys_scan_row> rows(grid.size());
  std::size_t n = 0;
  lsys_scan_summary s{};
  check(lsys_scan_mu(parse_h(cfg), weyl.get(), branch, grid.data(), grid.size(), star ? &*star : nullptr,
                     rows.data(), &n, &s));

  static const char* directions[] = {"decreasing", "increasing", "constant", "mixed"};
  Table t{{"mu", "class", "tan_a1", "tan_a2", "f_mu", "flags"}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = rows[i];
    std::string flags;
    auto add = [&](unsigned bit, const char* name) {
      if (r.flags & bit) flags += (flags.empty() ? "" : "|") + std::string(name);
    };
    add(LSYS_ROW_AT_MU0, "atMu0");
    add(LSYS_ROW_SECTORIAL, "sectorial");
    add(LSYS_ROW_ACCRETIVE_ONLY, "accretiveOnly");
    t.rows.push_back({format_number(r.mu), class_name(r.klass), format_number(r.tan_a1), format_number(r.tan_a2),
                      format_number(r.f_mu), flags});
  }
  const std::string footer = "summary: mu_star=" + format_number(s.mu_star) + ",tan_beta=" +
                             format_number(s.tan_beta) + ",tan_beta_universal=" +
                             format_number(s.tan_beta_universal) + ",direction=" + directions[s.direction] +
                             ",bound_holds=" + (s.bound_holds ? "true" : "false");
  t.print(std::cout, format_of(cfg, Format::csv), {footer});
  return kExitOk;
}

int run_weyl(const Config& cfg) {
  const auto weyl = make_weyl(cfg);
  Table t{{"re_lambda", "im_lambda", "re_m", "im_m"}, {}};
  for (auto lam : lsys::cli::parse_complex_list(cfg.lambdas)) {
    lsys_complex m{};
    check(lsys_weyl_eval(weyl.get(), to_c(lam), &m));
    t.rows.push_back({format_number(lam.real()), format_number(lam.imag()), format_number(m.re), format_number(m.im)});
  }
  double m0 = 0.0;
  check(lsys_weyl_neg_zero(weyl.get(), &m0));
  int source = 0;
  check(lsys_weyl_source(weyl.get(), &source));
  static const char* sources[] = {"closed_form_free", "closed_form_constant", "numeric"};
  t.print(std::cout, format_of(cfg, Format::csv),
          {"m_neg_zero=" + format_number(m0) + ",source=" + sources[source]});
  return kExitOk;
}

int run_verify(const Config& cfg) {
  if (cfg.example && cfg.criterion) throw Failure{kExitInput, "use either --example or --criterion"};
  const int which = cfg.example ? cfg.example : cfg.criterion;
  int failed = 0;
  auto print = [](int id, const char* name, int passed, const char* detail, void*) {
    std::cout << "criterion " << id << " (" << name << "): " << (passed ? "PASS" : "FAIL");
    if (detail && *detail) std::cout << " - " << detail;
    std::cout << '\n';
  };
  check(lsys_verify_run(which, cfg.seed, print, nullptr, &failed));
  std::cout << (failed ? "FAILED" : "OK") << '\n';
  return failed ? kExitFailure : kExitOk;
}

void add_system_options(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--h", cfg.h, "boundary parameter h, Im h > 0 (a+bi)")->capture_default_str();
  cmd->add_option("--mu", cfg.mu, "extension parameter mu (real or inf)")->capture_default_str();
}

void add_weyl_options(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--potential", cfg.potential, "free | const:<c> | table:<path.csv>")->capture_default_str();
  cmd->add_flag("--numeric", cfg.numeric, "force the ODE-based Weyl function");
}

void add_output_option(CLI::App* cmd, Config& cfg, const char* fallback) {
  cmd->add_option("--output", cfg.output, std::string("csv | json (default ") + fallback + ")")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Schrodinger L-systems: impedance, Weyl functions and sectorial classes"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);


  auto* eval = app.add_subcommand("eval", "impedance V(z) and transfer W(z) at points");
  add_system_options(eval, cfg);
  add_weyl_options(eval, cfg);
  add_output_option(eval, cfg, "csv");
  eval->add_option("--points", cfg.points, "comma separated complex points (use --points=-1 for negatives)")
      ->capture_default_str();

  auto* classify = app.add_subcommand("classify", "class, angles and critical mu values as JSON");
  add_system_options(classify, cfg);
  add_weyl_options(classify, cfg);
  add_output_option(classify, cfg, "json");
  classify->add_option("--seed", cfg.seed, "seed echoed in the report")->capture_default_str();

  auto* scan = app.add_subcommand("scan-mu", "class angles and f(mu) along a branch of extensions");
  scan->add_option("--h", cfg.h, "boundary parameter h, Im h > 0 (a+bi)")->capture_default_str();
  add_weyl_options(scan, cfg);
  add_output_option(scan, cfg, "csv");
  scan->add_option("--grid", cfg.grid, "comma separated mu values (inf allowed)");
  scan->add_option("--range", cfg.range, "interval such as \"(2,100]\"");
  scan->add_option("--count", cfg.count, "points sampled from --range")->capture_default_str();
  scan->add_option("--branch", cfg.branch, "stieltjes | inverse | auto")
      ->check(CLI::IsMember({"stieltjes", "inverse", "auto"}))
      ->capture_default_str();
  scan->add_option("--mu-star", cfg.mu_star, "reference point mu* (default: chosen from the grid)");

  auto* weyl = app.add_subcommand("weyl", "Weyl function m(lambda) and m(-0)");
  add_weyl_options(weyl, cfg);
  add_output_option(weyl, cfg, "csv");
  weyl->add_option("--lambda", cfg.lambdas, "comma separated complex spectral points")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the built-in verification suite");
  verify->add_option("--example", cfg.example, "run only worked example 1 or 2")->check(CLI::Range(1, 2));
  verify->add_option("--criterion", cfg.criterion, "run only criterion 1..8")->check(CLI::Range(1, 8));
  verify->add_option("--seed", cfg.seed, "random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "lsys: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (*eval) return run_eval(cfg);
    if (*classify) return run_classify(cfg);
    if (*scan) return run_scan(cfg);
    if (*weyl) return run_weyl(cfg);
    if (*verify) return run_verify(cfg);
  } catch (const lsys::cli::ParseError& e) {
    std::cerr << "lsys: parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Failure& f) {
    std::cerr << "lsys: " << f.message << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "lsys: internal error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitInput;
}
