#pragma once

// Command pipelines behind the `arctic` tool. Kept in a header so the acceptance
// runner can drive the exact same code.

#include "arctic/curves.hpp"
#include "arctic/gv.hpp"
#include "arctic/models.hpp"
#include "arctic/oracle.hpp"
#include "arctic/svg.hpp"
#include "arctic/tangent.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef ARCTIC_VERSION
#define ARCTIC_VERSION "unknown"
#endif

namespace arctic::cli {

using json = nlohmann::ordered_json;

enum class Command { Verify, OnePoint, Oracle, Saddle, Envelope, Curve, Plot };

inline const char* command_name(Command c) {
  switch (c) {
    case Command::Verify: return "verify";
    case Command::OnePoint: return "onepoint";
    case Command::Oracle: return "oracle";
    case Command::Saddle: return "saddle";
    case Command::Envelope: return "envelope";
    case Command::Curve: return "curve";
    case Command::Plot: return "plot";
  }
  return "?";
}

struct GridSpec {
  std::optional<double> min, max;
  std::optional<int> count;
  std::optional<std::string> spacing;  // linear | log
};

struct RunConfig {
  Command command = Command::Verify;
  ModelId model = ModelId::Aztec;
  long n = 4;
  long k = 2;
  std::optional<long> l;
  double x = 1.0;  // Dyck / red shape parameter
  GridSpec grid;
  int samples = 1000;
  std::optional<double> tolerance;
  long crossover = 512;
  long long budget = default_oracle_budget;
  std::string json_path, csv_path, svg_path, dump_path;
};

struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class Report {
 public:
  void exact(const std::string& name, const ExactRational& expected, const ExactRational& actual) {
    add(name, to_string(expected), to_string(actual), 0.0, expected == actual);
  }
  void flag(const std::string& name, bool ok) { add(name, true, ok, 0.0, ok); }
  void close(const std::string& name, double expected, double actual, double tol) {
    add(name, expected, actual, tol, std::abs(expected - actual) <= tol);
  }
  void at_most(const std::string& name, double actual, double bound) { add(name, 0.0, actual, bound, actual <= bound); }

  bool pass() const {
    for (const auto& c : checks_)
      if (!c["pass"].get<bool>()) return false;
    return true;
  }
  size_t failures() const {
    size_t f = 0;
    for (const auto& c : checks_) f += c["pass"].get<bool>() ? 0 : 1;
    return f;
  }
  const json& checks() const { return checks_; }

 private:
  void add(const std::string& name, json expected, json actual, double tol, bool ok) {
    checks_.push_back({{"name", name}, {"expected", expected}, {"actual", actual}, {"tolerance", tol}, {"pass", ok}});
  }
  json checks_ = json::array();
};

inline std::vector<double> make_grid(double lo, double hi, int count, const std::string& spacing) {
  if (count < 1) throw usage_error("grid count must be >= 1");
  if (spacing != "linear" && spacing != "log") throw usage_error("spacing must be linear or log");
  if (spacing == "log" && !(lo > 0)) throw usage_error("log spacing needs a positive minimum");
  if (!(hi >= lo)) throw usage_error("grid max below min");
  std::vector<double> g;
  for (int i = 0; i < count; ++i) {
    double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    g.push_back(spacing == "log" ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
  }
  return g;
}

// Default parameter grid per model. The VSASM envelope grid is in t, all others in z (or y).
inline GridSpec default_grid(ModelId m, Command c) {
  const bool env = c == Command::Envelope || c == Command::Plot;
  const int count = env ? 200 : 16;
  switch (m) {
    case ModelId::Aztec: return {env ? 1.1 : 1.25, 5.0, count, "linear"};
    case ModelId::DyckHalfHex:
    case ModelId::RedHalfHex: return {env ? 1e-3 : 0.05, env ? 1e3 : 20.0, count, "log"};
    case ModelId::Staircase: return {env ? 1.05 : 1.25, env ? 6.0 : 5.0, count, "linear"};
    case ModelId::StaircaseAlt: return {env ? 1.005 : 1.1, env ? 2.0 : 1.95, count, "linear"};
    case ModelId::Vsasm: return env ? GridSpec{0.005, 0.995, count, "linear"} : GridSpec{0.25, 4.0, count, "log"};
  }
  return {};
}

inline std::vector<double> resolve_grid(const RunConfig& cfg) {
  GridSpec d = default_grid(cfg.model, cfg.command);
  return make_grid(cfg.grid.min.value_or(*d.min), cfg.grid.max.value_or(*d.max), cfg.grid.count.value_or(*d.count),
                   cfg.grid.spacing.value_or(*d.spacing));
}

inline ModelSize model_size(const RunConfig& cfg) {
  ModelSize s{cfg.model, cfg.n, cfg.k};
  switch (cfg.model) {
    case ModelId::Aztec:
    case ModelId::Staircase:
    case ModelId::StaircaseAlt:
      if (cfg.n < 1) throw usage_error("--n must be >= 1");
      break;
    case ModelId::DyckHalfHex:
    case ModelId::RedHalfHex:
      if (cfg.n < 0 || cfg.k < 1) throw usage_error("--n must be >= 0 and --k >= 1");
      break;
    case ModelId::Vsasm:
      if (cfg.n < 3 || cfg.n % 2 == 0) throw usage_error("vsasm --n is the matrix size: odd and >= 3");
      break;
  }
  return s;
}

inline json params_echo(const RunConfig& cfg) {
  json p = {{"n", cfg.n}};
  if (cfg.model == ModelId::DyckHalfHex || cfg.model == ModelId::RedHalfHex) {
    p["k"] = cfg.k;
    p["x"] = cfg.x;
  }
  if (cfg.l) p["l"] = *cfg.l;
  if (cfg.command == Command::Saddle || cfg.command == Command::Envelope || cfg.command == Command::Plot) {
    GridSpec d = default_grid(cfg.model, cfg.command);
    p["grid"] = {{"min", cfg.grid.min.value_or(*d.min)},
                 {"max", cfg.grid.max.value_or(*d.max)},
                 {"count", cfg.grid.count.value_or(*d.count)},
                 {"spacing", cfg.grid.spacing.value_or(*d.spacing)}};
  }
  if (cfg.command == Command::Curve) p["samples"] = cfg.samples;
  if (cfg.tolerance) p["tolerance"] = *cfg.tolerance;
  p["crossover"] = cfg.crossover;
  return p;
}

inline void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << body;
}

// ---------------------------------------------------------------- pipelines

inline ExactInteger two_pow_triangle(long n) {
  ExactInteger r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(n * (n + 1) / 2));
  return r;
}

inline void verify_profile(const ModelSize& s, Report& rep, std::ostringstream* csv) {
  if (csv) *csv << "l,H,H_double\n";
  for (long l = l_min(s); l <= l_max(s); ++l) {
    ExactRational h = closed_one_point(s, l);
    if (csv) *csv << l << "," << to_string(h) << "," << num(to_double(h)) << "\n";
    if (s.model == ModelId::Vsasm) continue;
    rep.exact("onepoint_det_ratio l=" + std::to_string(l), determinant_one_point(s, l), h);
    rep.exact("onepoint_lu_element l=" + std::to_string(l), lu_one_point(s, l), h);
  }
}

inline void run_verify(const RunConfig& cfg, Report& rep, std::ostringstream& csv) {
  ModelSize s = model_size(cfg);
  const long n = s.n, k = s.k;
  if (s.model == ModelId::Vsasm) {
    ExactInteger sum = 0;
    bool nonneg = true;
    for (long l = 1; l <= n; ++l) {
      ExactInteger r = n_vsasm_refined(n, l);
      nonneg = nonneg && r >= 0;
      sum += r;
    }
    rep.flag("refined_nonnegative", nonneg);
    rep.exact("refined_sum", n_vsasm(n), sum);
    rep.exact("generating_at_1", 1, vsasm_generating(n, 1));
    for (auto t : {make_rational(1, 3), make_rational(1, 2), ExactRational(1), ExactRational(2), ExactRational(3)}) {
      RazStrogSides rs = raz_strog_sides(n, t);
      rep.exact("raz_strog t=" + to_string(t), rs.rhs, rs.lhs);
    }
    verify_profile(s, rep, &csv);
    return;
  }
  ExactMatrix a = model_matrix(s);
  ExactRational det = det_bareiss(a);
  LUPair lu = lu_exact(a);
  rep.flag("lu_reproduces_matrix", lu.L * lu.U == a);
  ExactRational prod = 1;
  for (int i = 0; i < a.rows(); ++i) prod *= lu.U(i, i);
  rep.exact("det_bareiss_equals_lu_product", det, prod);
  ExactMatrix linv = model_closed_L_inv(s);
  ExactMatrix Lc = linv;  // overwritten below per model
  switch (s.model) {
    case ModelId::Aztec: {
      rep.exact("det_equals_tilings", two_pow_triangle(n), det);
      ClosedLU c = aztec_closed_lu(n);
      rep.flag("closed_L", c.L == lu.L);
      rep.flag("closed_U", c.U == lu.U);
      Lc = c.L;
      break;
    }
    case ModelId::DyckHalfHex: {
      rep.exact("det_equals_product", dyck_partition_product(n, k), det);
      LPair c = dyck_closed_L(n, k);
      rep.flag("closed_L", c.L == lu.L);
      bool diag = true;
      for (long i = 0; i <= n; ++i) diag = diag && lu.U(int(i), int(i)) == dyck_U_diag(i, k);
      rep.flag("closed_U_diagonal", diag);
      Lc = c.L;
      break;
    }
    case ModelId::RedHalfHex: {
      rep.exact("det_equals_product", red_partition(n, k), det);
      LPair c = red_closed_L(n, k);
      rep.flag("closed_L", c.L == lu.L);
      bool diag = true;
      for (long i = 0; i < k; ++i) diag = diag && lu.U(int(i), int(i)) == red_U_diag(i, n);
      rep.flag("closed_U_diagonal", diag);
      Lc = c.L;
      break;
    }
    case ModelId::Staircase:
    case ModelId::StaircaseAlt: {
      rep.exact("det_equals_power_of_two", two_pow_triangle(n), det);
      ClosedLU c = binomial_L(n);
      rep.flag("closed_L", c.L == lu.L);
      bool diag = true;
      for (long i = 0; i <= n; ++i) diag = diag && lu.U(int(i), int(i)) == pow2(i);
      rep.flag("closed_U_diagonal", diag);
      Lc = c.L;
      break;
    }
    case ModelId::Vsasm: break;
  }
  rep.flag("closed_L_inverse", linv * Lc == ExactMatrix::identity(Lc.rows()));
  verify_profile(s, rep, &csv);
}

inline void run_onepoint(const RunConfig& cfg, Report& rep, std::ostringstream& csv) {
  ModelSize s = model_size(cfg);
  OnePointProfile p = onepoint_profile(s);
  csv << "l,H,H_double\n";
  bool bounded = true;
  for (size_t i = 0; i < p.values.size(); ++i) {
    const ExactRational& h = p.values[i];
    long l = p.l_first + static_cast<long>(i);
    if (cfg.l && *cfg.l != l) continue;
    csv << l << "," << to_string(h) << "," << num(to_double(h)) << "\n";
    bounded = bounded && h >= 0 && h <= 1;
  }
  rep.flag("values_in_unit_interval", bounded);
  if (s.model != ModelId::Vsasm) rep.exact("reference_is_one", 1, p.at(l_reference(s)));
  if (s.model != ModelId::Vsasm && s.model != ModelId::DyckHalfHex) {
    int dir = (s.model == ModelId::Aztec || s.model == ModelId::StaircaseAlt) ? 1 : -1;
    bool mono = true;
    for (size_t i = 1; i < p.values.size(); ++i)
      mono = mono && (dir > 0 ? p.values[i] >= p.values[i - 1] : p.values[i] <= p.values[i - 1]);
    rep.flag(dir > 0 ? "nondecreasing_in_l" : "nonincreasing_in_l", mono);
  }
}

inline void run_oracle(const RunConfig& cfg, Report& rep, std::ostringstream& csv) {
  ModelSize s = model_size(cfg);
  if (s.model == ModelId::Vsasm) {
    VsasmEnumeration e = enumerate_vsasm(static_cast<int>(s.n));
    rep.exact("count_equals_product", n_vsasm(s.n), ExactInteger(static_cast<long>(e.matrices.size())));
    csv << "l,brute_force,formula\n";
    for (long l = 1; l <= s.n; ++l) {
      ExactInteger f = n_vsasm_refined(s.n, l);
      csv << l << "," << e.refined[static_cast<size_t>(l - 1)] << "," << f << "\n";
      rep.exact("refined l=" + std::to_string(l), f, e.refined[static_cast<size_t>(l - 1)]);
    }
    bool osc = true;
    for (const AsmMatrix& m : e.matrices) osc = osc && osculating_config_check(m);
    rep.flag("osculating_paths_consistent", osc);
    if (!cfg.dump_path.empty()) {
      std::ostringstream o;
      dump_ndjson(o, e.matrices);
      write_file(cfg.dump_path, o.str());
    }
    return;
  }
  ExitProblem e = model_exit_problem(s);
  ExactInteger nilp = count_nilp(e.spec, cfg.budget);
  rep.exact("nilp_equals_det", det_bareiss(model_matrix(s)), nilp);
  std::vector<ExitCount> ex = count_nilp_by_exit(e.spec, e.distinguished, e.exits, cfg.budget);
  const ExactInteger& ref = ex[static_cast<size_t>(l_reference(s) - e.l_first)].count;
  csv << "l,exit_x,exit_y,count,H\n";
  for (long l = l_min(s); l <= l_max(s); ++l) {
    const ExitCount& c = ex[static_cast<size_t>(l - e.l_first)];
    ExactRational h = make_rational(c.count, ref);
    csv << l << "," << c.exit.x << "," << c.exit.y << "," << c.count << "," << to_string(h) << "\n";
    rep.exact("exit_ratio l=" + std::to_string(l), closed_one_point(s, l), h);
  }
}

inline void run_saddle(const RunConfig& cfg, Report& rep, std::ostringstream& csv) {
  if (cfg.n < 64) throw usage_error("saddle needs --n >= 64");
  const double tol = cfg.tolerance.value_or(0.01);
  std::vector<double> grid = resolve_grid(cfg);
  SaddleScanner sc(cfg.model, {cfg.x}, cfg.n, cfg.crossover);
  csv << "z,xi_hat,xi_star,abs_err,plateau,degenerate\n";
  for (double z : grid) {
    SaddleResult r = sc.scan(z);
    double a = analytic_saddle(cfg.model, {cfg.x}, z);
    csv << num(z) << "," << num(r.xi_hat) << "," << num(a) << "," << num(std::abs(r.xi_hat - a)) << "," << r.plateau
        << "," << (r.degenerate ? 1 : 0) << "\n";
    rep.close("saddle z=" + num(z), a, r.xi_hat, tol);
  }
}

struct Pipeline {
  std::vector<double> grid;
  std::vector<TangentLine> lines;
  std::vector<EnvelopePoint> env;
  ImplicitCurve curve;
};

inline Pipeline build_pipeline(const RunConfig& cfg, bool need_envelope) {
  Pipeline p;
  p.grid = resolve_grid(cfg);
  p.lines = tangent_family(cfg.model, {cfg.x}, p.grid);
  if (need_envelope || p.lines.size() >= 3) p.env = envelope(p.lines);
  p.curve = curve_catalog(cfg.x).at(cfg.model);
  return p;
}

inline std::string pipeline_svg(const Pipeline& p) {
  std::vector<XY> pts;
  for (const auto& e : p.env) pts.push_back({e.p.x, e.p.y});
  return emit_svg(p.lines, pts, &p.curve, padded_window(p.curve));
}

inline void run_envelope(const RunConfig& cfg, Report& rep, std::ostringstream& csv, std::string& svg) {
  if (cfg.grid.count && *cfg.grid.count < 8) throw usage_error("envelope needs --count >= 8");
  const double tol = cfg.tolerance.value_or(1e-3);
  Pipeline p = build_pipeline(cfg, true);
  csv << "z,xi_star,slope,intercept,env_x,env_y,residual\n";
  double worst = 0;
  for (const EnvelopePoint& e : p.env) {
    const TangentLine& l = p.lines[e.index];
    double xi = cfg.model == ModelId::Vsasm ? l.exit.y
                : cfg.model == ModelId::Aztec || cfg.model == ModelId::Staircase || cfg.model == ModelId::StaircaseAlt
                    ? l.exit.x
                : cfg.model == ModelId::RedHalfHex ? l.exit.y / 2
                                                   : l.exit.y - 1;
    double r = residual(p.curve, {e.p.x, e.p.y});
    worst = std::max(worst, r);
    csv << num(l.z) << "," << num(xi) << "," << num(l.slope) << "," << num(l.intercept) << "," << num(e.p.x) << ","
        << num(e.p.y) << "," << num(r) << "\n";
  }
  rep.at_most("max_envelope_residual", worst, tol);
  svg = pipeline_svg(p);
}

inline void run_curve(const RunConfig& cfg, Report& rep, std::ostringstream& csv) {
  if (cfg.samples < 2) throw usage_error("--samples must be >= 2");
  const double tol = cfg.tolerance.value_or(1e-12);
  ImplicitCurve c = curve_catalog(cfg.x).at(cfg.model);
  std::function<XY(double)> f;
  double lo = 0, hi = 1;
  switch (cfg.model) {
    case ModelId::Aztec:
      f = [](double th) { return XY{std::sqrt(0.5) * std::cos(th), 1 + std::sqrt(0.5) * std::sin(th)}; };
      hi = 2 * M_PI;
      break;
    case ModelId::DyckHalfHex:
    case ModelId::RedHalfHex:
      f = [x = cfg.x](double th) { return ellipse_parametric(x, th); };
      hi = 2 * M_PI;
      break;
    case ModelId::Staircase:
    case ModelId::StaircaseAlt:
      f = &staircase_alt_parametric;  // z in [1, 2] sweeps the full arc (0,0) .. (3/2, 1)
      lo = 1;
      hi = 2;
      break;
    case ModelId::Vsasm: f = &vsasm_parametric; break;
  }
  csv << "t,x,y,residual\n";
  double worst = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    double t = lo + (hi - lo) * i / (cfg.samples - 1);
    XY q = f(t);
    double r = residual(c, q);
    worst = std::max(worst, r);
    csv << num(t) << "," << num(q.x) << "," << num(q.y) << "," << num(r) << "\n";
  }
  rep.at_most("max_parametric_residual", worst, tol);
  for (const TangencyPoint& t : tangency_points(cfg.model, cfg.x)) {
    rep.at_most("tangency " + t.label + " residual", residual(c, t.p), tol);
    rep.at_most("tangency " + t.label + " on boundary", std::abs(t.a * t.p.x + t.b * t.p.y + t.c), tol);
    XY g = c.gradient(t.p.x, t.p.y);
    if (t.a != 0 || t.b != 0)
      rep.at_most("tangency " + t.label + " touches boundary", std::abs(g.x * t.b - g.y * t.a) / std::hypot(g.x, g.y), tol);
    if (!std::isnan(t.slope)) {
      rep.close("tangency " + t.label + " slope", t.slope, -g.x / g.y, tol);
    }
  }
}

// Runs one command. The JSON report goes to `out` (and to --json if given);
// returns 0 when every check passes, 1 otherwise, 2 on a usage error.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  json doc;
  doc["command"] = command_name(cfg.command);
  doc["model"] = model_name(cfg.model);
  doc["version"] = ARCTIC_VERSION;
  Report rep;
  std::ostringstream csv;
  std::string svg;
  json artifacts = json::array();
  try {
    doc["params"] = params_echo(cfg);
    switch (cfg.command) {
      case Command::Verify: run_verify(cfg, rep, csv); break;
      case Command::OnePoint: run_onepoint(cfg, rep, csv); break;
      case Command::Oracle: run_oracle(cfg, rep, csv); break;
      case Command::Saddle: run_saddle(cfg, rep, csv); break;
      case Command::Envelope: run_envelope(cfg, rep, csv, svg); break;
      case Command::Curve: run_curve(cfg, rep, csv); break;
      case Command::Plot: {
        svg = pipeline_svg(build_pipeline(cfg, false));
        break;
      }
    }
    if (!cfg.csv_path.empty() && !csv.str().empty()) {
      write_file(cfg.csv_path, csv.str());
      artifacts.push_back(cfg.csv_path);
    }
    if (!cfg.svg_path.empty() && !svg.empty()) {
      write_file(cfg.svg_path, svg);
      artifacts.push_back(cfg.svg_path);
    }
    if (!cfg.dump_path.empty() && cfg.command == Command::Oracle && cfg.model == ModelId::Vsasm)
      artifacts.push_back(cfg.dump_path);
  } catch (const usage_error& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const budget_error& e) {
    doc["error"] = e.what();
    rep.flag("within_budget", false);
  } catch (const domain_error& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  doc["checks"] = rep.checks();
  doc["artifacts"] = artifacts;
  doc["pass"] = rep.pass();
  std::string body = doc.dump(2) + "\n";
  if (!cfg.json_path.empty()) write_file(cfg.json_path, body);
  out << body;
  return rep.pass() ? 0 : 1;
}

}  // namespace arctic::cli
