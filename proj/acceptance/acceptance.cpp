// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance [--criterion N] [--workdir DIR]

#include "arctic/cli.hpp"
#include "arctic/curves.hpp"
#include "arctic/gv.hpp"
#include "arctic/models.hpp"
#include "arctic/oracle.hpp"
#include "arctic/tangent.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#ifndef ARCTIC_CLI_PATH
#define ARCTIC_CLI_PATH "arctic"
#endif

using namespace arctic;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> notes;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double v) {
  char b[64];
  std::snprintf(b, sizeof b, f, v);
  return b;
}

// tallies exact comparisons and keeps the first mismatch
struct Tally {
  long checked = 0, failed = 0;
  std::string first;
  void operator()(bool ok, const std::string& what) {
    ++checked;
    if (!ok && failed++ == 0) first = what;
  }
  std::string text() const {
    return std::to_string(checked - failed) + "/" + std::to_string(checked) + " exact" +
           (failed ? ", first mismatch " + first : "");
  }
};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}
std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a * std::pow(b / a, static_cast<double>(i) / (n - 1)));
  return v;
}

ExactInteger two_pow(long e) {
  ExactInteger r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return r;
}

std::string tag(const ModelSize& s) {
  return std::string(model_name(s.model)) + " n=" + std::to_string(s.n) + " k=" + std::to_string(s.k);
}

std::vector<ModelSize> oracle_sizes() {
  std::vector<ModelSize> v;
  for (long n = 1; n <= 4; ++n) {
    v.push_back({ModelId::Aztec, n, 1});
    v.push_back({ModelId::Staircase, n, 1});
    v.push_back({ModelId::StaircaseAlt, n, 1});
  }
  for (long n = 0; n <= 3; ++n)
    for (long k = 1; k <= 3; ++k) {
      v.push_back({ModelId::DyckHalfHex, n, k});
      v.push_back({ModelId::RedHalfHex, n, k});
    }
  return v;
}

// ---------------------------------------------------------------- 1

Outcome criterion1() {
  Timer t;
  Tally tally;
  for (long n = 1; n <= 40; ++n) {
    ExactRational want(two_pow(n * (n + 1) / 2));
    tally(det_bareiss(aztec_matrix(n)) == want, "aztec n=" + std::to_string(n));
    tally(det_bareiss(staircase_matrix(n)) == want, "staircase n=" + std::to_string(n));
    tally(det_bareiss(staircase_alt_matrix(n)) == want, "staircase-alt n=" + std::to_string(n));
  }
  for (long n = 0; n <= 12; ++n)
    for (long k = 1; k <= 12; ++k) {
      std::string at = " n=" + std::to_string(n) + " k=" + std::to_string(k);
      tally(det_bareiss(dyck_matrix(n, k)) == dyck_partition_product(n, k), "dyck" + at);
      tally(det_bareiss(red_matrix(n, k)) == ExactRational(red_partition(n, k)), "red" + at);
    }
  for (long n = 0; n <= 20; ++n)
    for (long k = 1; k <= 20; ++k)
      tally(dyck_partition_product(n, k) == ExactRational(red_partition(n, k)),
            "product identity n=" + std::to_string(n) + " k=" + std::to_string(k));
  double s = t.seconds();
  Outcome o;
  o.pass = tally.failed == 0 && s < 60;
  o.summary = tally.text() + ", " + fmt("%.2f s", s) + " (limit 60 s)";
  return o;
}

// ---------------------------------------------------------------- 2

Outcome criterion2() {
  Tally tally;
  for (const ModelSize& s : oracle_sizes())
    tally(ExactRational(count_nilp(model_exit_problem(s).spec)) == det_bareiss(model_matrix(s)), tag(s));
  return {tally.failed == 0, "path families counted by brute force vs determinant: " + tally.text(), {}};
}

// ---------------------------------------------------------------- 3

Outcome criterion3() {
  Tally tally;
  for (const ModelSize& s : oracle_sizes())
    for (long l = l_min(s); l <= l_max(s); ++l) {
      ExactRational h = closed_one_point(s, l);
      std::string at = tag(s) + " l=" + std::to_string(l);
      tally(h == determinant_one_point(s, l), at + " (det ratio)");
      tally(h == lu_one_point(s, l), at + " (LU element)");
    }
  Outcome o{tally.failed == 0, "closed-form H vs determinant ratio and LU element: " + tally.text(), {}};
  long bad = 0, tot = 0;
  for (long n = 0; n <= 3; ++n)
    for (long k = 2; k <= 3; ++k)
      for (long l = 0; l <= n + 1; ++l) {
        ++tot;
        if (red_one_point_shifted(n, k, l) != determinant_one_point({ModelId::RedHalfHex, n, k}, l)) ++bad;
      }
  o.notes.push_back("red paths use sum C(k+n-s-1,k-2) C(k+n+s,k-2); the variant with indices shifted by one "
                    "disagrees with the determinant ratio at " + std::to_string(bad) + "/" + std::to_string(tot) +
                    " points with k in {2, 3}, e.g. " + to_string(red_one_point_shifted(1, 3, 0)) + " at n=1 k=3 l=0");
  return o;
}

// ---------------------------------------------------------------- 4

using Series = std::vector<ExactInteger>;

Series power_series(long len, long power, bool inverse) {
  // (1 + x)^power, or 1/(1 - x)^power, truncated to len terms
  Series s(static_cast<size_t>(len), 0);
  s[0] = 1;
  for (long r = 0; r < power; ++r) {
    if (inverse)
      for (size_t i = 1; i < s.size(); ++i) s[i] += s[i - 1];
    else
      for (size_t i = s.size() - 1; i >= 1; --i) s[i] += s[i - 1];
  }
  return s;
}

Outcome criterion4() {
  Tally slem, tlem, pols, four, inv;
  for (long n = 0; n <= 8; ++n)
    for (long l = 0; l <= n; ++l)
      for (long k = 1; k <= 8; ++k) slem(slem_sum(n, k, l) == binomial(2 * n + 2 * k, n + l), "n,k,l");
  for (long n = 0; n <= 6; ++n)
    for (long l = n + 1; l <= n + 6; ++l)
      for (long j = 1; j <= n + 1; ++j) tlem(tlem_ratio(n, l, j) == 1, "n=" + std::to_string(n));
  for (long n = 0; n <= 5; ++n)
    for (long l = 0; l <= n + 4; ++l)
      for (long j = 1; j <= n + 1; ++j) {
        ExactRational k = -j - n, v = pols_value(n, l, j);
        pols(pols_P(n, l, k) == v && pols_Q(n, l, k) == v, "n=" + std::to_string(n) + " l=" + std::to_string(l));
      }
  for (long n = 0; n <= 20; ++n) {
    Series p = power_series(n + 1, n, false);
    for (long k = 0; k <= n; ++k) {
      ExactInteger b = binomial(n, k);
      Series a = power_series(n + 1, k + 1, true), c = power_series(n + 1, n - k + 1, true);
      four(p[static_cast<size_t>(k)] == b && p[static_cast<size_t>(n - k)] == b && a[static_cast<size_t>(n - k)] == b &&
               c[static_cast<size_t>(k)] == b,
           "n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
    for (long a = 1; a <= 6; ++a)
      inv(inverse_binomial_sum(n, a) * ExactRational(binomial(n + a, a)) == 1,
          "n=" + std::to_string(n) + " a=" + std::to_string(a));
  }
  bool ok = !slem.failed && !tlem.failed && !pols.failed && !four.failed && !inv.failed;
  return {ok,
          "slem " + slem.text() + "; tlem " + tlem.text() + "; pols " + pols.text() + "; four extractions " +
              four.text() + "; inverse binomial " + inv.text(),
          {}};
}

// ---------------------------------------------------------------- 5

Outcome criterion5() {
  Timer t;
  Tally tally;
  std::string counts;
  for (int n = 1; n <= 5; ++n) {
    size_t c = enumerate_asm(n).size();
    tally(ExactInteger(static_cast<long>(c)) == n_asm(n), "asm n=" + std::to_string(n));
    counts += (n > 1 ? "," : "") + std::to_string(c);
  }
  counts += "; vsasm ";
  for (int size : {3, 5, 7}) {
    VsasmEnumeration e = enumerate_vsasm(size);
    tally(ExactInteger(static_cast<long>(e.matrices.size())) == n_vsasm(size), "vsasm size=" + std::to_string(size));
    counts += (size > 3 ? "," : "") + std::to_string(e.matrices.size());
    if (size >= 5)
      for (int l = 1; l <= size; ++l)
        tally(e.refined[static_cast<size_t>(l - 1)] == n_vsasm_refined(size, l),
              "refined size=" + std::to_string(size) + " l=" + std::to_string(l));
  }
  for (long size : {5L, 7L, 9L})
    for (auto tv : {make_rational(1, 3), make_rational(1, 2), ExactRational(1), ExactRational(2), ExactRational(3)})
      tally(raz_strog_check(size, tv), "raz-strog size=" + std::to_string(size) + " t=" + to_string(tv));
  double s = t.seconds();
  return {tally.failed == 0 && s < 300, "asm " + counts + "; " + tally.text() + ", " + fmt("%.2f s", s) + " (limit 300 s)", {}};
}

// ---------------------------------------------------------------- 6

struct ScanCase {
  ModelId m;
  double x;
  std::vector<double> grid;
  std::function<double(double)> target;
  std::string label;
};

Outcome criterion6() {
  Timer t;
  const ScaledParams one{1.0};
  std::vector<ScanCase> cases = {
      {ModelId::Aztec, 1, linspace(1.25, 5, 16), [](double z) { return 1 / (2 * z); }, "aztec"},
      {ModelId::Staircase, 1, linspace(1.25, 5, 16), [](double z) { return staircase_printed_saddle(z); }, "staircase"},
      {ModelId::StaircaseAlt, 1, linspace(1.1, 1.95, 16), [](double z) { return 2 - z / 2; }, "staircase-alt"},
      {ModelId::DyckHalfHex, 1, logspace(0.05, 20, 16), [&](double y) { return analytic_saddle(ModelId::DyckHalfHex, one, y); }, "dyck"},
      {ModelId::RedHalfHex, 1, logspace(0.05, 20, 16), [&](double y) { return analytic_saddle(ModelId::RedHalfHex, one, y); }, "red"},
      {ModelId::Vsasm, 1, logspace(0.25, 4, 16), [&](double z) { return analytic_saddle(ModelId::Vsasm, one, z); }, "vsasm"},
  };
  Outcome o;
  std::string parts;
  double corrected = 0;
  for (const ScanCase& c : cases) {
    SaddleScanner sc(c.m, {c.x}, 4096);
    double worst = 0;
    for (double z : c.grid) {
      SaddleResult r = sc.scan(z);
      worst = std::max(worst, std::abs(r.xi_hat - c.target(z)));
      if (c.m == ModelId::Staircase) corrected = std::max(corrected, std::abs(r.xi_hat - analytic_saddle(c.m, one, z)));
    }
    bool ok = worst <= 0.01;
    o.pass = o.pass && ok;
    parts += (parts.empty() ? "" : ", ") + c.label + " " + fmt("%.2e", worst) + (ok ? "" : " FAIL");
  }
  double s = t.seconds();
  o.pass = o.pass && s < 120;
  o.summary = "worst |xi_hat - xi*| at n=4096 (limit 0.01): " + parts + "; " + fmt("%.1f s", s) + " (limit 120 s)";
  o.notes.push_back("staircase target is the relation z = (1-xi)^2/(2-xi); it gives sqrt(3) at z = 2 while the "
                    "finite-n argmax sits at the golden ratio");
  o.notes.push_back("staircase against z = 2(1-xi)^2/(2-xi), the relation obtained by differentiating the action: worst " +
                    fmt("%.2e", corrected) + (corrected <= 0.01 ? " (within 0.01)" : " (outside 0.01)"));
  return o;
}

// ---------------------------------------------------------------- 7

double worst_residual(ModelId m, double x, const std::vector<double>& grid, std::vector<EnvelopePoint>* keep = nullptr) {
  ImplicitCurve c = curve_catalog(x).at(m);
  auto env = envelope(tangent_family(m, {x}, grid));
  double w = 0;
  for (const auto& e : env) w = std::max(w, residual(c, {e.p.x, e.p.y}));
  if (keep) *keep = env;
  return w;
}

Outcome criterion7() {
  Outcome o;
  std::string parts;
  auto add = [&](const std::string& label, double w) {
    bool ok = w <= 1e-3;
    o.pass = o.pass && ok;
    parts += (parts.empty() ? "" : ", ") + label + " " + fmt("%.1e", w) + (ok ? "" : " FAIL");
  };
  add("circle", worst_residual(ModelId::Aztec, 1, linspace(1.1, 5, 200)));
  for (double x : {0.5, 1.0, 2.0}) {
    add("ellipse dyck x=" + fmt("%g", x), worst_residual(ModelId::DyckHalfHex, x, logspace(1e-3, 1e3, 200)));
    add("ellipse red x=" + fmt("%g", x), worst_residual(ModelId::RedHalfHex, x, logspace(1e-3, 1e3, 200)));
  }
  add("parabola staircase", worst_residual(ModelId::Staircase, 1, linspace(1.05, 6, 200)));
  add("parabola staircase-alt", worst_residual(ModelId::StaircaseAlt, 1, linspace(1.005, 2, 200)));
  add("vsasm", worst_residual(ModelId::Vsasm, 1, linspace(0.005, 0.995, 200)));
  // the two staircase arcs are complementary; both must end at the same point (3/2, 1)
  double gap = 0;
  for (ModelId m : {ModelId::Staircase, ModelId::StaircaseAlt}) {
    std::vector<EnvelopePoint> env;
    worst_residual(m, 1, {1 + 1e-4, 1 + 2e-4, 1 + 3e-4}, &env);
    gap = std::max(gap, std::hypot(env[0].p.x - 1.5, env[0].p.y - 1));
  }
  bool joined = gap <= 1e-3;
  o.pass = o.pass && joined;
  o.summary = "max residual (limit 1e-3): " + parts + "; parabola arcs meet at (3/2, 1) within " + fmt("%.1e", gap) +
              (joined ? "" : " FAIL");
  return o;
}

// ---------------------------------------------------------------- 8

Outcome criterion8() {
  Outcome o;
  double w = 0;
  ImplicitCurve v = vsasm_curve();
  for (int i = 0; i < 1000; ++i) w = std::max(w, residual(v, vsasm_parametric(i / 999.0)));
  bool ok = w <= 1e-12;
  std::string parts = "vsasm parametric, 1000 samples: " + fmt("%.1e", w);
  double tw = 0;
  long count = 0;
  auto check = [&](ModelId m, double x, const std::vector<std::string>& labels) {
    ImplicitCurve c = curve_catalog(x).at(m);
    for (const TangencyPoint& t : tangency_points(m, x))
      for (const auto& l : labels)
        if (t.label == l) {
          tw = std::max(tw, residual(c, t.p));
          ++count;
        }
  };
  for (double x : {0.5, 1.0, 2.0}) check(ModelId::DyckHalfHex, x, {"B"});
  check(ModelId::Staircase, 1, {"origin", "right"});
  check(ModelId::Aztec, 1, {"NE", "NW", "SE", "SW"});
  check(ModelId::Vsasm, 1, {"bottom", "right"});
  ok = ok && tw <= 1e-12 && count == 11;
  o.pass = ok;
  o.summary = parts + "; " + std::to_string(count) + " tangency points: " + fmt("%.1e", tw) + " (limit 1e-12)";
  return o;
}

// ---------------------------------------------------------------- 9

struct CliRun {
  std::string args;
  std::vector<std::string> files;
};

std::vector<CliRun> suite(const fs::path& d) {
  std::vector<CliRun> runs;
  auto p = [&](const std::string& f) { return (d / f).string(); };
  const std::vector<std::pair<std::string, std::string>> models = {
      {"aztec", "--n 6"},     {"dyck", "--n 3 --k 3"}, {"red", "--n 3 --k 3"},
      {"staircase", "--n 5"}, {"staircase-alt", "--n 5"}, {"vsasm", "--n 7"}};
  for (const auto& [m, size] : models) {
    for (const std::string cmd : {"verify", "onepoint"}) {
      std::string b = cmd + "-" + m;
      runs.push_back({cmd + " --model " + m + " " + size + " --json " + p(b + ".json") + " --csv " + p(b + ".csv"),
                      {b + ".json", b + ".csv"}});
    }
    std::string b = "oracle-" + m;
    std::string osize = m == "vsasm" ? "--n 5" : m == "aztec" ? "--n 3" : m == "dyck" || m == "red" ? "--n 2 --k 2" : "--n 3";
    CliRun o{"oracle --model " + m + " " + osize + " --json " + p(b + ".json") + " --csv " + p(b + ".csv"),
             {b + ".json", b + ".csv"}};
    if (m == "vsasm") {
      o.args += " --dump " + p(b + ".ndjson");
      o.files.push_back(b + ".ndjson");
    }
    runs.push_back(o);
    b = "saddle-" + m;
    runs.push_back({"saddle --model " + m + " --n 4096 --json " + p(b + ".json") + " --csv " + p(b + ".csv"),
                    {b + ".json", b + ".csv"}});
    b = "envelope-" + m;
    runs.push_back({"envelope --model " + m + " --json " + p(b + ".json") + " --csv " + p(b + ".csv") + " --svg " +
                        p(b + ".svg"),
                    {b + ".json", b + ".csv", b + ".svg"}});
    b = "curve-" + m;
    runs.push_back({"curve --model " + m + " --json " + p(b + ".json") + " --csv " + p(b + ".csv"),
                    {b + ".json", b + ".csv"}});
    b = "plot-" + m;
    runs.push_back({"plot --model " + m + " --json " + p(b + ".json") + " --svg " + p(b + ".svg"),
                    {b + ".json", b + ".svg"}});
  }
  return runs;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) return "<missing>";
  return {std::istreambuf_iterator<char>(f), {}};
}

Outcome criterion9(const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto runs = suite(dir);
  std::map<std::string, std::string> first;
  long files = 0, differ = 0, failed_runs = 0;
  std::string first_diff;
  for (int pass = 0; pass < 2; ++pass)
    for (const CliRun& r : runs) {
      std::string cmd = std::string(ARCTIC_CLI_PATH) + " " + r.args + " > /dev/null 2>&1";
      int st = std::system(cmd.c_str());
      if (!(WIFEXITED(st) && WEXITSTATUS(st) == 0) && pass == 0) {
        ++failed_runs;
        std::cout << "  note: nonzero exit from: arctic " << r.args << "\n";
      }
      for (const std::string& f : r.files) {
        std::string body = slurp(dir / f);
        if (pass == 0) {
          first[f] = body;
          ++files;
        } else if (first[f] != body && differ++ == 0) {
          first_diff = f;
        }
      }
    }
  Outcome o;
  o.pass = differ == 0 && failed_runs == 0;
  o.summary = std::to_string(runs.size()) + " CLI runs, " + std::to_string(files) + " artifacts, " +
              std::to_string(files - differ) + " byte-identical on rerun" +
              (differ ? ", first difference " + first_diff : "") +
              (failed_runs ? ", " + std::to_string(failed_runs) + " runs exited nonzero" : "");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  fs::path workdir = fs::current_path() / "acceptance_artifacts";
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (a == "--workdir" && i + 1 < argc) workdir = argv[++i];
    else {
      std::cerr << "usage: acceptance [--criterion 1..9] [--workdir DIR]\n";
      return 2;
    }
  }
  if (only < 0 || only > 9) {
    std::cerr << "criterion must be 1..9\n";
    return 2;
  }
  std::vector<std::function<Outcome()>> crit = {
      criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8,
      [&] { return criterion9(workdir / "c9"); }};
  bool all = true;
  for (int c = 1; c <= 9; ++c) {
    if (only && c != only) continue;
    Outcome o;
    try {
      o = crit[static_cast<size_t>(c - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), {}};
    }
    std::cout << "criterion " << c << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.summary << "\n";
    for (const auto& n : o.notes) std::cout << "  note: " << n << "\n";
    std::cout.flush();
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
