#pragma once

#include "arctic/kernel.hpp"
#include "arctic/models.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace arctic {

struct Vec2 {
  double x = 0, y = 0;
};

// x is the Dyck / red-path shape parameter k/n; other models ignore it
struct ScaledParams {
  double x = 1.0;
};

struct ActionValue {
  double s0 = 0;  // (1/n) log H
  double s1 = 0;  // (1/n) log Y
  double total = 0;
};

struct SaddleResult {
  double z = 0;
  double xi_hat = 0;
  double log_mass = 0;
  long n_used = 0;
  long l_star = 0;
  long plateau = 1;  // grid points tied with the max
  bool degenerate = false;
  ActionValue action;
};

struct TangentLine {
  double z = 0;
  double slope = 0, intercept = 0;
  Vec2 exit, target;
};

inline TangentLine line_through(double z, Vec2 a, Vec2 b) {
  if (a.x == b.x) throw domain_error("line_through: vertical line");
  double s = (b.y - a.y) / (b.x - a.x);
  return {z, s, a.y - s * a.x, a, b};
}

// (sqrt(t^2 - t + 1) - 1)/(t - 1), rationalized so t = 1 needs no special case
inline double r_asm(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw domain_error("r_asm: need t in [0, 1]");
  return t / (std::sqrt(t * t - t + 1.0) + 1.0);
}

namespace detail {

template <class F>
double bisect(F&& f, double lo, double hi, int iters = 200) {
  double flo = f(lo);
  for (int i = 0; i < iters && hi - lo > 0; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double dyck_cubic(double x, double y, double xi) {
  return (y + xi) * (1 + xi) * (1 + x - xi) - xi * (2 * x + 1 - xi) * (xi - 1);
}

}  // namespace detail

// t(z) for the VSASM family: the fixed point t = (1 - r(t)) / (1 - r(t) + z)
inline double vsasm_t_of_z(double z) {
  if (!(z > 0)) throw domain_error("vsasm_t_of_z: need z > 0");
  auto g = [z](double t) {
    double r = r_asm(t);
    return t - (1 - r) / (1 - r + z);
  };
  return detail::bisect(g, 0.0, 1.0, 200);
}

inline double vsasm_z_of_t(double t) {
  if (!(t > 0 && t < 1)) throw domain_error("vsasm_z_of_t: need t in (0, 1)");
  return (1 - r_asm(t)) * (1 - t) / t;
}

inline double staircase_printed_saddle(double z) {
  // inverse of z = (1 - xi)^2 / (2 - xi) on (3/2, 2)
  if (!(z > 1)) throw domain_error("staircase_printed_saddle: need z > 1");
  return ((2 - z) + std::sqrt(z * z + 4 * z)) / 2;
}

// z is the model's scaled target: Aztec k/n, Dyck and red p/n (the y of the
// ellipse construction), staircase p/n, VSASM k/n
inline double analytic_saddle(ModelId m, const ScaledParams& sp, double z) {
  const double x = sp.x;
  switch (m) {
    case ModelId::Aztec:
      if (!(z > 1)) throw domain_error("analytic_saddle: Aztec needs z > 1");
      return 1 / (2 * z);
    case ModelId::DyckHalfHex: {
      if (!(x > 0) || !(z >= 0)) throw domain_error("analytic_saddle: Dyck needs x > 0, y >= 0");
      double lo = (2 + 3 * x) / (2 + x);
      if (z == 0) return lo;
      return detail::bisect([&](double xi) { return detail::dyck_cubic(x, z, xi); }, lo, 1 + x);
    }
    case ModelId::RedHalfHex: {
      if (!(x > 0) || !(z > 0)) throw domain_error("analytic_saddle: red paths need x, y > 0");
      double a = 2 * x + z, b = x * z, c = -z * (1 + x);
      return (-b + std::sqrt(b * b - 4 * a * c)) / (2 * a);
    }
    case ModelId::Staircase:
      if (!(z > 1)) throw domain_error("analytic_saddle: staircase needs z > 1");
      return ((4 - z) + std::sqrt(z * z + 8 * z)) / 4;
    case ModelId::StaircaseAlt:
      if (!(z > 1 && z <= 2)) throw domain_error("analytic_saddle: staircase-alt needs 1 < z <= 2");
      return 2 - z / 2;
    case ModelId::Vsasm:
      return r_asm(vsasm_t_of_z(z));
  }
  throw domain_error("analytic_saddle: unknown model");
}

// scaled exit and target of the line for parameter z at saddle xi
inline std::pair<Vec2, Vec2> line_points(ModelId m, const ScaledParams& sp, double z, double xi) {
  const double x = sp.x;
  switch (m) {
    case ModelId::Aztec: return {{xi, 2 - xi}, {z, z}};
    case ModelId::DyckHalfHex: return {{2 * x + 1 - xi, 1 + xi}, {2 * x + 1 + z, 1 + z}};
    case ModelId::RedHalfHex: return {{2 * x, 2 * xi}, {2 * x + z, -z}};
    case ModelId::Staircase: return {{xi, 1}, {0, z}};
    case ModelId::StaircaseAlt: return {{xi, 1}, {2, z}};
    case ModelId::Vsasm: return {{1, xi}, {1 + z, 1}};
  }
  throw domain_error("line_points: unknown model");
}

// For VSASM the grid holds t in (0, 1); for the others it holds z.
inline std::vector<TangentLine> tangent_family(ModelId m, const ScaledParams& sp, const std::vector<double>& grid) {
  if (grid.empty()) throw domain_error("tangent_family: empty grid");
  std::vector<TangentLine> out;
  out.reserve(grid.size());
  for (double g : grid) {
    double z = m == ModelId::Vsasm ? vsasm_z_of_t(g) : g;
    double xi = m == ModelId::Vsasm ? r_asm(g) : analytic_saddle(m, sp, z);
    auto [a, b] = line_points(m, sp, z, xi);
    out.push_back(line_through(z, a, b));
  }
  return out;
}

struct EnvelopePoint {
  Vec2 p;
  double z = 0;
  double condition = 0;
  size_t index = 0;  // line index in the family
};

// F(x, y; z) = slope(z) x + intercept(z) - y. For each interior line solve F = 0
// together with the central difference of F in z.
inline std::vector<EnvelopePoint> envelope(const std::vector<TangentLine>& lines) {
  if (lines.size() < 3) throw domain_error("envelope: need at least 3 lines");
  std::vector<EnvelopePoint> out;
  for (size_t i = 1; i + 1 < lines.size(); ++i) {
    const TangentLine &a = lines[i - 1], &c = lines[i], &b = lines[i + 1];
    double da = b.slope - a.slope, db = b.intercept - a.intercept;
    if (da == 0 || !std::isfinite(da)) throw domain_error("envelope: parallel neighbours at index " + std::to_string(i));
    double x = -db / da;
    double y = c.slope * x + c.intercept;
    // system [[slope, -1], [da, 0]]; 2-norm condition number from its singular values
    double m11 = c.slope, m12 = -1, m21 = da, m22 = 0;
    double fro2 = m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22;
    double det = std::abs(m11 * m22 - m12 * m21);
    double disc = std::sqrt(std::max(0.0, fro2 * fro2 - 4 * det * det));
    double smax = std::sqrt((fro2 + disc) / 2), smin = std::sqrt(std::max(0.0, (fro2 - disc) / 2));
    out.push_back({{x, y}, c.z, smin > 0 ? smax / smin : std::numeric_limits<double>::infinity(), i});
  }
  return out;
}

// ---------------------------------------------------------------- finite-n scans

class SaddleScanner {
 public:
  SaddleScanner(ModelId m, const ScaledParams& sp, long n, long crossover = 512) : m_(m), sp_(sp), n_(n) {
    if (n < 64) throw domain_error("finite_n_saddle: need n >= 64");
    ModelSize size{m, n, 1};
    if (m == ModelId::DyckHalfHex || m == ModelId::RedHalfHex) {
      if (!(sp.x > 0)) throw domain_error("finite_n_saddle: need x > 0");
      k_ = std::max(1L, std::lround(sp.x * static_cast<double>(n)));
      if (m == ModelId::RedHalfHex) k_ = std::max(2L, k_);
      size.k = k_;
    }
    if (m == ModelId::Vsasm) {
      size.n = n_used_ = 2 * (n / 2) + 1;
    } else {
      n_used_ = n;
    }
    logH_ = log_profile(size, crossover);
    l0_ = l_min(size);
  }

  long n_used() const { return n_used_; }
  const std::vector<double>& log_profile_values() const { return logH_; }

  SaddleResult scan(double z) const {
    const double ninf = -std::numeric_limits<double>::infinity();
    const long n = n_used_;
    const double nd = static_cast<double>(n);
    long t = std::lround(z * nd);  // scaled target in lattice units
    switch (m_) {
      case ModelId::Aztec:
      case ModelId::Staircase:
        if (!(z > 1) || t <= n) throw domain_error("finite_n_saddle: need z > 1");
        break;
      case ModelId::StaircaseAlt:
        if (!(z > 1 && z <= 2) || t <= n || t > 2 * n) throw domain_error("finite_n_saddle: need 1 < z <= 2");
        break;
      case ModelId::DyckHalfHex:
      case ModelId::RedHalfHex:
      case ModelId::Vsasm:
        if (!(z > 0) || t < 1) throw domain_error("finite_n_saddle: need z > 0");
        break;
    }
    LogFactorialTable lf(4 * (n + k_ + t) + 16);
    auto logA = [&](long i, long j) {  // Schroeder entry
      if (i < 0 || j < 0) return ninf;
      std::vector<double> terms;
      terms.reserve(static_cast<size_t>(std::min(i, j) + 1));
      for (long p = 0; p <= std::min(i, j); ++p) terms.push_back(lf(i + j - p) - lf(p) - lf(i - p) - lf(j - p));
      return log_sum_exp(terms);
    };
    auto logY = [&](long l) -> double {
      switch (m_) {
        case ModelId::Aztec: return log_add(logA(n - l, t - n - 1), logA(n - l - 1, t - n - 1));
        case ModelId::DyckHalfHex:
        case ModelId::RedHalfHex: return lf.log_binom(t + l - 1, l);
        case ModelId::Staircase: return lf.log_binom(t - n - 1 + l, l);
        case ModelId::StaircaseAlt: return l >= 2 * n ? ninf : lf.log_binom(2 * n - l - 1, t - n - 1);
        case ModelId::Vsasm: {
          std::vector<double> terms;
          for (long q = 0; q <= std::min(t - 1, n - l); ++q) terms.push_back(lf.log_binom(t - 1, q) + lf.log_binom(n - l, q));
          return log_sum_exp(terms);
        }
      }
      return ninf;
    };
    std::vector<double> v(logH_.size(), ninf), vy(logH_.size(), ninf);
    size_t best = 0;
    for (size_t i = 0; i < logH_.size(); ++i) {
      if (logH_[i] == ninf) continue;
      vy[i] = logY(l0_ + static_cast<long>(i));
      v[i] = logH_[i] + vy[i];
      if (v[i] > v[best] || v[best] == ninf) best = i;
    }
    if (v[best] == ninf) throw domain_error("finite_n_saddle: no admissible exit");
    const double tol = 1e-12 * std::max(1.0, std::abs(v[best]));
    long plateau = 1;
    for (size_t j = best + 1; j < v.size() && std::abs(v[j] - v[best]) <= tol; ++j) ++plateau;
    SaddleResult r;
    r.z = z;
    r.l_star = l0_ + static_cast<long>(best);
    r.xi_hat = static_cast<double>(r.l_star) / nd;
    r.log_mass = v[best];
    r.n_used = n;
    r.plateau = plateau;
    r.degenerate = plateau > 3;
    r.action = {logH_[best] / nd, vy[best] / nd, v[best] / nd};
    return r;
  }

 private:
  ModelId m_;
  ScaledParams sp_;
  long n_ = 0, n_used_ = 0, k_ = 1, l0_ = 0;
  std::vector<double> logH_;
};

inline SaddleResult finite_n_saddle(ModelId m, const ScaledParams& sp, long n, double z, long crossover = 512) {
  return SaddleScanner(m, sp, n, crossover).scan(z);
}

// ---------------------------------------------------------------- free weighted path

struct WeightedStep {
  long dx = 0, dy = 0;
  double weight = 1.0;
};

struct MidpointResult {
  Vec2 scaled;          // argmax / n
  double deviation = 0; // distance of `scaled` from the chord, scaled units
};

// argmax over points half way (in progress) between the origin and the endpoint of
// log Z(0 -> m) + log Z(m -> end)
inline MidpointResult free_path_midpoint(const std::vector<WeightedStep>& steps, std::pair<long, long> endpoint, long n) {
  if (n < 1) throw domain_error("free_path_midpoint: need n >= 1");
  if (steps.empty()) throw domain_error("free_path_midpoint: empty step set");
  // progress functional: first candidate on which every step is positive
  long px = 0, py = 0;
  for (auto [a, b] : {std::pair{1L, 0L}, {0L, 1L}, {1L, 1L}, {1L, -1L}, {-1L, 1L}}) {
    bool ok = true;
    for (const WeightedStep& s : steps) ok = ok && a * s.dx + b * s.dy > 0 && s.weight > 0;
    if (ok) {
      px = a;
      py = b;
      break;
    }
  }
  if (px == 0 && py == 0) throw domain_error("free_path_midpoint: steps do not advance");
  using P = std::pair<long, long>;
  auto phi = [&](const P& q) { return px * q.first + py * q.second; };
  const long T = phi(endpoint), half = T / 2;
  if (T < 0) throw domain_error("free_path_midpoint: unreachable endpoint");

  // forward from the origin up to level `half`, backward from the endpoint down to it
  auto sweep = [&](P from, int dir, long stop) {
    std::map<long, std::map<P, double>> lv;
    lv[phi(from)][from] = 0.0;
    std::map<P, double> mid;
    while (!lv.empty()) {
      auto it = dir > 0 ? lv.begin() : std::prev(lv.end());
      long level = it->first;
      std::map<P, double> cur = std::move(it->second);
      lv.erase(it);
      if (level == stop) {
        for (auto& [q, w] : cur) mid[q] = w;
        continue;
      }
      for (auto& [q, w] : cur)
        for (const WeightedStep& s : steps) {
          P r{q.first + dir * s.dx, q.second + dir * s.dy};
          long lr = phi(r);
          if (dir > 0 ? lr > stop : lr < stop) continue;
          double& slot = lv[lr].try_emplace(r, -std::numeric_limits<double>::infinity()).first->second;
          slot = log_add(slot, w + std::log(s.weight));
        }
    }
    return mid;
  };
  std::map<P, double> fwd = sweep({0, 0}, +1, half), bwd = sweep(endpoint, -1, half);
  double best = -std::numeric_limits<double>::infinity();
  P arg{0, 0};
  for (auto& [q, w] : fwd) {
    auto it = bwd.find(q);
    if (it == bwd.end()) continue;
    if (w + it->second > best) {
      best = w + it->second;
      arg = q;
    }
  }
  if (best == -std::numeric_limits<double>::infinity()) throw domain_error("free_path_midpoint: unreachable endpoint");
  const double nd = static_cast<double>(n);
  MidpointResult r;
  r.scaled = {static_cast<double>(arg.first) / nd, static_cast<double>(arg.second) / nd};
  double ex = static_cast<double>(endpoint.first) / nd, ey = static_cast<double>(endpoint.second) / nd;
  double len = std::hypot(ex, ey);
  r.deviation = len > 0 ? std::abs(ex * r.scaled.y - ey * r.scaled.x) / len : std::hypot(r.scaled.x, r.scaled.y);
  return r;
}

}  // namespace arctic
