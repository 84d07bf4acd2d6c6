#pragma once

#include "arctic/kernel.hpp"
#include "arctic/models.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arctic {

struct Point {
  long x = 0, y = 0;
  auto operator<=>(const Point&) const = default;
};

struct Step {
  long dx = 0, dy = 0;
};

enum class PathConstraint { None, AboveAxis, FirstQuadrant };

// Paths advance in "ticks" of a linear progress function phi = (px*x + py*y) / pd.
// Every step must raise phi by a positive integer; a step raising it by d > 1 is in
// flight for d - 1 ticks and touches no lattice vertex meanwhile.
struct PathFamilySpec {
  std::vector<Step> steps;
  std::vector<Point> starts, ends;
  PathConstraint constraint = PathConstraint::None;
  long px = 1, py = 0, pd = 1;
  std::function<bool(long, long)> region;  // extra admissible set, empty = everything

  long phi(const Point& p) const {
    long v = px * p.x + py * p.y;
    if (v % pd != 0) throw domain_error("PathFamilySpec: point off the progress lattice");
    return v / pd;
  }
  bool admissible(const Point& p) const {
    if (constraint == PathConstraint::AboveAxis && p.y < 0) return false;
    if (constraint == PathConstraint::FirstQuadrant && (p.x < 0 || p.y < 0)) return false;
    return !region || region(p.x, p.y);
  }
  void validate() const {
    if (starts.size() != ends.size()) throw domain_error("PathFamilySpec: starts and ends differ in count");
    if (starts.empty()) throw domain_error("PathFamilySpec: no paths");
    if (steps.empty()) throw domain_error("PathFamilySpec: empty step set");
    for (const Step& s : steps) {
      long v = px * s.dx + py * s.dy;
      if (v <= 0 || v % pd != 0) throw domain_error("PathFamilySpec: step does not advance the progress function");
    }
  }
};

class budget_error : public std::runtime_error {
 public:
  budget_error(const std::string& what, long long budget) : std::runtime_error(what), budget(budget) {}
  long long budget;
};

inline constexpr long long default_oracle_budget = 100'000'000;

namespace detail {

class SinglePathCounter {
 public:
  SinglePathCounter(const PathFamilySpec& s, Point target) : s_(s), target_(target), t_end_(s.phi(target)) {}
  const ExactInteger& operator()(const Point& p) {
    auto it = memo_.find(p);
    if (it != memo_.end()) return it->second;
    ExactInteger c = 0;
    long t = s_.phi(p);
    if (p == target_) {
      c = 1;
    } else if (t < t_end_) {
      for (const Step& st : s_.steps) {
        Point q{p.x + st.dx, p.y + st.dy};
        if (s_.admissible(q)) c += (*this)(q);
      }
    }
    return memo_.emplace(p, c).first->second;
  }

 private:
  const PathFamilySpec& s_;
  Point target_;
  long t_end_;
  std::map<Point, ExactInteger> memo_;
};

}  // namespace detail

// number of vertex-disjoint families (path i: starts[i] -> ends[i])
inline ExactInteger count_nilp(const PathFamilySpec& spec, long long budget = default_oracle_budget) {
  spec.validate();
  const size_t m = spec.starts.size();
  std::vector<detail::SinglePathCounter> reach;
  reach.reserve(m);
  for (size_t i = 0; i < m; ++i) {
    if (!spec.admissible(spec.starts[i]) || !spec.admissible(spec.ends[i])) return 0;
    reach.emplace_back(spec, spec.ends[i]);
    if (reach.back()(spec.starts[i]) == 0) return 0;
  }
  long t0 = spec.phi(spec.starts[0]), t1 = spec.phi(spec.ends[0]);
  for (size_t i = 0; i < m; ++i) {
    t0 = std::min(t0, spec.phi(spec.starts[i]));
    t1 = std::max(t1, spec.phi(spec.ends[i]));
  }

  // per path: status (0 waiting, 1 walking, 2 done), x, y
  using State = std::vector<long>;
  std::map<State, ExactInteger> cur;
  cur.emplace(State(3 * m, 0), ExactInteger(1));
  long long visited = 0;

  for (long t = t0; t <= t1; ++t) {
    std::map<State, ExactInteger> next;
    for (auto& [st0, cnt] : cur) {
      if (++visited > budget)
        throw budget_error("count_nilp: state budget of " + std::to_string(budget) + " exceeded", budget);
      State st = st0;
      for (size_t i = 0; i < m; ++i)
        if (st[3 * i] == 0 && spec.phi(spec.starts[i]) == t) {
          st[3 * i] = 1;
          st[3 * i + 1] = spec.starts[i].x;
          st[3 * i + 2] = spec.starts[i].y;
        }
      // vertices touched at this tick must be distinct
      std::vector<Point> here;
      std::vector<size_t> movers;
      for (size_t i = 0; i < m; ++i) {
        if (st[3 * i] != 1) continue;
        Point p{st[3 * i + 1], st[3 * i + 2]};
        if (spec.phi(p) != t) continue;
        here.push_back(p);
        if (p == spec.ends[i]) st[3 * i] = 2;
        else movers.push_back(i);
      }
      std::sort(here.begin(), here.end());
      if (std::adjacent_find(here.begin(), here.end()) != here.end()) continue;

      // product of step choices
      std::function<void(size_t, State&)> go = [&](size_t a, State& s) {
        if (a == movers.size()) {
          next[s] += cnt;
          return;
        }
        size_t i = movers[a];
        long x = s[3 * i + 1], y = s[3 * i + 2];
        for (const Step& stp : spec.steps) {
          Point q{x + stp.dx, y + stp.dy};
          if (!spec.admissible(q) || reach[i](q) == 0) continue;
          s[3 * i + 1] = q.x;
          s[3 * i + 2] = q.y;
          go(a + 1, s);
        }
        s[3 * i + 1] = x;
        s[3 * i + 2] = y;
      };
      go(0, st);
    }
    cur.swap(next);
  }
  ExactInteger total = 0;
  for (auto& [st, cnt] : cur) {
    bool done = true;
    for (size_t i = 0; i < m; ++i) done = done && st[3 * i] == 2;
    if (done) total += cnt;
  }
  return total;
}

struct ExitCount {
  Point exit;
  ExactInteger count;
};

// counts with the end of path `distinguished` moved to each exit in turn
inline std::vector<ExitCount> count_nilp_by_exit(const PathFamilySpec& spec, size_t distinguished,
                                                 const std::vector<Point>& exits,
                                                 long long budget = default_oracle_budget) {
  if (distinguished >= spec.ends.size()) throw domain_error("count_nilp_by_exit: bad path index");
  std::vector<ExitCount> out;
  PathFamilySpec s = spec;
  for (const Point& e : exits) {
    s.ends[distinguished] = e;
    out.push_back({e, count_nilp(s, budget)});
  }
  return out;
}

// ---------------------------------------------------------------- the five models as path families

struct ExitProblem {
  PathFamilySpec spec;  // reference problem
  size_t distinguished = 0;
  long l_first = 0;
  std::vector<Point> exits;  // exits[l - l_first]
};

inline ExitProblem model_exit_problem(const ModelSize& s) {
  const long n = s.n, k = s.k;
  ExitProblem e;
  PathFamilySpec& f = e.spec;
  e.l_first = 0;
  switch (s.model) {
    case ModelId::Aztec:
      f.steps = {{1, 1}, {1, -1}, {2, 0}};
      for (long i = 0; i <= n; ++i) {
        f.starts.push_back({-i, i});
        f.ends.push_back({i, i});
      }
      e.distinguished = static_cast<size_t>(n);
      for (long l = 0; l <= n; ++l) e.exits.push_back({l, 2 * n - l});
      break;
    case ModelId::DyckHalfHex:
      f.steps = {{1, 1}, {1, -1}};
      f.constraint = PathConstraint::AboveAxis;
      for (long i = 0; i <= n; ++i) {
        f.starts.push_back({-2 * i, 0});
        f.ends.push_back({2 * k + 2 * i, 0});
      }
      e.distinguished = static_cast<size_t>(n);
      for (long l = 0; l <= n + k; ++l) e.exits.push_back({2 * k + n - l, n + l});
      f.region = [n, k](long x, long y) { return x + y <= 2 * k + 2 * n || x - y <= 2 * k; };
      break;
    case ModelId::RedHalfHex:
      f.steps = {{0, -2}, {1, -1}};
      f.px = 1;
      f.py = -1;
      f.pd = 2;
      for (long i = 0; i < k; ++i) {
        f.starts.push_back({i, i + 2 * n + 2});
        f.ends.push_back({2 * i, 0});
      }
      e.distinguished = static_cast<size_t>(k - 1);
      for (long l = 0; l <= n + 1; ++l) e.exits.push_back({2 * k - 2, 2 * l});
      f.region = [k](long x, long y) { return x > 2 * k - 2 || y >= 0; };
      break;
    case ModelId::Staircase:
      f.steps = {{-1, 0}, {0, 1}};
      f.constraint = PathConstraint::FirstQuadrant;
      f.px = -1;
      f.py = 1;
      for (long i = 0; i <= n; ++i) {
        f.starts.push_back({2 * i, 0});
        f.ends.push_back({0, i});
      }
      e.distinguished = static_cast<size_t>(n);
      for (long l = 0; l <= 2 * n; ++l) e.exits.push_back({l, n});
      break;
    case ModelId::StaircaseAlt:
      f.steps = {{1, 0}, {1, 1}};
      for (long i = 0; i <= n; ++i) {
        f.starts.push_back({2 * (n - i), 0});
        f.ends.push_back({2 * n, i});
      }
      e.distinguished = static_cast<size_t>(n);
      for (long l = 0; l <= 2 * n; ++l) e.exits.push_back({l, n});
      break;
    case ModelId::Vsasm:
      throw domain_error("model_exit_problem: VSASM is checked through the ASM oracle");
  }
  return e;
}

// the distinguished path sent to the far target indexed by p (Aztec: target abscissa k)
inline PathFamilySpec model_extended_problem(const ModelSize& s, long p) {
  ExitProblem e = model_exit_problem(s);
  const long n = s.n, k = s.k;
  Point target;
  switch (s.model) {
    case ModelId::Aztec: target = {p, p}; break;
    case ModelId::DyckHalfHex: target = {2 * k + n + p, n + p}; break;
    case ModelId::RedHalfHex: target = {2 * k - 2 + p, -p}; break;
    case ModelId::Staircase: target = {0, p}; break;
    case ModelId::StaircaseAlt: target = {2 * n, p}; break;
    case ModelId::Vsasm: break;
  }
  e.spec.ends[e.distinguished] = target;
  return e.spec;
}

// escape weight for exit l towards target p, as the models module defines it
inline ExactInteger model_escape(const ModelSize& s, long l, long p) {
  switch (s.model) {
    case ModelId::Aztec: return aztec_escape(l, p, s.n);
    case ModelId::DyckHalfHex: return dyck_escape(p, l);
    case ModelId::RedHalfHex: return red_escape(p, l);
    case ModelId::Staircase: return staircase_escape(s.n, p, l);
    case ModelId::StaircaseAlt: return staircase_alt_escape(s.n, p, l);
    case ModelId::Vsasm: break;
  }
  throw domain_error("model_escape: VSASM escape needs k and size");
}

// ---------------------------------------------------------------- ASMs

struct AsmMatrix {
  int size = 0;
  std::vector<int> entries;  // row-major
  int operator()(int i, int j) const { return entries[static_cast<size_t>(i * size + j)]; }
  bool operator==(const AsmMatrix&) const = default;
};

inline bool is_asm(const AsmMatrix& m) {
  const int n = m.size;
  if (n < 1 || m.entries.size() != static_cast<size_t>(n * n)) return false;
  for (int a = 0; a < n; ++a) {
    int rs = 0, cs = 0;
    for (int b = 0; b < n; ++b) {
      int r = m(a, b), c = m(b, a);
      if (r < -1 || r > 1) return false;
      rs += r;
      cs += c;
      if (rs < 0 || rs > 1 || cs < 0 || cs > 1) return false;
    }
    if (rs != 1 || cs != 1) return false;
  }
  return true;
}

namespace detail {

// row-by-row backtracking; column partial sums stay in {0, 1}.
// Values tried in the order -1, 0, 1 so output is lexicographic by row.
template <class Visit>
void asm_backtrack(int n, Visit&& visit) {
  std::vector<int> a(static_cast<size_t>(n * n), 0), col(static_cast<size_t>(n), 0);
  std::function<void(int, int, int)> cell = [&](int i, int j, int r) {
    if (j == n) {
      if (r != 1) return;
      if (i + 1 == n) {
        for (int c : col)
          if (c != 1) return;
        visit(AsmMatrix{n, a});
        return;
      }
      cell(i + 1, 0, 0);
      return;
    }
    size_t idx = static_cast<size_t>(i * n + j);
    int& c = col[static_cast<size_t>(j)];
    if (r == 1 && c == 1) {
      a[idx] = -1;
      --c;
      cell(i, j + 1, 0);
      ++c;
    }
    a[idx] = 0;
    cell(i, j + 1, r);
    if (r == 0 && c == 0) {
      a[idx] = 1;
      ++c;
      cell(i, j + 1, 1);
      --c;
    }
    a[idx] = 0;
  };
  cell(0, 0, 0);
}

}  // namespace detail

inline std::vector<AsmMatrix> enumerate_asm(int n) {
  if (n < 1) throw domain_error("enumerate_asm: need n >= 1");
  if (n > 6) throw budget_error("enumerate_asm: n > 6 exceeds the enumeration budget", 6);
  std::vector<AsmMatrix> out;
  detail::asm_backtrack(n, [&](const AsmMatrix& m) { out.push_back(m); });
  return out;
}

inline bool is_vertically_symmetric(const AsmMatrix& m) {
  for (int i = 0; i < m.size; ++i)
    for (int j = 0; j < m.size; ++j)
      if (m(i, j) != m(i, m.size - 1 - j)) return false;
  return true;
}

struct VsasmEnumeration {
  std::vector<AsmMatrix> matrices;
  std::vector<ExactInteger> refined;  // refined[l - 1]: 1 of the first column in row l
};

inline VsasmEnumeration enumerate_vsasm(int size) {
  if (size < 1 || size % 2 == 0) throw domain_error("enumerate_vsasm: size must be odd");
  if (size > 7) throw budget_error("enumerate_vsasm: size > 7 exceeds the enumeration budget", 7);
  VsasmEnumeration r;
  r.refined.assign(static_cast<size_t>(size), ExactInteger(0));
  detail::asm_backtrack(size, [&](const AsmMatrix& m) {
    if (!is_vertically_symmetric(m)) return;
    for (int i = 0; i < size; ++i)
      if (m(i, 0) == 1) r.refined[static_cast<size_t>(i)] += 1;
    r.matrices.push_back(m);
  });
  return r;
}

// Osculating paths: rebuild edge occupations from the matrix and check that every
// vertex is one of the six ice-rule configurations, that the domain-wall boundary
// holds, and that the +1/-1 vertices give back the matrix.
inline bool osculating_config_check(const AsmMatrix& m) {
  if (!is_asm(m)) return false;
  const int n = m.size;
  // vert(i, j): edge below vertex (i, j), i = -1 is the top boundary
  // horiz(i, j): edge left of vertex (i, j), j = n is the right boundary
  auto vert = [&](int i, int j) {
    int s = 0;
    for (int r = 0; r <= i; ++r) s += m(r, j);
    return s == 0 ? 1 : 0;
  };
  auto horiz = [&](int i, int j) {
    int s = 0;
    for (int c = j; c < n; ++c) s += m(i, c);
    return s;
  };
  for (int j = 0; j < n; ++j)
    if (vert(-1, j) != 1 || vert(n - 1, j) != 0) return false;
  for (int i = 0; i < n; ++i)
    if (horiz(i, 0) != 1 || horiz(i, n) != 0) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int top = vert(i - 1, j), bottom = vert(i, j), left = horiz(i, j), right = horiz(i, j + 1);
      if (top < 0 || top > 1 || left < 0 || left > 1) return false;
      int w;
      if (top == right && bottom == left && top == bottom) w = 0;        // empty or full cross
      else if (top == bottom && right == left && top != right) w = 0;    // straight through
      else if (top == 1 && left == 1 && right == 0 && bottom == 0) w = 1;   // turn, +1
      else if (right == 1 && bottom == 1 && top == 0 && left == 0) w = -1;  // turn, -1
      else return false;
      if (top + right != bottom + left) return false;  // paths run down and to the left
      if (w != m(i, j)) return false;
    }
  return true;
}

inline void dump_ndjson(std::ostream& os, const std::vector<AsmMatrix>& ms) {
  for (const AsmMatrix& m : ms) {
    os << "{\"size\":" << m.size << ",\"rows\":[";
    for (int i = 0; i < m.size; ++i) {
      os << (i ? ",[" : "[");
      for (int j = 0; j < m.size; ++j) os << (j ? "," : "") << m(i, j);
      os << "]";
    }
    os << "]}\n";
  }
}

}  // namespace arctic
