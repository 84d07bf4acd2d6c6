#pragma once

#include "arctic/gv.hpp"
#include "arctic/kernel.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace arctic {

enum class ModelId { Aztec, DyckHalfHex, RedHalfHex, Staircase, StaircaseAlt, Vsasm };

inline const char* model_name(ModelId m) {
  switch (m) {
    case ModelId::Aztec: return "aztec";
    case ModelId::DyckHalfHex: return "dyck";
    case ModelId::RedHalfHex: return "red";
    case ModelId::Staircase: return "staircase";
    case ModelId::StaircaseAlt: return "staircase-alt";
    case ModelId::Vsasm: return "vsasm";
  }
  return "?";
}

inline std::optional<ModelId> parse_model(const std::string& s) {
  for (ModelId m : {ModelId::Aztec, ModelId::DyckHalfHex, ModelId::RedHalfHex, ModelId::Staircase,
                    ModelId::StaircaseAlt, ModelId::Vsasm})
    if (s == model_name(m)) return m;
  return std::nullopt;
}

struct AztecParams {
  long n = 1, k = 2, l = 0;
  double z = 2.0;
};
struct DyckParams {
  long n = 0, k = 1, l = 0, p = 1;
  double x = 1.0, y = 1.0;
};
struct StaircaseParams {
  long n = 1, p = 1, l = 0;
  double z = 2.0;
};
struct VsasmParams {
  long size = 3, l = 1, k = 1;
  double t = 0.5, z = 1.0;
};

// ---------------------------------------------------------------- Aztec

// large Schroeder paths (-i,i) -> (j,j)
inline ExactInteger aztec_entry(long i, long j) {
  if (i < 0 || j < 0) throw domain_error("aztec_entry: negative index");
  ExactInteger s = 0;
  for (long p = 0; p <= std::min(i, j); ++p) s += trinomial(i + j - p, p, i - p, j - p);
  return s;
}

// same, but zero for a negative index (escape and last-column convention)
inline ExactInteger aztec_entry_or_zero(long i, long j) {
  return (i < 0 || j < 0) ? ExactInteger(0) : aztec_entry(i, j);
}

inline ExactMatrix aztec_matrix(long n) {
  return ExactMatrix::from_function(static_cast<int>(n + 1), static_cast<int>(n + 1),
                                    [](int i, int j) { return aztec_entry(i, j); });
}

struct ClosedLU {
  ExactMatrix L, U, L_inv;
};

inline ClosedLU aztec_closed_lu(long n) {
  if (n < 0) throw domain_error("aztec_closed_lu: n < 0");
  int m = static_cast<int>(n + 1);
  ClosedLU r;
  r.L = ExactMatrix::from_function(m, m, [](int i, int j) { return binomial(i, j); });
  r.U = ExactMatrix::from_function(m, m, [](int i, int j) -> ExactRational { return pow2(i) * ExactRational(binomial(j, i)); });
  r.L_inv = ExactMatrix::from_function(m, m, [](int i, int j) -> ExactInteger {
    return ((i + j) % 2 ? -1 : 1) * binomial(i, j);
  });
  return r;
}

inline std::vector<ExactRational> aztec_last_column(long n, long l) {
  std::vector<ExactRational> b(static_cast<size_t>(n + 1));
  for (long i = 0; i <= n; ++i) b[static_cast<size_t>(i)] = aztec_entry_or_zero(i + l - n, n);
  return b;
}

inline ExactRational aztec_one_point(long n, long l) {
  if (n < 0 || l < 0 || l > n) throw domain_error("aztec_one_point: need 0 <= l <= n");
  ExactInteger s = 0;
  for (long p = 0; p <= l; ++p) s += binomial(n, p);
  return ExactRational(s) * pow2(-n);
}

inline ExactInteger aztec_escape(long l, long k, long n) {
  if (l < 0 || l > n || k <= n) throw domain_error("aztec_escape: need 0 <= l <= n < k");
  return aztec_entry_or_zero(n - l, k - n - 1) + aztec_entry_or_zero(n - l - 1, k - n - 1);
}

// ---------------------------------------------------------------- Dyck paths

inline ExactInteger dyck_entry(long i, long j, long k) {
  if (i < 0 || j < 0 || k < 1) throw domain_error("dyck_entry: need i, j >= 0, k >= 1");
  return catalan(k + i + j);
}

inline ExactMatrix dyck_matrix(long n, long k) {
  return ExactMatrix::from_function(static_cast<int>(n + 1), static_cast<int>(n + 1),
                                    [k](int i, int j) { return dyck_entry(i, j, k); });
}

inline ExactRational dyck_U_diag(long i, long k) {
  return make_rational(factorial(2 * i + 1) * factorial(2 * k + 2 * i),
                       factorial(k + 2 * i + 1) * factorial(k + 2 * i));
}

inline ExactRational dyck_partition_product(long n, long k) {
  ExactRational p = 1;
  for (long i = 0; i <= n; ++i) p *= dyck_U_diag(i, k);
  return p;
}

struct LPair {
  ExactMatrix L, L_inv;
};

inline LPair dyck_closed_L(long n, long k) {
  if (n < 0 || k < 1) throw domain_error("dyck_closed_L: need n >= 0, k >= 1");
  int m = static_cast<int>(n + 1);
  auto f = [](long v) { return factorial(v); };
  LPair r;
  r.L = ExactMatrix::from_function(m, m, [&](int i, int j) -> ExactRational {
    if (j > i) return 0;
    return make_rational(f(2 * k + 2 * i) * f(k + j) * f(k + 2 * j + 1) * binomial(i, j),
                         f(2 * k + 2 * j) * f(k + i) * f(k + i + j + 1));
  });
  r.L_inv = ExactMatrix::from_function(m, m, [&](int i, int j) -> ExactRational {
    if (j > i) return 0;
    ExactRational v = make_rational(f(2 * k + 2 * i) * f(k + j) * f(k + i + j) * binomial(i, j),
                                    f(2 * k + 2 * j) * f(k + i) * f(k + 2 * i));
    return (i + j) % 2 ? ExactRational(-v) : v;
  });
  return r;
}

inline ExactInteger dyck_last_column(long i, long n, long k, long l) {
  return ballot(2 * k + 2 * i + n - l, n + l);
}

inline std::vector<ExactRational> dyck_last_column_vector(long n, long k, long l) {
  std::vector<ExactRational> b(static_cast<size_t>(n + 1));
  for (long i = 0; i <= n; ++i) b[static_cast<size_t>(i)] = dyck_last_column(i, n, k, l);
  return b;
}

inline ExactRational dyck_one_point(long n, long k, long l) {
  if (n < 0 || k < 1 || l < 0 || l > n + k) throw domain_error("dyck_one_point: need 0 <= l <= n + k");
  ExactInteger s = 0;
  for (long t = 0; t <= n; ++t) s += binomial(n + l + 1, 2 * n + 1 - 2 * t) * binomial(2 * n + k - t, n + l);
  return make_rational(s, binomial(2 * n + 2 * k, n + l));
}

inline ExactInteger dyck_escape(long p, long l) {
  if (p < 1 || l < 0) throw domain_error("dyck_escape: need p >= 1, l >= 0");
  return binomial(p + l - 1, l);
}

// ---------------------------------------------------------------- red paths

inline ExactInteger red_entry(long i, long j, long n) {
  if (i < 0 || j < 0 || n < 0) throw domain_error("red_entry: negative index");
  return binomial(j + n + 1, 2 * j - i);
}

inline ExactMatrix red_matrix(long n, long k) {
  if (k < 1) throw domain_error("red_matrix: need k >= 1");
  return ExactMatrix::from_function(static_cast<int>(k), static_cast<int>(k),
                                    [n](int i, int j) { return red_entry(i, j, n); });
}

inline ExactRational red_U_diag(long i, long n) {
  return make_rational(factorial(2 * n + 2 + 2 * i) * factorial(i), factorial(2 * n + 2 + i) * factorial(2 * i));
}

inline ExactInteger red_partition(long n, long k) {
  if (n < 0 || k < 1) throw domain_error("red_partition: need n >= 0, k >= 1");
  ExactRational p = 1;
  for (long i = 0; i < k; ++i) p *= red_U_diag(i, n);
  if (p.get_den() != 1) throw domain_error("red_partition: product is not an integer");
  return p.get_num();
}

inline LPair red_closed_L(long n, long k) {
  if (n < 0 || k < 1) throw domain_error("red_closed_L: need n >= 0, k >= 1");
  int m = static_cast<int>(k);
  auto f = [](long v) { return factorial(v); };
  LPair r;
  r.L = ExactMatrix::from_function(m, m, [&](int i, int j) -> ExactRational {
    if (j > i) return 0;
    return make_rational(binomial(2 * i - 2 * j, i - j) * binomial(i, 2 * (i - j)), binomial(i + 2 * n + 2, i - j));
  });
  r.L_inv = ExactMatrix::from_function(m, m, [&](int i, int j) -> ExactRational {
    if (j > i) return 0;
    if (j == 0) return i == 0 ? 1 : 0;  // 1/(j-1)! vanishes
    ExactRational v = make_rational(f(j + 2 * n + 2) * f(i - 1) * binomial(2 * i - j - 1, i - j),
                                    f(i + 2 * n + 2) * f(j - 1));
    return (i + j) % 2 ? ExactRational(-v) : v;
  });
  return r;
}

inline ExactInteger red_last_column(long i, long n, long k, long l) { return binomial(n + k - l, 2 * k - 2 - i); }

inline std::vector<ExactRational> red_last_column_vector(long n, long k, long l) {
  std::vector<ExactRational> b(static_cast<size_t>(k));
  for (long i = 0; i < k; ++i) b[static_cast<size_t>(i)] = red_last_column(i, n, k, l);
  return b;
}

inline ExactRational red_one_point(long n, long k, long l) {
  if (n < 0 || k < 1 || l < 0 || l > n + 1) throw domain_error("red_one_point: need 0 <= l <= n + 1");
  if (k == 1) return 1;  // single path, the closed form degenerates to 0/0
  ExactInteger s = 0;
  for (long t = l; t <= n + 1; ++t) s += binomial(k + n - t - 1, k - 2) * binomial(k + n + t, k - 2);
  return make_rational(2 * s, binomial(2 * n + 2 * k, 2 * n + 3));
}

// the sum as usually printed, indices shifted by one; kept only to document that it
// disagrees with the determinant ratio (e.g. 17/14 at n=1, k=3, l=0)
inline ExactRational red_one_point_shifted(long n, long k, long l) {
  if (n < 0 || k < 2 || l < 0 || l > n + 1) throw domain_error("red_one_point_shifted: need k >= 2, 0 <= l <= n + 1");
  ExactInteger s = 0;
  for (long t = l; t <= n + 1; ++t) s += binomial(k + n - t, k - 2) * binomial(k + n + t - 1, k - 2);
  return make_rational(2 * s, binomial(2 * n + 2 * k, 2 * n + 3));
}

inline ExactInteger red_escape(long p, long l) { return dyck_escape(p, l); }

// ---------------------------------------------------------------- staircase, both formulations

inline ExactInteger staircase_entry(long i, long j) {
  if (i < 0 || j < 0) throw domain_error("staircase_entry: negative index");
  return binomial(2 * i + j, j);
}
inline ExactInteger staircase_alt_entry(long i, long j) {
  if (i < 0 || j < 0) throw domain_error("staircase_alt_entry: negative index");
  return binomial(2 * i, j);
}

inline ExactMatrix staircase_matrix(long n) {
  return ExactMatrix::from_function(static_cast<int>(n + 1), static_cast<int>(n + 1),
                                    [](int i, int j) { return staircase_entry(i, j); });
}
inline ExactMatrix staircase_alt_matrix(long n) {
  return ExactMatrix::from_function(static_cast<int>(n + 1), static_cast<int>(n + 1),
                                    [](int i, int j) { return staircase_alt_entry(i, j); });
}

// both formulations use L = binomial matrix
inline ClosedLU binomial_L(long n) {
  int m = static_cast<int>(n + 1);
  ClosedLU r;
  r.L = ExactMatrix::from_function(m, m, [](int i, int j) { return binomial(i, j); });
  r.L_inv = ExactMatrix::from_function(m, m, [](int i, int j) -> ExactInteger { return ((i + j) % 2 ? -1 : 1) * binomial(i, j); });
  r.U = ExactMatrix(m, m);
  return r;
}

inline std::vector<ExactRational> staircase_last_column(long n, long l) {
  std::vector<ExactRational> b(static_cast<size_t>(n + 1));
  for (long i = 0; i <= n; ++i) b[static_cast<size_t>(i)] = n + 2 * i - l < 0 ? ExactInteger(0) : binomial(n + 2 * i - l, n);
  return b;
}
inline std::vector<ExactRational> staircase_alt_last_column(long n, long l) {
  std::vector<ExactRational> b(static_cast<size_t>(n + 1));
  for (long i = 0; i <= n; ++i) b[static_cast<size_t>(i)] = l + 2 * i - 2 * n < 0 ? ExactInteger(0) : binomial(l + 2 * i - 2 * n, n);
  return b;
}

inline ExactRational staircase_one_point(long n, long l) {
  if (n < 0 || l < 0 || l > 2 * n) throw domain_error("staircase_one_point: need 0 <= l <= 2n");
  ExactInteger s = 0;
  for (long k = 0; k <= std::min(n, 2 * n - l); ++k) s += binomial(n, k);
  return ExactRational(s) * pow2(-n);
}
inline ExactRational staircase_alt_one_point(long n, long l) {
  if (n < 0 || l < 0 || l > 2 * n) throw domain_error("staircase_alt_one_point: need 0 <= l <= 2n");
  ExactInteger s = 0;
  for (long k = 0; k <= l - n; ++k) s += binomial(n, k);
  return ExactRational(s) * pow2(-n);
}

inline ExactInteger staircase_escape(long n, long p, long l) {
  if (p < n) throw domain_error("staircase_escape: need p >= n");
  return binomial(p - n - 1 + l, l);
}
inline ExactInteger staircase_alt_escape(long n, long p, long l) {
  if (p < n) throw domain_error("staircase_alt_escape: need p >= n");
  if (l >= 2 * n) return 0;  // exit on the target column, no room for the first step
  return binomial(2 * n - l - 1, p - n - 1);
}

// ---------------------------------------------------------------- ASM / VSASM

inline ExactInteger n_asm(long n) {
  if (n < 1) throw domain_error("n_asm: need n >= 1");
  ExactRational p = 1;
  for (long i = 0; i < n; ++i) p *= make_rational(factorial(3 * i + 1), factorial(n + i));
  if (p.get_den() != 1) throw domain_error("n_asm: product is not an integer");
  return p.get_num();
}

inline ExactInteger n_asm_refined(long n, long l) {
  if (n < 1 || l < 1 || l > n) throw domain_error("n_asm_refined: need 1 <= l <= n");
  return exact_divide(binomial(n + l - 2, n - 1) * binomial(2 * n - 1 - l, n - 1) * n_asm(n),
                      binomial(3 * n - 2, n - 1));
}

inline long vsasm_half(long size) {
  if (size < 1 || size % 2 == 0) throw domain_error("vsasm: size must be odd");
  return (size - 1) / 2;
}

inline ExactInteger n_vsasm(long size) {
  long n = vsasm_half(size);
  ExactRational p = pow2(-n);
  for (long i = 1; i <= n; ++i)
    p *= make_rational(factorial(6 * i - 2) * factorial(2 * i - 1), factorial(4 * i - 1) * factorial(4 * i - 2));
  if (p.get_den() != 1) throw domain_error("n_vsasm: product is not an integer");
  return p.get_num();
}

// alternating formula; exact only
inline ExactInteger n_vsasm_refined(long size, long l) {
  long n = vsasm_half(size);
  if (n < 1) throw domain_error("n_vsasm_refined: need size >= 3");
  if (l < 1 || l > size) throw domain_error("n_vsasm_refined: need 1 <= l <= size");
  ExactInteger s = 0;
  for (long i = 1; i <= l - 1; ++i) {
    ExactInteger t = exact_divide(factorial(2 * n + i - 2) * factorial(4 * n - i - 1),
                                  factorial(i - 1) * factorial(2 * n - i));
    if ((l + i - 1) % 2) s -= t; else s += t;
  }
  return exact_divide(n_vsasm(size - 2) * s, factorial(4 * n - 2));
}

inline ExactRational vsasm_generating(long size, const ExactRational& t) {
  vsasm_half(size);
  if (size < 3) throw domain_error("vsasm_generating: need size >= 3");
  ExactRational s = 0, tp = 1;
  for (long l = 1; l <= size; ++l) {
    s += ExactRational(n_vsasm_refined(size, l)) * tp;
    tp *= t;
  }
  return s / ExactRational(n_vsasm(size));
}

struct RazStrogSides {
  ExactRational lhs, rhs;
};

inline RazStrogSides raz_strog_sides(long size, const ExactRational& t) {
  long n = vsasm_half(size);
  if (n < 1) throw domain_error("raz_strog_check: need size >= 3");
  if (t == -1) throw domain_error("raz_strog_check: t = -1");
  ExactRational lhs = 0, rhs = 0, tp = 1;
  for (long l = 1; l <= 2 * n; ++l) {
    lhs += ExactRational(n_vsasm_refined(size, l)) * tp;
    rhs += ExactRational(n_asm_refined(2 * n, l)) * tp;
    tp *= t;
  }
  lhs /= ExactRational(n_vsasm(size - 2));
  rhs *= t / (t + 1);
  rhs /= ExactRational(n_asm(2 * n - 1));
  return {lhs, rhs};
}

inline bool raz_strog_check(long size, const ExactRational& t) {
  auto s = raz_strog_sides(size, t);
  return s.lhs == s.rhs;
}

inline ExactInteger vsasm_escape(long l, long k, long size) {
  vsasm_half(size);
  if (l < 1 || l > size || k < 1) throw domain_error("vsasm_escape: need 1 <= l <= size, k >= 1");
  ExactInteger s = 0;
  for (long p = 0; p <= std::min(k - 1, size - l); ++p) s += binomial(k - 1, p) * binomial(size - l, p);
  return s;
}

// ---------------------------------------------------------------- identities used as property tests

inline ExactInteger slem_sum(long n, long k, long l) {
  ExactInteger s = 0;
  for (long t = 0; t <= n; ++t) s += binomial(n + l + 1, 2 * n + 1 - 2 * t) * binomial(2 * n + k - t, n + l);
  return s;
}

inline ExactRational tlem_ratio(long n, long l, long j) {
  ExactInteger s = 0;
  for (long t = n - j + 1; t <= n; ++t) s += binomial(n + l + 1, 2 * n + 1 - 2 * t) * binomial(j + l + t - 1, n + l);
  return make_rational(s, binomial(2 * j + n + l - 1, n + l));
}

inline ExactRational pols_P(long n, long l, const ExactRational& k) {
  ExactRational s = 0;
  ExactRational half = make_rational(1, 2);
  for (long r = 0; r <= n; ++r) {
    ExactRational term = ExactRational(binomial(n, r)) * falling_factorial(2 * k + 2 * r + n - l, 2 * r) *
                         falling_factorial(n + k + r, r) * falling_factorial(n + k - l, n - r) *
                         falling_factorial(k + 2 * n + 1, n - r) * falling_factorial(n + k - half, n - r);
    ExactInteger f;
    mpz_ui_pow_ui(f.get_mpz_t(), 4, static_cast<unsigned long>(n - r));
    term *= ExactRational(f);
    if ((n - r) % 2) s -= term; else s += term;
  }
  return s;
}

inline ExactRational pols_Q(long n, long l, const ExactRational& k) {
  ExactRational s = 0;
  for (long t = 0; t <= n; ++t)
    s += ExactRational(binomial(n + l + 1, 2 * n + 1 - 2 * t)) * falling_factorial(k + 2 * n - t, n - t) *
         falling_factorial(n + k - l, t);
  return s * make_rational(factorial(2 * n + 1), n + l + 1);
}

inline ExactRational pols_value(long n, long l, long j) {
  ExactRational v = make_rational(factorial(2 * n + 1) * factorial(j - 1) * factorial(n + 2 * j + l - 1),
                                  (n + l + 1) * factorial(2 * j - 1) * factorial(l + j - 1));
  return n % 2 ? ExactRational(-v) : v;
}

// normalization linking P, Q to the one-point function
inline ExactRational pols_prefactor(long n, long l, long k) {
  return make_rational(factorial(2 * n + 1) * factorial(n + l) * binomial(2 * n + 2 * k, n + l),
                       (n + l + 1) * factorial(l) * binomial(n + k, l));
}

inline ExactInteger helplem_f(long k, long i, long j) {
  ExactInteger s = 0;
  for (long r = 0; r <= i; ++r) {
    ExactInteger t = binomial(k + r + i, i - j) * binomial(k + i + j + 1, i - r) * binomial(k + r, r) *
                     binomial(2 * k + 2 * r + 2 * j, 2 * j);
    if ((r + i) % 2) s -= t; else s += t;
  }
  return s;
}

// ---------------------------------------------------------------- generic access

// size parameters: n for all models, k for Dyck (offset) and red (path count); size for VSASM is n
struct ModelSize {
  ModelId model = ModelId::Aztec;
  long n = 1;
  long k = 1;
};

inline long l_min(const ModelSize& s) { return s.model == ModelId::Vsasm ? 1 : 0; }

inline long l_max(const ModelSize& s) {
  switch (s.model) {
    case ModelId::Aztec: return s.n;
    case ModelId::DyckHalfHex: return s.n + s.k;
    case ModelId::RedHalfHex: return s.n + 1;
    case ModelId::Staircase:
    case ModelId::StaircaseAlt: return 2 * s.n;
    case ModelId::Vsasm: return s.n;
  }
  return 0;
}

// l at which the modified matrix is the original one
inline long l_reference(const ModelSize& s) {
  switch (s.model) {
    case ModelId::Aztec: return s.n;
    case ModelId::StaircaseAlt: return 2 * s.n;
    default: return 0;
  }
}

inline ExactMatrix model_matrix(const ModelSize& s) {
  switch (s.model) {
    case ModelId::Aztec: return aztec_matrix(s.n);
    case ModelId::DyckHalfHex: return dyck_matrix(s.n, s.k);
    case ModelId::RedHalfHex: return red_matrix(s.n, s.k);
    case ModelId::Staircase: return staircase_matrix(s.n);
    case ModelId::StaircaseAlt: return staircase_alt_matrix(s.n);
    case ModelId::Vsasm: break;
  }
  throw domain_error("model_matrix: VSASM has no Gessel-Viennot matrix");
}

inline std::vector<ExactRational> model_last_column(const ModelSize& s, long l) {
  switch (s.model) {
    case ModelId::Aztec: return aztec_last_column(s.n, l);
    case ModelId::DyckHalfHex: return dyck_last_column_vector(s.n, s.k, l);
    case ModelId::RedHalfHex: return red_last_column_vector(s.n, s.k, l);
    case ModelId::Staircase: return staircase_last_column(s.n, l);
    case ModelId::StaircaseAlt: return staircase_alt_last_column(s.n, l);
    case ModelId::Vsasm: break;
  }
  throw domain_error("model_last_column: VSASM has no Gessel-Viennot matrix");
}

// closed-form L^{-1}
inline ExactMatrix model_closed_L_inv(const ModelSize& s) {
  switch (s.model) {
    case ModelId::Aztec: return aztec_closed_lu(s.n).L_inv;
    case ModelId::DyckHalfHex: return dyck_closed_L(s.n, s.k).L_inv;
    case ModelId::RedHalfHex: return red_closed_L(s.n, s.k).L_inv;
    case ModelId::Staircase:
    case ModelId::StaircaseAlt: return binomial_L(s.n).L_inv;
    case ModelId::Vsasm: break;
  }
  throw domain_error("model_closed_L_inv: VSASM has no Gessel-Viennot matrix");
}

inline ExactRational closed_one_point(const ModelSize& s, long l) {
  switch (s.model) {
    case ModelId::Aztec: return aztec_one_point(s.n, l);
    case ModelId::DyckHalfHex: return dyck_one_point(s.n, s.k, l);
    case ModelId::RedHalfHex: return red_one_point(s.n, s.k, l);
    case ModelId::Staircase: return staircase_one_point(s.n, l);
    case ModelId::StaircaseAlt: return staircase_alt_one_point(s.n, l);
    case ModelId::Vsasm: return make_rational(n_vsasm_refined(s.n, l), n_vsasm(s.n));
  }
  return 0;
}

// H(l) = det(A with last column replaced) / det(reference), both by Bareiss
inline ExactRational determinant_one_point(const ModelSize& s, long l) {
  ExactMatrix a = model_matrix(s);
  ExactRational ref = det_bareiss(a.with_last_column(model_last_column(s, l_reference(s))));
  return det_bareiss(a.with_last_column(model_last_column(s, l))) / ref;
}

// H(l) through the single element U~_nn / U_nn
inline ExactRational lu_one_point(const ModelSize& s, long l) {
  ExactMatrix a = model_matrix(s).with_last_column(model_last_column(s, l_reference(s)));
  ExactMatrix linv = model_closed_L_inv(s);
  int last = a.rows() - 1;
  std::vector<ExactRational> row = linv.row(last);
  ExactRational u_nn = det_ratio_last_column(row, a.col(last), 1);
  return det_ratio_last_column(row, model_last_column(s, l), u_nn);
}

struct OnePointProfile {
  ModelSize size;
  long l_first = 0;
  std::vector<ExactRational> values;
  const ExactRational& at(long l) const { return values.at(static_cast<size_t>(l - l_first)); }
};

inline OnePointProfile onepoint_profile(const ModelSize& s) {
  OnePointProfile p{s, l_min(s), {}};
  for (long l = l_min(s); l <= l_max(s); ++l) p.values.push_back(closed_one_point(s, l));
  return p;
}

// log H over the model's l range (index l - l_min); -inf where H = 0.
// Exact evaluation up to `crossover`, LogValue arithmetic beyond. VSASM uses
// the positive ASM refined profile of size n-1 on l in [1, n-1], H(n) = 0.
inline std::vector<double> log_profile(const ModelSize& s, long crossover = 512) {
  const double ninf = -std::numeric_limits<double>::infinity();
  const long lo = l_min(s), hi = l_max(s), n = s.n, k = s.k;
  std::vector<double> out(static_cast<size_t>(hi - lo + 1), ninf);
  auto put = [&](long l, double v) { out[static_cast<size_t>(l - lo)] = v; };
  if (s.model != ModelId::Vsasm && n <= crossover) {
    for (long l = lo; l <= hi; ++l) {
      LogValue v = log_of(closed_one_point(s, l));
      put(l, v.log());
    }
    return out;
  }
  const long N = s.model == ModelId::DyckHalfHex || s.model == ModelId::RedHalfHex ? 4 * (n + k) + 8 : 4 * n + 8;
  LogFactorialTable lf(N);
  const double log2 = std::log(2.0);
  switch (s.model) {
    case ModelId::Aztec: {
      double acc = ninf;
      for (long l = 0; l <= n; ++l) {
        acc = log_add(acc, lf.log_binom(n, l));
        put(l, acc - n * log2);
      }
      break;
    }
    case ModelId::Staircase: {
      std::vector<double> cum(static_cast<size_t>(n + 1));
      double acc = ninf;
      for (long q = 0; q <= n; ++q) cum[static_cast<size_t>(q)] = acc = log_add(acc, lf.log_binom(n, q));
      for (long l = 0; l <= 2 * n; ++l) put(l, cum[static_cast<size_t>(std::min(n, 2 * n - l))] - n * log2);
      break;
    }
    case ModelId::StaircaseAlt: {
      double acc = ninf;
      for (long l = n; l <= 2 * n; ++l) {
        acc = log_add(acc, lf.log_binom(n, l - n));
        put(l, acc - n * log2);
      }
      break;
    }
    case ModelId::DyckHalfHex: {
      std::vector<double> terms(static_cast<size_t>(n + 1));
      for (long l = 0; l <= n + k; ++l) {
        for (long t = 0; t <= n; ++t)
          terms[static_cast<size_t>(t)] = lf.log_binom(n + l + 1, 2 * n + 1 - 2 * t) + lf.log_binom(2 * n + k - t, n + l);
        put(l, log_sum_exp(terms) - lf.log_binom(2 * n + 2 * k, n + l));
      }
      break;
    }
    case ModelId::RedHalfHex: {
      if (k == 1) {
        for (long l = 0; l <= n + 1; ++l) put(l, 0.0);
        break;
      }
      double acc = ninf, norm = log2 - lf.log_binom(2 * n + 2 * k, 2 * n + 3);
      for (long l = n + 1; l >= 0; --l) {
        acc = log_add(acc, lf.log_binom(k + n - l - 1, k - 2) + lf.log_binom(k + n + l, k - 2));
        put(l, acc + norm);
      }
      break;
    }
    case ModelId::Vsasm: {
      const long m = n - 1;
      for (long l = 1; l <= m; ++l)
        put(l, lf.log_binom(m + l - 2, m - 1) + lf.log_binom(2 * m - 1 - l, m - 1) - lf.log_binom(3 * m - 2, m - 1));
      break;
    }
  }
  return out;
}

}  // namespace arctic
