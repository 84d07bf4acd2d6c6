#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace arctic {

using ExactInteger = mpz_class;
using ExactRational = mpq_class;

struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// exact a/b, refuses a nonzero remainder
inline ExactInteger exact_divide(const ExactInteger& a, const ExactInteger& b) {
  if (b == 0) throw domain_error("exact_divide: division by zero");
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
    throw domain_error("exact_divide: nonzero remainder");
  ExactInteger q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline ExactRational make_rational(const ExactInteger& num, const ExactInteger& den) {
  if (den == 0) throw domain_error("make_rational: zero denominator");
  ExactRational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const ExactInteger& v) { return v.get_str(); }

// always "num/den", also for integers
inline std::string to_string(const ExactRational& v) {
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline double to_double(const ExactRational& v) { return v.get_d(); }

// sign + log|value|, used where exact numbers get too big to be worth it
struct LogValue {
  double log_abs = 0.0;
  int sign = 0;

  static LogValue zero() { return {0.0, 0}; }
  static LogValue one() { return {0.0, 1}; }
  static LogValue from_log(double l) { return {l, 1}; }
  static LogValue from_double(double v) {
    if (v == 0.0) return zero();
    return {std::log(std::fabs(v)), v > 0 ? 1 : -1};
  }
  bool is_zero() const { return sign == 0; }
  // log of the value; -inf for zero, throws for negatives
  double log() const {
    if (sign == 0) return -std::numeric_limits<double>::infinity();
    if (sign < 0) throw domain_error("LogValue::log of a negative value");
    return log_abs;
  }
  double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

inline LogValue operator*(const LogValue& a, const LogValue& b) {
  if (a.sign == 0 || b.sign == 0) return LogValue::zero();
  return {a.log_abs + b.log_abs, a.sign * b.sign};
}

inline LogValue operator/(const LogValue& a, const LogValue& b) {
  if (b.sign == 0) throw domain_error("LogValue: division by zero");
  if (a.sign == 0) return LogValue::zero();
  return {a.log_abs - b.log_abs, a.sign * b.sign};
}

struct cancellation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// log-sum-exp; opposite signs losing more than ~12 digits is refused
inline LogValue operator+(const LogValue& a, const LogValue& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const LogValue& hi = a.log_abs >= b.log_abs ? a : b;
  const LogValue& lo = a.log_abs >= b.log_abs ? b : a;
  double d = lo.log_abs - hi.log_abs;
  if (hi.sign == lo.sign) return {hi.log_abs + std::log1p(std::exp(d)), hi.sign};
  if (d > -1e-12) throw cancellation_error("LogValue: catastrophic cancellation");
  return {hi.log_abs + std::log1p(-std::exp(d)), hi.sign};
}

inline LogValue& operator+=(LogValue& a, const LogValue& b) { return a = a + b; }
inline LogValue& operator*=(LogValue& a, const LogValue& b) { return a = a * b; }

inline LogValue log_sum(const std::vector<LogValue>& terms) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    if (t.sign < 0) throw domain_error("log_sum: negative term");
    if (t.sign > 0) m = std::max(m, t.log_abs);
  }
  if (m == -std::numeric_limits<double>::infinity()) return LogValue::zero();
  double s = 0.0;
  for (const auto& t : terms)
    if (t.sign > 0) s += std::exp(t.log_abs - m);
  return {m + std::log(s), 1};
}

inline LogValue log_of(const ExactInteger& v) {
  if (v == 0) return LogValue::zero();
  long e = 0;
  double m = mpz_get_d_2exp(&e, v.get_mpz_t());
  return {std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0), sgn(v)};
}

inline LogValue log_of(const ExactRational& v) {
  if (v == 0) return LogValue::zero();
  LogValue n = log_of(ExactInteger(v.get_num()));
  LogValue d = log_of(ExactInteger(v.get_den()));
  return n / d;
}

// counts every binomial evaluated with a negative upper index
inline std::atomic<long>& negative_binomial_hits() {
  static std::atomic<long> hits{0};
  return hits;
}

inline ExactInteger binomial(long n, long k) {
  if (n < 0) {
    negative_binomial_hits().fetch_add(1, std::memory_order_relaxed);
    return 0;
  }
  if (k < 0 || k > n) return 0;
  ExactInteger r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline ExactInteger factorial(long m) {
  if (m < 0) throw domain_error("factorial: negative argument");
  ExactInteger r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(m));
  return r;
}

inline ExactInteger trinomial(long m, long p1, long p2, long p3) {
  if (p1 + p2 + p3 != m) throw domain_error("trinomial: parts do not sum to m");
  if (p1 < 0 || p2 < 0 || p3 < 0) return 0;
  return binomial(m, p1) * binomial(m - p1, p2);
}

inline ExactInteger catalan(long m) {
  if (m < 0) throw domain_error("catalan: negative index");
  return exact_divide(binomial(2 * m, m), ExactInteger(m + 1));
}

// Dyck-type paths of a steps ending at height h
inline ExactInteger ballot(long a, long h) {
  if (a < 0 || h < 0) throw domain_error("ballot: negative argument");
  if (h > a || (a - h) % 2 != 0) return 0;
  long d = (a - h) / 2;
  return binomial(a, d) - binomial(a, d - 1);
}

inline ExactRational falling_factorial(const ExactRational& x, long m) {
  if (m < 0) throw domain_error("falling_factorial: negative length");
  ExactRational r = 1;
  for (long i = 0; i < m; ++i) r *= x - i;
  return r;
}

inline ExactRational pow2(long e) {
  ExactInteger p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(std::labs(e)));
  return e >= 0 ? ExactRational(p) : make_rational(1, p);
}

namespace detail {
// log Gamma(m+1) - (m log m - m + log(2 pi m)/2), good to 1e-17 for m >= 64
inline double stirling_tail(double m) {
  double r = 1.0 / m, r2 = r * r;
  return r * (1.0 / 12 - r2 * (1.0 / 360 - r2 * (1.0 / 1260 - r2 / 1680)));
}
}  // namespace detail

// direct log sum for a small lower index; otherwise Stirling in a form that
// keeps the O(n) leading terms free of cancellation
inline LogValue log_binomial(double n, double k) {
  if (!(k >= 0.0) || !(n >= k) || !std::isfinite(n))
    throw domain_error("log_binomial: need n >= k >= 0");
  double m = std::min(k, n - k);
  if (m == std::floor(m) && n == std::floor(n) && m <= 64) {
    double s = 0.0;
    for (int i = 1; i <= static_cast<int>(m); ++i) s += std::log((n - m + i) / i);
    return LogValue::from_log(s);
  }
  if (m < 64) return LogValue::from_log(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1));
  double p = k / n;
  double lead = -k * std::log(p) - (n - k) * std::log1p(-p);
  double half = 0.5 * std::log(n / (2.0 * M_PI * k * (n - k)));
  double tail = detail::stirling_tail(n) - detail::stirling_tail(k) - detail::stirling_tail(n - k);
  return LogValue::from_log(lead + half + tail);
}

inline ExactRational inverse_binomial_sum(long n, long a) {
  if (a <= 0) throw domain_error("inverse_binomial_sum: need a >= 1");
  if (n < 0) throw domain_error("inverse_binomial_sum: need n >= 0");
  ExactRational s = 0;
  for (long m = 0; m <= n; ++m) {
    ExactRational t = make_rational(ExactInteger(a) * binomial(n, m), ExactInteger(m + a));
    if (m % 2) s -= t; else s += t;
  }
  return s;
}

// log m! for m in [0, size), for the long finite-size scans
class LogFactorialTable {
 public:
  explicit LogFactorialTable(long size) : lf_(static_cast<size_t>(std::max(size, 1L)) + 1, 0.0) {
    for (size_t i = 1; i < lf_.size(); ++i) lf_[i] = lf_[i - 1] + std::log(static_cast<double>(i));
  }
  long size() const { return static_cast<long>(lf_.size()) - 1; }
  double operator()(long m) const {
    if (m < 0 || m >= static_cast<long>(lf_.size()))
      throw domain_error("LogFactorialTable: index out of range");
    return lf_[static_cast<size_t>(m)];
  }
  // log C(n,k), -inf outside the range
  double log_binom(long n, long k) const {
    if (n < 0 || k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return (*this)(n) - (*this)(k) - (*this)(n - k);
  }

 private:
  std::vector<double> lf_;
};

// log of sum exp(x_i), -inf entries allowed
inline double log_sum_exp(const std::vector<double>& xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (m == -std::numeric_limits<double>::infinity()) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

inline double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::fabs(a - b)));
}

}  // namespace arctic
