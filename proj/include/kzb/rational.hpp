#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "errors.hpp"

namespace kzb {

using Q = mpq_class;
using Z = mpz_class;

inline std::string to_string(const Q& q) {
  Q c = q;
  c.canonicalize();
  return c.get_str();
}

inline Q frac(long a, long b) {
  Q q(a, b);
  q.canonicalize();
  return q;
}

inline Q parse_rational(const std::string& s) {
  Q q;
  if (q.set_str(s, 10) != 0) throw DomainError("not a rational: " + s);
  q.canonicalize();
  return q;
}

inline Q qpow(const Q& base, long e) {
  if (e < 0) {
    if (base == 0) throw DomainError("0 to a negative power");
    return qpow(Q(1) / base, -e);
  }
  Q r = 1, b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Z binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Z r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline Z factorial(long n) {
  Z r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

// B_n with B_1 = -1/2, i.e. x/(e^x - 1) = sum B_n x^n / n!.
inline Q bernoulli(int n) {
  if (n < 0) throw DomainError("bernoulli index < 0");
  static std::mutex mu;
  static std::vector<Q> cache{Q(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= n) {
    const long m = static_cast<long>(cache.size());
    Q s = 0;
    for (long k = 0; k < m; ++k) s += Q(binomial(m + 1, k)) * cache[k];
    Q b = -s / Q(m + 1);
    b.canonicalize();
    cache.push_back(b);
  }
  return cache[n];
}

// Coefficients c_n = B_n / n! of x/(e^x - 1), n = 0..n_max.
inline std::vector<Q> bernoulli_series(int n_max) {
  std::vector<Q> c;
  c.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    Q v = bernoulli(n) / Q(factorial(n));
    v.canonicalize();
    c.push_back(v);
  }
  return c;
}

// Coefficients of x/(e^{-x} - 1) = -x - x/(e^x - 1).
inline std::vector<Q> bernoulli_series_neg(int n_max) {
  std::vector<Q> c = bernoulli_series(n_max);
  for (auto& v : c) v = -v;
  if (n_max >= 1) c[1] -= 1;
  return c;
}

// B_m(x) = sum_k binom(m,k) B_k x^{m-k}.
inline Q bernoulli_poly(int m, const Q& x) {
  Q s = 0;
  for (int k = 0; k <= m; ++k) s += Q(binomial(m, k)) * bernoulli(k) * qpow(x, m - k);
  s.canonicalize();
  return s;
}

inline long gcd_l(long a, long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline long mod_l(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<long> prime_divisors(long n) {
  std::vector<long> ps;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline long euler_phi(long n) {
  long r = n;
  for (long p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

}  // namespace kzb
