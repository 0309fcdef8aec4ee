#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "../errors.hpp"
#include "../extdecomp.hpp"
#include "../rational.hpp"
#include "../real.hpp"
#include "../roots.hpp"

namespace kzb {

struct NumValue {
  BigC value;
  Real err;  // absolute error estimate
};

inline mpfr_prec_t guard_prec(mpfr_prec_t p) { return p + 32; }

inline BigC round_to(BigC z, mpfr_prec_t p) {
  mpfr_prec_round(z.re.get(), p, MPFR_RNDN);
  mpfr_prec_round(z.im.get(), p, MPFR_RNDN);
  return z;
}

// Hurwitz zeta(s, a), integer s >= 2, 0 < a, by Euler-Maclaurin.
inline NumValue hurwitz_zeta(int s, const Real& a, mpfr_prec_t prec) {
  if (s < 2) throw DomainError("hurwitz_zeta needs s >= 2");
  if (a.sign() <= 0) throw DomainError("hurwitz_zeta needs a > 0");
  const mpfr_prec_t wp = guard_prec(prec);
  const long M = static_cast<long>(prec) / 2 + 10;
  const int K = static_cast<int>(prec) / 4 + 4;
  Real sum(wp);
  Real x(wp);
  for (long n = 0; n < M; ++n) {
    x = a + Real(n, wp);
    sum += pow_si(x, -s);
  }
  Real xm = a + Real(M, wp);
  sum += pow_si(xm, 1 - s) / long(s - 1);
  sum += pow_si(xm, -s) / 2L;
  Real rise(1L, wp);  // s (s+1) ... (s+2k-2)
  Real xpow = pow_si(xm, -s - 1);
  const Real inv2 = Real(1L, wp) / (xm * xm);
  Real last(wp);
  for (int k = 1; k <= K + 1; ++k) {
    if (k > 1) rise *= Real(long(s + 2 * k - 3), wp) * Real(long(s + 2 * k - 2), wp);
    else rise = Real(long(s), wp);
    Q c = bernoulli(2 * k) / Q(factorial(2 * k));
    Real term = rise * xpow * c;
    if (k == K + 1) {
      last = abs(term);
      break;
    }
    sum += term;
    xpow *= inv2;
  }
  mpfr_prec_round(sum.get(), prec, MPFR_RNDN);
  Real err = last + pow2(-static_cast<long>(prec), prec) * abs(sum);
  return {BigC(sum, Real(prec)), err};
}

// Li_m(zeta_N^k); m = 1 allowed off the unit root.
inline NumValue li_with_error(int m, const Root& r, mpfr_prec_t prec) {
  if (m < 1) throw DomainError("li needs m >= 1");
  const mpfr_prec_t wp = guard_prec(prec);
  if (r.k == 0) {
    if (m == 1) throw DomainError("Li_1(1) diverges");
    Real z = riemann_zeta(static_cast<unsigned long>(m), prec);
    return {BigC(z, Real(prec)), pow2(1 - static_cast<long>(prec), prec) * z};
  }
  if (m == 1) {
    BigC z = root_of_unity(r.k, r.N, wp);
    BigC v = -log(BigC(1L, wp) - z);
    return {round_to(v, prec), pow2(2 - static_cast<long>(prec), prec) * abs(v)};
  }
  const long g = gcd_l(r.k, r.N);
  const long d = r.N / g, k = r.k / g;
  BigC acc(wp);
  Real err(wp);
  for (long j = 1; j <= d; ++j) {
    NumValue h = hurwitz_zeta(m, Real(frac(j, d), wp), wp);
    acc += root_of_unity(k * j, d, wp) * h.value;
    err += h.err;
  }
  Real scale = pow_si(Real(d, wp), -m);
  acc *= scale;
  err *= scale;
  err += pow2(1 - static_cast<long>(prec), prec) * abs(acc);
  return {round_to(acc, prec), err};
}

inline BigC li(int m, const Root& r, mpfr_prec_t prec) { return li_with_error(m, r, prec).value; }

namespace detail {

// Values of int_0^x of each prefix of `poles` (prefix i = first i letters),
// with forms dt/(t - c), by power series in t. Needs |x| < |c| for c != 0
// and no leading pole 0.
inline std::vector<BigC> prefix_series_values(const std::vector<BigC>& poles, const Real& x, long D, mpfr_prec_t wp) {
  std::vector<BigC> out;
  std::vector<BigC> f(D + 1, BigC(wp));
  f[0] = BigC(1L, wp);
  out.push_back(BigC(1L, wp));
  std::vector<BigC> g(D + 1, BigC(wp));
  for (const BigC& c : poles) {
    std::vector<BigC> nf(D + 1, BigC(wp));
    if (c.is_zero()) {
      if (!f[0].is_zero()) throw NumericError("divergent iterated integral at 0");
      for (long n = 1; n <= D; ++n) nf[n] = f[n] / n;
    } else {
      BigC inv = BigC(1L, wp) / c;
      BigC prev(wp);
      for (long n = 0; n < D; ++n) {
        prev = (prev - f[n]) * inv;
        nf[n + 1] = prev / (n + 1);
      }
    }
    f = std::move(nf);
    BigC v(wp);
    for (long n = D; n >= 0; --n) {
      v *= x;
      v += f[n];
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

// int_0^1 of the word with forms dt/(t - c_i), first letter innermost;
// convergent words only. Split at p and expand both halves as power series.
inline BigC iterint_01_series(const std::vector<BigC>& poles, mpfr_prec_t prec) {
  const mpfr_prec_t wp = guard_prec(prec);
  if (poles.empty()) return BigC(1L, wp);
  double minA = 1e300, minB = 1e300;
  for (const BigC& c : poles) {
    const double ac = abs(c).to_double();
    if (ac > 0) minA = std::min(minA, ac);
    const double bc = abs(BigC(1L, wp) - c).to_double();
    if (bc > 0) minB = std::min(minB, bc);
  }
  if (minA < 1 - 1e-12) throw DomainError("pole inside the unit disc");
  double p = std::max(0.5, 1.0 / (1.0 + minB));
  p = std::min(p, 1.0 - 1e-3);
  const double rate = std::max(p / minA, (1 - p) / minB);
  if (rate >= 0.999) throw NumericError("Hölder split does not converge");
  const long D = static_cast<long>((static_cast<double>(wp) * std::log(2.0) + 10 * poles.size()) / -std::log(rate)) + 20;
  Real pr(Q(mpq_class(static_cast<long>(p * 1024), 1024)), wp);
  Real qr = Real(1L, wp) - pr;
  auto A = detail::prefix_series_values(poles, pr, D, wp);
  std::vector<BigC> rev;
  for (auto it = poles.rbegin(); it != poles.rend(); ++it) rev.push_back(BigC(1L, wp) - *it);
  auto B = detail::prefix_series_values(rev, qr, D, wp);
  const std::size_t n = poles.size();
  BigC total(wp);
  for (std::size_t i = 0; i <= n; ++i) {
    const std::size_t len = n - i;
    BigC b = B[len];
    if (len % 2 == 1) b = -b;
    total += A[i] * b;
  }
  return round_to(total, prec);
}

// Letters of the iterated-integral form of Li_{n_1..n_m}(z_1..z_m) and its sign.
inline std::vector<BigC> multiple_li_poles(const std::vector<int>& ns, const std::vector<BigC>& zs, mpfr_prec_t wp) {
  std::vector<BigC> poles;
  const std::size_t m = ns.size();
  for (std::size_t i = 0; i < m; ++i) {
    BigC prod(1L, wp);
    for (std::size_t j = i; j < m; ++j) prod *= zs[j];
    poles.push_back(BigC(1L, wp) / prod);
    for (int t = 1; t < ns[i]; ++t) poles.push_back(BigC(wp));
  }
  return poles;
}

// sum_{0<k_1<...<k_m} prod z_i^{k_i} / k_i^{n_i}
inline NumValue multiple_li(const std::vector<int>& ns, const std::vector<BigC>& zs, mpfr_prec_t prec) {
  if (ns.empty() || ns.size() != zs.size()) throw DomainError("multiple_li needs matching nonempty index and argument lists");
  for (int n : ns)
    if (n < 1) throw DomainError("indices must be >= 1");
  const mpfr_prec_t wp = guard_prec(prec);
  const Real one(1L, wp);
  const Real tiny = pow2(-static_cast<long>(prec) / 2, wp);
  for (const auto& z : zs)
    if (abs(z) > one + tiny) throw DomainError("arguments must lie in the closed unit polydisc");
  const std::size_t m = ns.size();
  const double rm = abs(zs.back()).to_double();
  if (rm > 1 - 1e-12 && ns.back() == 1) throw DomainError("divergent: n_m = 1 at |z_m| = 1");
  if (rm <= 0.75) {
    std::vector<BigC> A(m, BigC(wp));  // running sums of S_j up to k - 1
    std::vector<BigC> zk(m, BigC(1L, wp));
    BigC total(wp);
    const double target = -static_cast<double>(wp) * std::log(2.0);
    for (long k = 1;; ++k) {
      std::vector<BigC> S(m, BigC(wp));
      for (std::size_t j = 0; j < m; ++j) {
        zk[j] *= zs[j];
        BigC t = zk[j] * pow_si(Real(k, wp), -ns[j]);
        S[j] = j == 0 ? t : t * A[j - 1];
      }
      for (std::size_t j = 0; j < m; ++j) A[j] += S[j];
      total += S[m - 1];
      if (rm == 0) break;
      const double bound = k * std::log(rm) + m * std::log(double(k) + 1) - std::log(1 - rm);
      if (bound < target) break;
    }
    return {round_to(total, prec), pow2(4 - static_cast<long>(prec), prec) * (abs(total) + one)};
  }
  BigC v = iterint_01_series(multiple_li_poles(ns, zs, wp), wp);
  if (m % 2 == 1) v = -v;
  return {round_to(v, prec), pow2(8 - static_cast<long>(prec), prec) * (abs(v) + one)};
}

inline Real mzv(const std::vector<int>& ns, mpfr_prec_t prec) {
  std::vector<BigC> zs(ns.size(), BigC(1L, guard_prec(prec)));
  return multiple_li(ns, zs, prec).value.re;
}

// Best continued-fraction convergent p/q with q <= max_den and |x - p/q| <= tol.
inline std::optional<Q> rational_reconstruct(const Real& x, const Z& max_den, const Real& tol) {
  const mpfr_prec_t wp = x.prec();
  Z h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  Real y = x;
  for (int it = 0; it < 200; ++it) {
    Real fl(wp);
    mpfr_floor(fl.get(), y.get());
    Z a;
    mpfr_get_z(a.get_mpz_t(), fl.get(), MPFR_RNDN);
    Z h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    Q cand(h1, k1);
    cand.canonicalize();
    if (abs(x - Real(cand, wp)) <= tol) return cand;
    Real rem = y - fl;
    if (rem.is_zero()) break;
    y = Real(1L, wp) / rem;
  }
  return std::nullopt;
}

inline Real default_tolerance(mpfr_prec_t prec) { return pow2(-static_cast<long>(prec) / 2, prec); }

// (Li_m(zeta) + (-1)^m Li_m(conj zeta)) / (2 pi i)^m, reconstructed and
// compared with -B_m(k/N)/m!.
inline Q bernoulli_pairing(int m, const Root& r, mpfr_prec_t prec) {
  if (m < 2) throw DomainError("bernoulli_pairing needs m >= 2");
  const mpfr_prec_t wp = guard_prec(prec);
  BigC s = li(m, r, wp);
  BigC t = li(m, r.conj(), wp);
  if (m % 2 == 1) t = -t;
  BigC v = (s + t) / pow_int(BigC::two_pi_i(wp), m);
  const Real tol = default_tolerance(prec);
  if (abs(v.im) > tol) throw NumericError("pairing has a nonzero imaginary part");
  Z max_den;
  mpz_ui_pow_ui(max_den.get_mpz_t(), 2, static_cast<unsigned long>(prec / 4));
  auto q = rational_reconstruct(v.re, max_den, tol);
  if (!q) throw NumericError("pairing failed to reconstruct");
  Q expect = -bernoulli_poly(m, frac(r.k, r.N)) / Q(factorial(m));
  expect.canonicalize();
  if (*q != expect) throw ContractViolation("bernoulli pairing", "got " + to_string(*q) + ", expected " + to_string(expect));
  return *q;
}

struct DecompositionResidual {
  BigC residual;             // (Li_m(zeta^j) - sum_b c_b Li_m(zeta^b)) / (2 pi i)^m
  std::optional<Q> rational;
};

inline DecompositionResidual decomposition_residual(long N, int m, long j, mpfr_prec_t prec) {
  const mpfr_prec_t wp = guard_prec(prec);
  ExtClass e = decompose(N, m, j);
  BigC r = li(m, Root(j, N), wp);
  for (const auto& [b, c] : e.coords) r -= li(m, b, wp) * c;
  r /= pow_int(BigC::two_pi_i(wp), m);
  const Real tol = default_tolerance(prec);
  DecompositionResidual out{round_to(r, prec), std::nullopt};
  if (abs(r.im) <= tol) out.rational = rational_reconstruct(r.re, Z(1000000), tol);
  return out;
}

// max |l^{m-1} sum_{w^l = z} Li_m(w) - Li_m(z)| over z in mu_N.
inline Real distribution_residual(long N, int m, long l, mpfr_prec_t prec) {
  const mpfr_prec_t wp = guard_prec(prec);
  Real worst(wp);
  for (long k = 0; k < N; ++k) {
    if (m == 1 && k == 0) continue;
    BigC s(wp);
    bool skip = false;
    for (long t = 0; t < l; ++t) {
      Root w(k + t * N, l * N);
      if (m == 1 && w.k == 0) skip = true;
      else s += li(m, w, wp);
    }
    if (skip) continue;
    s *= pow_si(Real(l, wp), m - 1);
    s -= li(m, Root(k, N), wp);
    worst = max(worst, abs(s));
  }
  return worst;
}

}  // namespace kzb
