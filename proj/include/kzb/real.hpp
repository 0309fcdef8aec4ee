#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>

#include "errors.hpp"
#include "rational.hpp"

namespace kzb {

// MPFR value owning its precision. Binary operations round to the larger
// precision of the operands, so a constant built at 2 bits never degrades.
class Real {
 public:
  static constexpr mpfr_prec_t kMinPrec = MPFR_PREC_MIN;

  Real() : Real(0L, kMinPrec) {}
  explicit Real(mpfr_prec_t prec) {
    mpfr_init2(v_, std::max(prec, kMinPrec));
    mpfr_set_zero(v_, 1);
  }
  Real(long x, mpfr_prec_t prec) {
    mpfr_init2(v_, std::max(prec, kMinPrec));
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  Real(double x, mpfr_prec_t prec) {
    mpfr_init2(v_, std::max(prec, kMinPrec));
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Real(const Q& q, mpfr_prec_t prec) {
    mpfr_init2(v_, std::max(prec, kMinPrec));
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  Real(const std::string& s, mpfr_prec_t prec) {
    mpfr_init2(v_, std::max(prec, kMinPrec));
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
      mpfr_clear(v_);
      throw DomainError("not a number: " + s);
    }
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, kMinPrec);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long exponent() const { return is_zero() ? -(1L << 40) : mpfr_get_exp(v_); }

  // Decimal scientific string with `digits` significant digits.
  std::string str(int digits = 0) const {
    if (digits <= 0) digits = static_cast<int>(prec() * 0.30103) + 1;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  static Real pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) { return binop_(o, mpfr_add); }
  Real& operator-=(const Real& o) { return binop_(o, mpfr_sub); }
  Real& operator*=(const Real& o) { return binop_(o, mpfr_mul); }
  Real& operator/=(const Real& o) { return binop_(o, mpfr_div); }
  Real& operator*=(const Q& q) {
    mpfr_mul_q(v_, v_, q.get_mpq_t(), MPFR_RNDN);
    return *this;
  }
  Real& operator*=(long x) {
    mpfr_mul_si(v_, v_, x, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(long x) {
    mpfr_div_si(v_, v_, x, MPFR_RNDN);
    return *this;
  }

  Real operator-() const {
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator*(Real a, const Q& q) { return a *= q; }
  friend Real operator*(Real a, long x) { return a *= x; }
  friend Real operator/(Real a, long x) { return a /= x; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  template <class F>
  Real apply(F f) const {
    Real r(prec());
    f(r.v_, v_, MPFR_RNDN);
    return r;
  }

 private:
  using Op = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  Real& binop_(const Real& o, Op op) {
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
    op(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

inline Real abs(const Real& x) { return x.apply(mpfr_abs); }
inline Real sqrt(const Real& x) { return x.apply(mpfr_sqrt); }
inline Real exp(const Real& x) { return x.apply(mpfr_exp); }
inline Real log(const Real& x) { return x.apply(mpfr_log); }
inline Real sin(const Real& x) { return x.apply(mpfr_sin); }
inline Real cos(const Real& x) { return x.apply(mpfr_cos); }
inline Real atan2(const Real& y, const Real& x) {
  Real r(std::max(x.prec(), y.prec()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}
inline Real pow_si(const Real& x, long e) {
  Real r(x.prec());
  mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}
inline Real ldexp(const Real& x, long e) {
  Real r(x);
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
  return r;
}
inline Real riemann_zeta(unsigned long n, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_zeta_ui(r.get(), n, MPFR_RNDN);
  return r;
}
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }

// Exact 2^e as a Real of the given precision.
inline Real pow2(long e, mpfr_prec_t prec) { return ldexp(Real(1L, prec), e); }

class BigC {
 public:
  Real re, im;

  BigC() = default;
  explicit BigC(mpfr_prec_t prec) : re(prec), im(prec) {}
  BigC(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit BigC(Real r) : re(std::move(r)), im(Real::kMinPrec) {}
  BigC(long x, mpfr_prec_t prec) : re(x, prec), im(prec) {}
  BigC(const Q& q, mpfr_prec_t prec) : re(q, prec), im(prec) {}
  BigC(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}

  mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  BigC conj() const { return BigC(re, -im); }
  Real norm2() const { return re * re + im * im; }

  static BigC i(mpfr_prec_t prec) { return BigC(Real(prec), Real(1L, prec)); }
  static BigC two_pi_i(mpfr_prec_t prec) { return BigC(Real(prec), Real::pi(prec) * 2L); }
  static BigC polar(const Real& r, const Real& theta) { return BigC(r * cos(theta), r * sin(theta)); }

  BigC& operator+=(const BigC& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  BigC& operator-=(const BigC& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  BigC& operator*=(const BigC& o) {
    Real r = re * o.re - im * o.im;
    Real j = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(j);
    return *this;
  }
  BigC& operator/=(const BigC& o) {
    Real d = o.norm2();
    if (d.is_zero()) throw NumericError("complex division by zero");
    Real r = (re * o.re + im * o.im) / d;
    Real j = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(j);
    return *this;
  }
  BigC& operator*=(const Real& x) {
    re *= x;
    im *= x;
    return *this;
  }
  BigC& operator*=(const Q& q) {
    re *= q;
    im *= q;
    return *this;
  }
  BigC& operator*=(long x) {
    re *= x;
    im *= x;
    return *this;
  }
  BigC& operator/=(long x) {
    re /= x;
    im /= x;
    return *this;
  }
  BigC operator-() const { return BigC(-re, -im); }

  friend BigC operator+(BigC a, const BigC& b) { return a += b; }
  friend BigC operator-(BigC a, const BigC& b) { return a -= b; }
  friend BigC operator*(BigC a, const BigC& b) { return a *= b; }
  friend BigC operator/(BigC a, const BigC& b) { return a /= b; }
  friend BigC operator*(BigC a, const Real& x) { return a *= x; }
  friend BigC operator*(const Real& x, BigC a) { return a *= x; }
  friend BigC operator*(BigC a, const Q& q) { return a *= q; }
  friend BigC operator*(BigC a, long x) { return a *= x; }
  friend BigC operator/(BigC a, long x) { return a /= x; }
};

inline Real abs(const BigC& z) {
  Real r(z.prec());
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}
inline Real arg(const BigC& z) { return atan2(z.im, z.re); }
inline BigC exp(const BigC& z) { return BigC::polar(exp(z.re), z.im); }
// Principal branch, arg in (-pi, pi].
inline BigC log(const BigC& z) {
  if (z.is_zero()) throw NumericError("log(0)");
  return BigC(log(abs(z)), arg(z));
}
inline BigC pow_int(BigC z, long e) {
  if (e < 0) {
    BigC one(1L, z.prec());
    return pow_int(one / z, -e);
  }
  BigC r(1L, z.prec());
  while (e) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

// exp(2 pi i k / N), with the axis points exact.
inline BigC root_of_unity(long k, long N, mpfr_prec_t prec) {
  k = mod_l(k, N);
  if (k == 0) return BigC(1L, prec);
  if (2 * k == N) return BigC(-1L, prec);
  if (4 * k == N) return BigC(Real(prec), Real(1L, prec));
  if (4 * k == 3 * N) return BigC(Real(prec), Real(-1L, prec));
  Real theta = Real::pi(prec) * frac(2 * k, N);
  return BigC(cos(theta), sin(theta));
}

inline std::string to_string(const BigC& z, int digits = 0) { return z.re.str(digits) + (z.im.sign() < 0 ? " - " : " + ") + abs(z.im).str(digits) + "i"; }

}  // namespace kzb
