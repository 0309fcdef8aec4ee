#pragma once

#include <array>
#include <functional>

#include "../real.hpp"
#include "polylog.hpp"
#include "quadrature.hpp"

namespace kzb {

namespace detail {

struct Mat3 {
  std::array<std::array<Real, 3>, 3> a;

  explicit Mat3(mpfr_prec_t p) {
    for (auto& r : a)
      for (auto& v : r) v = Real(p);
  }
  static Mat3 identity(mpfr_prec_t p) {
    Mat3 m(p);
    for (int i = 0; i < 3; ++i) m.a[i][i] = Real(1L, p);
    return m;
  }
  static Mat3 unit(int i, int j, const Real& c) {
    Mat3 m(c.prec());
    m.a[i][j] = c;
    return m;
  }
  Mat3& operator+=(const Mat3& o) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] += o.a[i][j];
    return *this;
  }
  Mat3& operator-=(const Mat3& o) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] -= o.a[i][j];
    return *this;
  }
  friend Mat3 operator+(Mat3 x, const Mat3& y) { return x += y; }
  friend Mat3 operator-(Mat3 x, const Mat3& y) { return x -= y; }
  friend Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r(x.a[0][0].prec());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) r.a[i][j] += x.a[i][k] * y.a[k][j];
    return r;
  }
  friend Mat3 operator*(Mat3 x, const Real& s) {
    for (auto& r : x.a)
      for (auto& v : r) v *= s;
    return x;
  }
  Real max_abs() const {
    Real m(a[0][0].prec());
    for (const auto& r : a)
      for (const auto& v : r) m = max(m, abs(v));
    return m;
  }
};

// exp of a strictly upper triangular 3x3 matrix.
inline Mat3 exp_nil(const Mat3& n) {
  const mpfr_prec_t p = n.a[0][0].prec();
  return Mat3::identity(p) + n + (n * n) * Real(Q(1, 2), p);
}

// (I + n)^{-1} for strictly upper triangular n.
inline Mat3 inv_unipotent(const Mat3& u) {
  const mpfr_prec_t p = u.a[0][0].prec();
  Mat3 n = u - Mat3::identity(p);
  return Mat3::identity(p) - n + n * n;
}

// Solution of dG/dx = G A(x) / x, G(x0) = I, on the segment [x0, x1].
inline Mat3 solve_horizontal(const std::function<Mat3(const Real&)>& A, const Real& x0, const Real& x1, mpfr_prec_t prec, int panels = 4) {
  const mpfr_prec_t wp = guard_prec(prec);
  const int n = panel_nodes(prec);
  const GaussRule& g = gauss_rule(n, wp);
  Mat3 G = Mat3::identity(wp);
  const Real h = (x1 - x0) / long(panels);
  for (int p = 0; p < panels; ++p) {
    const Real a = x0 + h * long(p);
    const Real half = ldexp(h, -1);
    const Real mid = a + half;
    std::vector<Mat3> Ax;
    for (int j = 0; j < n; ++j) {
      Real x = mid + half * g.x[j];
      Ax.push_back(A(x) * (half / x));
    }
    std::vector<Mat3> F(n, G);
    for (int it = 0; it < 8; ++it) {  // nilpotent integrand: exact after three sweeps
      std::vector<Mat3> nf(n, G);
      std::vector<Mat3> prod;
      for (int j = 0; j < n; ++j) prod.push_back(F[j] * Ax[j]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) nf[i] += prod[j] * g.S[i][j];
      F = std::move(nf);
    }
    std::vector<Mat3> prod;
    for (int j = 0; j < n; ++j) prod.push_back(F[j] * Ax[j]);
    Mat3 next = G;
    for (int j = 0; j < n; ++j) next += prod[j] * g.w[j];
    G = std::move(next);
  }
  return G;
}

}  // namespace detail

struct LinearizedResult {
  Real residual_gauge;       // regularized transport vs linearized transport, gauge-transformed connection
  Real residual_closed_form; // constant commuting residues vs (x1/x0)^{-A}(lambda1/lambda0)^{-B}
  Real lambda_sensitivity;   // change of the regularized transport between lambda1 = 1 and 2
};

// Toy connection d + A dx/x + B dy/y obtained from A0 dx/x + B0 dy/y
// (commuting nilpotent constants) by the gauge h = exp(x H1)(I + x y H2).
inline LinearizedResult linearized_transport_check(mpfr_prec_t prec) {
  using detail::Mat3;
  const mpfr_prec_t wp = guard_prec(prec);
  auto R = [&](long p, long q) { return Real(Q(p, q), wp); };
  const Mat3 A0 = Mat3::unit(0, 1, R(1, 1)) + Mat3::unit(1, 2, R(1, 1));
  const Mat3 B0 = A0 * R(1, 2) + (A0 * A0) * R(1, 1);
  const Mat3 H1 = Mat3::unit(0, 1, R(3, 10)) + Mat3::unit(0, 2, R(1, 5));
  const Mat3 H2 = Mat3::unit(1, 2, R(1, 2));
  const Mat3 I = Mat3::identity(wp);

  auto h = [&](const Real& x, const Real& y) { return detail::exp_nil(H1 * x) * (I + H2 * (x * y)); };
  auto A = [&](const Real& x, const Real& y) {
    const Mat3 hh = h(x, y), hi = detail::inv_unipotent(hh);
    const Mat3 e = detail::exp_nil(H1 * x);
    const Mat3 xdh = (H1 * x) * hh + e * H2 * (x * y);
    return hi * A0 * hh + hi * xdh;
  };
  auto B = [&](const Real& x, const Real& y) {
    const Mat3 hh = h(x, y), hi = detail::inv_unipotent(hh);
    const Mat3 ydh = detail::exp_nil(H1 * x) * H2 * (x * y);
    return hi * B0 * hh + hi * ydh;
  };

  const Real x0 = R(1, 1), x1 = R(2, 1), l0 = R(1, 1), l1 = R(2, 1);
  const Real y = pow2(-static_cast<long>(prec) * 3 / 4, wp);
  const Real zero(wp);

  auto regularized = [&](const Real& lam0, const Real& lam1) {
    Mat3 G = detail::solve_horizontal([&](const Real& x) { return A(x, y); }, x0, x1, prec);
    return detail::exp_nil(B(x0, zero) * log(y / lam0)) * G * detail::exp_nil(B(x1, zero) * -log(y / lam1));
  };
  const Mat3 Greg = regularized(l0, l1);
  const Mat3 G1 = detail::solve_horizontal([&](const Real& x) { return A(x, zero); }, x0, x1, prec);
  const Mat3 Glin = G1 * detail::exp_nil(B(x1, zero) * log(l1 / l0));

  // constant commuting residues
  Mat3 Gc = detail::solve_horizontal([&](const Real&) { return A0; }, x0, x1, prec);
  Gc = detail::exp_nil(B0 * log(y / l0)) * Gc * detail::exp_nil(B0 * -log(y / l1));
  const Mat3 Tc = detail::inv_unipotent(Gc);
  const Mat3 closed = detail::exp_nil(A0 * -log(x1 / x0)) * detail::exp_nil(B0 * -log(l1 / l0));

  LinearizedResult r{(detail::inv_unipotent(Greg) - detail::inv_unipotent(Glin)).max_abs(), (Tc - closed).max_abs(),
                     (regularized(l0, l1) - regularized(l0, l0)).max_abs()};
  for (Real* v : {&r.residual_gauge, &r.residual_closed_form, &r.lambda_sensitivity}) mpfr_prec_round(v->get(), prec, MPFR_RNDN);
  return r;
}

}  // namespace kzb
