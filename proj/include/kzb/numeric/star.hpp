#pragma once

#include <vector>

#include "../alphabet.hpp"
#include "../polyquot.hpp"
#include "../series.hpp"
#include "iterint.hpp"

namespace kzb {

struct StarResult {
  long N;
  int cutoff;
  Real residual_mod_d2;  // max discrepancy of the log coordinates e0, e0^n . e_zeta
  Real residual_full;    // max discrepancy of all word coefficients of the two group elements
  Real residual_hain;    // max discrepancy after the Hain map on the quotients
};

namespace detail {

inline NCS<BigC> kz_letter(long N, int cutoff, long prec, Letter g) { return NCS<BigC>::letter(Alphabet::kz(N), cutoff, g, prec); }

// e_inf = -e0 - sum_zeta e_zeta
inline NCS<BigC> kz_einf(long N, int cutoff, long prec) {
  NCS<BigC> s = -kz_letter(N, cutoff, prec, 0);
  for (long k = 0; k < N; ++k) s -= kz_letter(N, cutoff, prec, static_cast<Letter>(1 + k));
  return s;
}

inline NCS<BigC> exp_scaled(const NCS<BigC>& x, const BigC& c) { return exp_series(x.scaled(c)); }

// e_r -> e_{r eta}
inline NCS<BigC> rotate(const NCS<BigC>& s, long N, long eta) {
  std::vector<NCS<BigC>> img{kz_letter(N, s.cutoff(), s.prec(), 0)};
  for (long k = 0; k < N; ++k) img.push_back(kz_letter(N, s.cutoff(), s.prec(), static_cast<Letter>(1 + mod_l(k + eta, N))));
  return substitute(s, img);
}

inline KzPolyQuot<BigC> kz_mod_d2_coords(const NCS<BigC>& lg, long N, int cutoff, long prec) {
  KzPolyQuot<BigC> q(N, cutoff);
  q.set_a(lg.coeff(Word(1, 0)));
  for (long k = 0; k < N; ++k)
    for (int n = 0; n + 1 <= cutoff; ++n) {
      Word w(n, 0);
      w.push_back(static_cast<char>(1 + k));
      BigC c = lg.coeff(w);
      if (!c.is_zero()) q.add(k, n, c);
    }
  (void)prec;
  return q;
}

}  // namespace detail

// Both sides of the star relation, computed from a numeric associator:
//   G(alpha)  = P exp(-L e_inf) P^{-1},  P = G(1 -> inf)
//   G(alpha') = e^{L e1/2} Phi_10 [prod_k e^{L e0/N} Phi_{0 xi^k} e^{L e_{xi^k}} Phi_{0 xi^k}^{-1}] e^{L e0/N} Phi_01 e^{L e1/2}
// with L = 2 pi i. `perturb` shifts the coefficient of e0 e1 in Phi_01.
inline StarResult star_check_with(const NCS<BigC>& phi_in, long N, mpfr_prec_t prec, double perturb = 0) {
  using detail::kz_letter;
  const int cutoff = phi_in.cutoff();
  const long wp = phi_in.prec();
  NCS<BigC> phi = phi_in;
  if (perturb != 0) phi.add(Word{0, 1}, BigC(perturb, 0.0, wp));
  const BigC L = BigC::two_pi_i(wp);
  const auto e0 = kz_letter(N, cutoff, wp, 0);
  const auto e1 = kz_letter(N, cutoff, wp, 1);
  const auto einf = detail::kz_einf(N, cutoff, wp);
  const NCS<BigC> phi_inv = inverse(phi);

  std::vector<NCS<BigC>> img{einf};
  for (long k = 0; k < N; ++k) img.push_back(kz_letter(N, cutoff, wp, static_cast<Letter>(1 + mod_l(-k, N))));
  const NCS<BigC> P = substitute(phi_inv, img);
  const NCS<BigC> lhs = P * detail::exp_scaled(einf, -L) * inverse(P);

  const BigC half = L * Q(1, 2);
  const BigC turn0 = L * Q(1, N);
  NCS<BigC> rhs = detail::exp_scaled(e1, half) * phi_inv;
  for (long k = 1; k < N; ++k) {
    const NCS<BigC> rot = detail::rotate(phi, N, k);
    rhs = rhs * detail::exp_scaled(e0, turn0) * rot * detail::exp_scaled(kz_letter(N, cutoff, wp, static_cast<Letter>(1 + k)), L) * inverse(rot);
  }
  rhs = rhs * detail::exp_scaled(e0, turn0) * phi * detail::exp_scaled(e1, half);

  StarResult r{N, cutoff, Real(prec), Real(prec), Real(prec)};
  for (const auto& [w, c] : lhs.terms()) r.residual_full = max(r.residual_full, abs(c - rhs.coeff(w)));
  for (const auto& [w, c] : rhs.terms()) r.residual_full = max(r.residual_full, abs(c - lhs.coeff(w)));

  const auto ql = detail::kz_mod_d2_coords(log_series(lhs), N, cutoff, wp);
  const auto qr = detail::kz_mod_d2_coords(log_series(rhs), N, cutoff, wp);
  r.residual_mod_d2 = abs(ql.a() - qr.a());
  for (long k = 0; k < N; ++k)
    for (int n = 0; n < cutoff; ++n) r.residual_mod_d2 = max(r.residual_mod_d2, abs(ql.coeff(k, n) - qr.coeff(k, n)));

  const auto hd = hain_mod_d2(ql - qr, cutoff + 1);
  for (const auto& c : hd.coordinates()) r.residual_hain = max(r.residual_hain, abs(c));
  return r;
}

inline StarResult star_check(long N, mpfr_prec_t prec, int cutoff = 3, double perturb = 0) {
  if (N < 1 || N > 6) throw DomainError("star_check supports 1 <= N <= 6");
  return star_check_with(associator(N, cutoff, prec), N, prec, perturb);
}

}  // namespace kzb
