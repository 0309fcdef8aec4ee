#pragma once

#include <map>
#include <string>

#include "errors.hpp"
#include "extdecomp.hpp"
#include "linalg.hpp"
#include "numeric/polylog.hpp"
#include "rational.hpp"
#include "real.hpp"
#include "roots.hpp"

namespace kzb {

// Formal Q-combination of Eisenstein symbols G_{m, zeta_N^k}.
struct EisensteinSym {
  int m = 3;
  long N = 1;
  std::map<long, Q> terms;  // residue k -> coefficient, zeros never stored

  static EisensteinSym single(int m, const Root& r, const Q& c = Q(1)) {
    if (m < 3) throw DomainError("Eisenstein symbols need m >= 3");
    EisensteinSym s{m, r.N, {}};
    s.add(r.k, c);
    return s;
  }
  void add(long k, const Q& c) {
    if (c == 0) return;
    Q& v = terms[mod_l(k, N)];
    v += c;
    v.canonicalize();
    if (v == 0) terms.erase(mod_l(k, N));
  }
  EisensteinSym& operator+=(const EisensteinSym& o) {
    if (o.m != m || o.N != N) throw MismatchError("Eisenstein symbols of different weight or level");
    for (const auto& [k, c] : o.terms) add(k, c);
    return *this;
  }
  EisensteinSym scaled(const Q& s) const {
    EisensteinSym r{m, N, {}};
    for (const auto& [k, c] : terms) r.add(k, c * s);
    return r;
  }
  friend bool operator==(const EisensteinSym& a, const EisensteinSym& b) {
    return a.m == b.m && a.N == b.N && a.terms == b.terms;
  }
  std::string str() const {
    std::string s;
    for (const auto& [k, c] : terms) {
      if (!s.empty()) s += " + ";
      s += "(" + to_string(c) + ")G[" + std::to_string(m) + "," + std::to_string(k) + "/" + std::to_string(N) + "]";
    }
    return s.empty() ? "0" : s;
  }
};

// sum over 0 < max(|k|, |l|) <= R of zeta^k / (k tau + l)^m, paired as (k, l), (-k, -l).
inline NumValue eisenstein_eval(int m, const Root& r, const BigC& tau, long R, mpfr_prec_t prec) {
  if (m < 3) throw DomainError("eisenstein_eval needs m >= 3");
  if (tau.im.sign() <= 0) throw DomainError("tau must lie in the upper half plane");
  if (R < 10) throw DomainError("radius must be >= 10");
  const mpfr_prec_t wp = prec + 16;
  const BigC t = round_to(tau, wp);
  BigC total(wp);
  // scratch: w = k tau + l, u = 1/w, v = u^m, s = running sum over l
  Real wr(wp), wi(wp), nrm(wp), ur(wp), ui(wp), vr(wp), vi(wp), tr(wp), sr(wp), si(wp), tmp(wp);
  for (long k = 0; k <= R; ++k) {
    mpfr_set_zero(sr.get(), 1);
    mpfr_set_zero(si.get(), 1);
    for (long l = (k == 0 ? 1 : -R); l <= R; ++l) {
      mpfr_mul_si(wr.get(), t.re.get(), k, MPFR_RNDN);
      mpfr_add_si(wr.get(), wr.get(), l, MPFR_RNDN);
      mpfr_mul_si(wi.get(), t.im.get(), k, MPFR_RNDN);
      mpfr_sqr(nrm.get(), wr.get(), MPFR_RNDN);
      mpfr_fma(nrm.get(), wi.get(), wi.get(), nrm.get(), MPFR_RNDN);
      mpfr_div(ur.get(), wr.get(), nrm.get(), MPFR_RNDN);
      mpfr_div(ui.get(), wi.get(), nrm.get(), MPFR_RNDN);
      mpfr_neg(ui.get(), ui.get(), MPFR_RNDN);
      mpfr_set(vr.get(), ur.get(), MPFR_RNDN);
      mpfr_set(vi.get(), ui.get(), MPFR_RNDN);
      for (int e = 1; e < m; ++e) {
        // (vr + i vi)(ur + i ui)
        mpfr_mul(tr.get(), vr.get(), ur.get(), MPFR_RNDN);
        mpfr_mul(tmp.get(), vi.get(), ui.get(), MPFR_RNDN);
        mpfr_sub(tr.get(), tr.get(), tmp.get(), MPFR_RNDN);
        mpfr_mul(vi.get(), vi.get(), ur.get(), MPFR_RNDN);
        mpfr_fma(vi.get(), vr.get(), ui.get(), vi.get(), MPFR_RNDN);
        mpfr_swap(vr.get(), tr.get());
      }
      mpfr_add(sr.get(), sr.get(), vr.get(), MPFR_RNDN);
      mpfr_add(si.get(), si.get(), vi.get(), MPFR_RNDN);
    }
    // (zeta^k + (-1)^m zeta^{-k}) s
    BigC c = root_of_unity(r.k * k, r.N, wp);
    BigC cc = c.conj();
    if (m % 2 == 1) cc = -cc;
    total += (c + cc) * BigC(sr, si);
  }
  const double imt = std::min(1.0, tau.im.to_double());
  const double tail = 8.0 / (m - 2) * std::pow(static_cast<double>(R) * imt, 2.0 - m);
  return {round_to(total, prec), Real(tail, prec)};
}

inline BigC eval_sym(const EisensteinSym& s, const BigC& tau, long R, mpfr_prec_t prec) {
  BigC v(prec);
  for (const auto& [k, c] : s.terms) v += eisenstein_eval(s.m, Root(k, s.N), tau, R, prec).value * c;
  return v;
}

inline EisensteinSym hecke_tp(const EisensteinSym& s, long p) {
  if (!is_prime(p)) throw DomainError("T_p needs p prime");
  if (s.N % p == 0) throw DomainError("T_p needs p not dividing N");
  EisensteinSym r{s.m, s.N, {}};
  const Q pm = qpow(Q(p), s.m - 1);
  for (const auto& [k, c] : s.terms) {
    r.add(k, c * pm);
    r.add(k * p, c);
  }
  return r;
}

// [d] G_{m, zeta} = d^{m-2} sum_{xi^d = zeta} G_{m, xi}, at level dN.
inline EisensteinSym level_shift(const EisensteinSym& s, long d) {
  if (d < 1) throw DomainError("level shift needs d >= 1");
  EisensteinSym r{s.m, s.N * d, {}};
  const Q dm = qpow(Q(d), s.m - 2);
  for (const auto& [k, c] : s.terms)
    for (long j = 0; j < d; ++j) r.add(k + j * s.N, c * dm);
  return r;
}

// Numeric T_p through the p + 1 index-p sublattices:
// p^{m-1} [ sum_j p^{-m} G_zeta((tau + j)/p) + G_{zeta^p}(p tau) ].
inline NumValue hecke_tp_numeric(int m, const Root& r, const BigC& tau, long p, long R, mpfr_prec_t prec) {
  if (!is_prime(p)) throw DomainError("T_p needs p prime");
  BigC acc(prec);
  Real err(prec);
  const Real pmq(qpow(Q(p), -m), prec);
  for (long j = 0; j < p; ++j) {
    BigC t = tau;
    t.re += Real(j, prec);
    t /= p;
    NumValue v = eisenstein_eval(m, r, t, R, prec);
    acc += v.value * pmq;
    err += v.err * pmq;
  }
  NumValue v = eisenstein_eval(m, r.pow(p), tau * p, R, prec);
  acc += v.value;
  err += v.err;
  const Real pm(qpow(Q(p), m - 1), prec);
  return {acc * pm, err * pm};
}

inline NumValue hecke_tp_numeric(const EisensteinSym& s, const BigC& tau, long p, long R, mpfr_prec_t prec) {
  NumValue out{BigC(prec), Real(prec)};
  for (const auto& [k, c] : s.terms) {
    NumValue v = hecke_tp_numeric(s.m, Root(k, s.N), tau, p, R, prec);
    out.value += v.value * c;
    out.err += v.err * abs(Real(c, prec));
  }
  return out;
}

// |T_p G - (p^{m-1} G_zeta + G_{zeta^p})| at tau.
inline Real hecke_identity_residual(int m, const Root& r, long p, const BigC& tau, long R, mpfr_prec_t prec) {
  NumValue lhs = hecke_tp_numeric(m, r, tau, p, R, prec);
  BigC rhs = eval_sym(hecke_tp(EisensteinSym::single(m, r), p), tau, R, prec);
  return abs(lhs.value - rhs);
}

// |d^{m-1} G_zeta(d tau) - d^{m-2} sum_{xi^d = zeta} G_xi(tau)|
inline Real level_shift_residual(int m, const Root& r, long d, const BigC& tau, long R, mpfr_prec_t prec) {
  BigC lhs = eisenstein_eval(m, r, tau * d, R, prec).value * Real(qpow(Q(d), m - 1), prec);
  BigC rhs = eval_sym(level_shift(EisensteinSym::single(m, r), d), tau, R, prec);
  return abs(lhs - rhs);
}

// [d] T_p G vs T_p [d] G numerically: the left side evaluates the sublattice
// T_p at d tau; the right side applies the sublattice T_p to the shifted symbols.
inline Real shift_hecke_residual(int m, const Root& r, long d, long p, const BigC& tau, long R, mpfr_prec_t prec) {
  BigC lhs = hecke_tp_numeric(m, r, tau * d, p, R, prec).value * Real(qpow(Q(d), m - 1), prec);
  BigC rhs = hecke_tp_numeric(level_shift(EisensteinSym::single(m, r), d), tau, p, R, prec).value;
  return abs(lhs - rhs);
}

inline ExtClass psi(const EisensteinSym& s) {
  if (s.m < 3) throw DomainError("psi needs m >= 3");
  ExtClass e{s.N, s.m - 1, {}};
  for (const auto& [k, c] : s.terms) e += decompose(s.N, s.m - 1, k).scaled(c);
  return e;
}

// class(Li_w(zeta)) -> p^w class(zeta) + class(zeta^p), w the weight of e.
inline ExtClass tp_on_ext(long p, const ExtClass& e) {
  if (!is_prime(p)) throw DomainError("T_p needs p prime");
  if (e.N % p == 0) throw DomainError("T_p needs p not dividing N");
  ExtClass r{e.N, e.m, {}};
  const Q pw = qpow(Q(p), e.m);
  for (const auto& [b, c] : e.coords) {
    r += decompose(e.N, e.m, b.k).scaled(c * pw);
    r += decompose(e.N, e.m, b.k * p).scaled(c);
  }
  return r;
}

// T_p maps every relation row of weight w into the row span.
inline bool tp_respects_relations(long N, int w, long p) {
  if (N % p == 0) throw DomainError("T_p needs p not dividing N");
  const QMat rows = relation_matrix(N, w);
  const Q pw = qpow(Q(p), w);
  for (const auto& row : rows) {
    QVec t(N, Q(0));
    for (long j = 0; j < N; ++j) {
      if (row[j] == 0) continue;
      t[j] += pw * row[j];
      t[mod_l(j * p, N)] += row[j];
    }
    if (!in_row_span(rows, t)) return false;
  }
  return true;
}

inline bool psi_commutes(long N, int m, long p) {
  for (long k = 0; k < N; ++k) {
    const auto g = EisensteinSym::single(m, Root(k, N));
    if (!(psi(hecke_tp(g, p)) == tp_on_ext(p, psi(g)))) return false;
  }
  return true;
}

// Rank of the psi-images of the primitive symbols.
inline std::size_t psi_primitive_rank(long N, int m) {
  const auto basis = ext_basis(N, m - 1);
  QMat rows;
  for (long k = 0; k < N; ++k) {
    if (!classify(Root(k, N)).is_primitive) continue;
    const ExtClass e = psi(EisensteinSym::single(m, Root(k, N)));
    QVec v;
    for (const auto& b : basis) v.push_back(e.coord(b));
    rows.push_back(v);
  }
  if (basis.empty() || rows.empty()) return 0;
  return rank(rows, basis.size());
}

}  // namespace kzb
