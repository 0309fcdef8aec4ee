#pragma once

#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "extdecomp.hpp"
#include "hain.hpp"
#include "hecke.hpp"
#include "numeric/dch.hpp"
#include "numeric/iterint.hpp"
#include "numeric/linearized.hpp"
#include "numeric/polylog.hpp"
#include "numeric/star.hpp"

namespace kzb {

struct Check {
  std::string name;
  bool pass = false;
  std::string residual;   // decimal string, or "0" for exact checks
  std::string tolerance;  // "exact" or decimal string
  std::string detail;
};

struct SuiteOptions {
  int cutoff = 8;
  mpfr_prec_t prec = 128;
  int instances = 100;    // shuffle suite
  unsigned seed = 20240601;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

inline Check exact(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, ok ? "0" : "nonzero", "exact", std::move(detail)};
}

inline Check numeric(std::string name, const Real& r, double tol, std::string detail = {}) {
  const bool ok = r.is_finite() && r.to_double() < tol;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0e", tol);
  return {std::move(name), ok, r.str(3), buf, std::move(detail)};
}

inline std::string nm(long N, int m) { return "N=" + std::to_string(N) + ",m=" + std::to_string(m); }

// u ш v with multiplicities.
inline void shuffle_into(const Word& u, const Word& v, Word& pre, std::map<Word, long>& out) {
  if (u.empty() || v.empty()) {
    ++out[pre + u + v];
    return;
  }
  pre.push_back(u[0]);
  shuffle_into(u.substr(1), v, pre, out);
  pre.back() = v[0];
  shuffle_into(u, v.substr(1), pre, out);
  pre.pop_back();
}

inline std::map<Word, long> shuffle_product(const Word& u, const Word& v) {
  std::map<Word, long> out;
  Word pre;
  shuffle_into(u, v, pre, out);
  return out;
}

// ad(e0)^n e_zeta in the KZ alphabet.
inline LieElt<Q> kz_column(long N, int n, long k) {
  auto a = Alphabet::kz(N);
  const auto e0 = LieElt<Q>::generator(a, n + 1, a->e0());
  auto u = LieElt<Q>::generator(a, n + 1, a->ez(k));
  for (int i = 0; i < n; ++i) u = bracket(e0, u);
  return u;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact suites

inline SuiteReport suite_cylinder(const SuiteOptions& o) {
  SuiteReport r{"cylinder", {}};
  r.checks.push_back(detail::exact("Ad(e^X)Psi(e0) + Psi(e_inf) = 0, cutoff " + std::to_string(o.cutoff), cylinder_check(o.cutoff)));
  r.checks.push_back(detail::exact("perturbed Psi(e0) is detected", !cylinder_check(o.cutoff, true)));
  return r;
}

inline SuiteReport suite_hain(const SuiteOptions& o) {
  SuiteReport r{"hain", {}};
  for (long N = 1; N <= 6; ++N)
    r.checks.push_back(detail::exact("Psi(e0) + Psi(e_inf) + sum Psi(e_zeta) = 0, N=" + std::to_string(N), hain_relation_residual(N, o.cutoff).is_zero()));
  return r;
}

// Psi(e0^n . e_zeta) = Y^n t_zeta mod D^2, by the full substitution and by the quotient model.
inline SuiteReport suite_hain_columns(const SuiteOptions& o, int n_max = 5, long N_max = 6) {
  (void)o;
  SuiteReport r{"hain-columns", {}};
  for (long N = 1; N <= N_max; ++N) {
    bool slow = true, fused = true;
    for (int n = 0; n <= n_max; ++n)
      for (long k = 0; k < N; ++k) {
        const auto u = detail::kz_column(N, n, k);
        const int w = n + 4;
        const auto expect = PolyQuot<Q>::column(N, w, k, 0, n);
        slow = slow && project_mod_D2(hain_apply(u, w)) == expect;
        fused = fused && hain_mod_d2(u, w) == expect;
      }
    r.checks.push_back(detail::exact("substitution path, N=" + std::to_string(N), slow));
    r.checks.push_back(detail::exact("quotient path, N=" + std::to_string(N), fused));
  }
  return r;
}

inline SuiteReport suite_dims(const SuiteOptions&) {
  SuiteReport r{"dims", {}};
  std::string bad;
  for (long N = 1; N <= 30; ++N)
    for (int m = 2; m <= 6; ++m)
      if (ext_dim(N, m) != ext_dim_formula(N, m)) bad += detail::nm(N, m) + " ";
  r.checks.push_back(detail::exact("ext_dim = closed formula, N <= 30, 2 <= m <= 6", bad.empty(), bad));
  return r;
}

inline SuiteReport suite_heads(const SuiteOptions&) {
  SuiteReport r{"heads", {}};
  auto agrees = [](long N, int m, const Root& z) {
    const Head h = head(N, m, z);  // throws on a closed-form mismatch
    std::map<Root, Q> closed;
    if (!head_closed_form(N, m, z, closed)) return false;
    return derivation_combination(N, m, closed) == h.u;
  };
  for (auto [N, m] : std::vector<std::pair<long, int>>{{5, 3}, {7, 4}, {8, 3}, {9, 2}}) {
    bool ok = true;
    for (const auto& z : ext_basis(N, m)) ok = ok && agrees(N, m, z);
    r.checks.push_back(detail::exact("prime-power closed form, " + detail::nm(N, m), ok));
  }
  r.checks.push_back(detail::exact("c_1 = -25/24 at N=5,m=3", head(5, 3, Root(1, 5)).coeff(Root(0, 5)) == Q(-25, 24)));
  bool n1 = true, n2 = true;
  for (int m = 3; m <= 9; m += 2) {
    n1 = n1 && head(1, m, Root(0, 1)).coeff(Root(0, 1)) == Q(1, 2);
    const Head h = head(2, m, Root(1, 2));
    Q c = Q(1) / (2 * (qpow(Q(2), 1 - m) - 1));
    c.canonicalize();
    n2 = n2 && h.coeff(Root(1, 2)) == Q(1, 2) && h.coeff(Root(0, 2)) == c;
  }
  r.checks.push_back(detail::exact("N=1 head is 1/2", n1));
  r.checks.push_back(detail::exact("N=2 head is (1/2, 1/(2(2^(1-m)-1)))", n2));
  for (int m : {3, 4}) r.checks.push_back(detail::exact("N=6 closed form, m=" + std::to_string(m), agrees(6, m, Root(1, 6))));
  return r;
}

inline SuiteReport suite_depth1(const SuiteOptions&) {
  SuiteReport r{"depth1", {}};
  std::string bad;
  for (long N = 3; N <= 12; ++N)
    for (int m = 2; m <= 5; ++m)
      if (head_rank(N, m) != static_cast<std::size_t>(euler_phi(N) / 2)) bad += detail::nm(N, m) + " ";
  r.checks.push_back(detail::exact("head matrix rank = phi(N)/2, 3 <= N <= 12, m <= 5", bad.empty(), bad));
  return r;
}

inline SuiteReport suite_psi(const SuiteOptions&) {
  SuiteReport r{"psi", {}};
  for (auto [N, m, p] : std::vector<std::tuple<long, int, long>>{{5, 6, 2}, {5, 6, 3}, {7, 5, 2}, {12, 4, 5}}) {
    const std::string tag = detail::nm(N, m) + ",p=" + std::to_string(p);
    r.checks.push_back(detail::exact("psi T_p = T_p psi, " + tag, psi_commutes(N, m, p)));
    r.checks.push_back(detail::exact("T_p preserves the relations, " + tag, tp_respects_relations(N, m, p)));
  }
  bool shift = true;
  for (long k = 0; k < 5; ++k)
    for (long d : {2L, 4L}) {
      const auto s = EisensteinSym::single(6, Root(k, 5));
      shift = shift && level_shift(hecke_tp(s, 3), d) == hecke_tp(level_shift(s, d), 3);
    }
  r.checks.push_back(detail::exact("[d] T_p = T_p [d] on symbols, N=5,m=6,p=3,d=2,4", shift));
  return r;
}

// ---------------------------------------------------------------------------
// Numeric suites

inline SuiteReport suite_bernoulli(const SuiteOptions& o) {
  SuiteReport r{"bernoulli", {}};
  std::string bad;
  for (long N = 1; N <= 12; ++N)
    for (int m = 2; m <= 6; ++m)
      for (long k = 0; k < N; ++k) {
        try {
          bernoulli_pairing(m, Root(k, N), std::max<mpfr_prec_t>(o.prec, 256));
        } catch (const Error& e) {
          bad += detail::nm(N, m) + ",k=" + std::to_string(k) + " ";
        }
      }
  r.checks.push_back(detail::exact("(Li_m(z) + (-1)^m Li_m(conj z))/(2 pi i)^m = -B_m(k/N)/m!, N <= 12, m <= 6", bad.empty(), bad));
  return r;
}

inline SuiteReport suite_decomposition(const SuiteOptions& o) {
  SuiteReport r{"decomposition", {}};
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(o.prec, 192);
  for (long N = 1; N <= 12; ++N) {
    std::string bad;
    Z worst(1);
    for (int m = 2; m <= 4; ++m)
      for (long j = 0; j < N; ++j) {
        const auto d = decomposition_residual(N, m, j, prec);
        if (!d.rational) bad += "m=" + std::to_string(m) + ",j=" + std::to_string(j) + " ";
        else if (d.rational->get_den() > worst) worst = d.rational->get_den();
      }
    Check c = detail::exact("residual/(2 pi i)^m reconstructs with denominator <= 10^6, N=" + std::to_string(N), bad.empty(),
                            bad.empty() ? "largest denominator " + worst.get_str() : "no reconstruction: " + bad);
    r.checks.push_back(c);
  }
  return r;
}

inline SuiteReport suite_distribution(const SuiteOptions& o) {
  SuiteReport r{"distribution", {}};
  Real worst(o.prec);
  for (long N = 1; N <= 12; ++N)
    for (int m = 1; m <= 5; ++m)
      for (long l : {2L, 3L, 4L}) worst = max(worst, distribution_residual(N, m, l, o.prec));
  const Real tol = pow2(8 - static_cast<long>(o.prec), o.prec);
  r.checks.push_back(detail::numeric("l^(m-1) sum_{w^l=z} Li_m(w) = Li_m(z), l <= 4, N <= 12, m <= 5", worst, tol.to_double()));
  return r;
}

inline SuiteReport suite_mzv(const SuiteOptions& o) {
  SuiteReport r{"mzv", {}};
  const mpfr_prec_t p = o.prec;
  const Real z4 = mzv({4}, p);
  r.checks.push_back(detail::numeric("zeta(4) = 4 zeta(1,3)", abs(z4 - mzv({1, 3}, p) * 4L), 1e-10));
  r.checks.push_back(detail::numeric("zeta(4) = zeta(1,1,2)", abs(z4 - mzv({1, 1, 2}, p)), 1e-10));
  r.checks.push_back(detail::numeric("zeta(4) = 4/3 zeta(2,2)", abs(z4 - mzv({2, 2}, p) * Q(4, 3)), 1e-10));

  // Series versus quadrature of the iterated-integral representation.
  const mpfr_prec_t wp = guard_prec(p);
  struct Case {
    std::vector<int> ns;
    std::vector<BigC> zs;
  };
  const std::vector<Case> cases{
      {{2}, {BigC(0.3, 0.4, wp)}},
      {{2, 1}, {BigC(0.5, 0.0, wp), BigC(0.25, -0.5, wp)}},
      {{1, 2}, {BigC(-0.6, 0.2, wp), BigC(0.7, 0.1, wp)}},
      {{1, 1, 1}, {BigC(0.5, 0.5, wp), BigC(0.8, 0.0, wp), BigC(-0.4, 0.3, wp)}},
  };
  Real worst(p);
  for (const auto& c : cases) {
    const BigC series = multiple_li(c.ns, c.zs, p).value;
    const std::vector<BigC> pl = multiple_li_poles(c.ns, c.zs, wp);
    Poles poles{BigC(wp)};
    Word w;
    for (const auto& a : pl) {
      if (a.is_zero()) {
        w.push_back(0);
        continue;
      }
      poles.push_back(a);
      w.push_back(static_cast<char>(poles.size() - 1));
    }
    PathSpec path;
    path.points = {BigC(wp), BigC(1L, wp)};
    path.start = Tangent{BigC(1L, wp), true};
    BigC quad = iterint(path, poles, w, p);
    if (c.ns.size() % 2 == 1) quad = -quad;
    worst = max(worst, abs(series - quad));
  }
  r.checks.push_back(detail::numeric("multiple polylog series = iterated-integral quadrature", worst, 1e-20));
  return r;
}

// Shuffle, path inversion and path composition on random polylines.
inline SuiteReport suite_shuffle(const SuiteOptions& o) {
  SuiteReport r{"shuffle", {}};
  const mpfr_prec_t p = std::max<mpfr_prec_t>(o.prec, 96);
  const mpfr_prec_t wp = guard_prec(p);
  const Poles poles = kz_poles(2, wp);  // 0, 1, -1
  std::mt19937 rng(o.seed);
  std::uniform_real_distribution<double> ux(-1.5, 2.5), uy(-1.5, 1.5);
  std::uniform_int_distribution<int> ulen(1, 3), ulet(0, 2);

  auto seg_ok = [&](double ax, double ay, double bx, double by) {
    for (double px : {0.0, 1.0, -1.0}) {
      const double dx = bx - ax, dy = by - ay, d2 = dx * dx + dy * dy;
      double t = d2 == 0 ? 0 : ((px - ax) * dx - ay * dy) / d2;
      t = std::min(1.0, std::max(0.0, t));
      const double qx = ax + t * dx - px, qy = ay + t * dy;
      if (qx * qx + qy * qy < 0.09) return false;
    }
    return true;
  };
  auto random_path = [&](double sx, double sy, int segs, double& ex, double& ey) {
    PathSpec path;
    path.points.push_back(BigC(sx, sy, wp));
    double x = sx, y = sy;
    for (int s = 0; s < segs; ++s) {
      double nx, ny;
      do {
        nx = ux(rng);
        ny = uy(rng);
      } while (!seg_ok(x, y, nx, ny));
      path.points.push_back(BigC(nx, ny, wp));
      x = nx;
      y = ny;
    }
    ex = x;
    ey = y;
    return path;
  };
  auto random_word = [&]() {
    Word w;
    for (int i = ulen(rng); i > 0; --i) w.push_back(static_cast<char>(ulet(rng)));
    return w;
  };
  auto start_point = [&](double& x, double& y) {
    do {
      x = ux(rng);
      y = uy(rng);
    } while (!seg_ok(x, y, x, y));
  };

  Real sh(p), inv(p), comp(p);
  for (int it = 0; it < o.instances; ++it) {
    double sx, sy, mx, my, ex, ey;
    start_point(sx, sy);
    const PathSpec a = random_path(sx, sy, 1 + it % 2, mx, my);
    const PathSpec b = random_path(mx, my, 1 + (it / 2) % 2, ex, ey);
    PathSpec ab;
    ab.points = a.points;
    ab.points.insert(ab.points.end(), b.points.begin() + 1, b.points.end());
    const Word u = random_word(), v = random_word();

    std::set<Word> words{u, v};
    const auto prod = detail::shuffle_product(u, v);
    for (const auto& [w, c] : prod) words.insert(w);
    std::set<Word> prefixes;
    for (std::size_t i = 0; i <= u.size(); ++i) {
      prefixes.insert(u.substr(0, i));
      prefixes.insert(u.substr(i));
    }
    prefixes.erase(Word{});
    Word ur(u.rbegin(), u.rend());

    auto Ia = iterint_many(a, poles, words, p);
    auto Iab = iterint_many(ab, poles, {u}, p);
    auto Ib = iterint_many(b, poles, prefixes, p);
    auto Ia_pre = iterint_many(a, poles, prefixes, p);
    auto Irev = iterint_many(a.reversed(), poles, {ur}, p);
    auto val = [&](std::map<Word, BigC>& m, const Word& w) { return w.empty() ? BigC(1L, wp) : m.at(w); };

    BigC s(wp);
    for (const auto& [w, c] : prod) s += Ia.at(w) * Q(c);
    sh = max(sh, abs(Ia.at(u) * Ia.at(v) - s));

    BigC ri = Irev.at(ur);
    if (u.size() % 2 == 1) ri = -ri;
    inv = max(inv, abs(ri - Ia.at(u)));

    BigC cs(wp);
    for (std::size_t i = 0; i <= u.size(); ++i) cs += val(Ia_pre, u.substr(0, i)) * val(Ib, u.substr(i));
    comp = max(comp, abs(cs - Iab.at(u)));
  }
  const std::string n = " (" + std::to_string(o.instances) + " random instances)";
  r.checks.push_back(detail::numeric("shuffle product" + n, sh, 1e-15));
  r.checks.push_back(detail::numeric("path inversion" + n, inv, 1e-15));
  r.checks.push_back(detail::numeric("path composition" + n, comp, 1e-15));
  return r;
}

inline SuiteReport suite_dch(const SuiteOptions& o) {
  SuiteReport r{"dch", {}};
  for (long N = 1; N <= 4; ++N) {
    Real worst(o.prec);
    for (const auto& e : dch_mod_d2(N, 3, o.prec)) worst = max(worst, e.diff);
    r.checks.push_back(detail::numeric("T(dch) mod D^2 = (-1)^m Li_{m+1}(conj z), m <= 3, N=" + std::to_string(N), worst, 1e-10));
  }
  return r;
}

inline SuiteReport suite_star(const SuiteOptions& o) {
  SuiteReport r{"star", {}};
  for (long N : {1L, 2L}) {
    const StarResult s = star_check(N, o.prec, 3);
    r.checks.push_back(detail::numeric("star relation mod D^2, cutoff 3, N=" + std::to_string(N), s.residual_mod_d2, 1e-8,
                                       "full " + s.residual_full.str(3) + ", after Hain map " + s.residual_hain.str(3)));
  }
  return r;
}

inline SuiteReport suite_linearized(const SuiteOptions& o) {
  SuiteReport r{"linearized", {}};
  const auto l = linearized_transport_check(o.prec);
  r.checks.push_back(detail::numeric("regularized = linearized transport, toy connection", l.residual_gauge, 1e-10));
  r.checks.push_back(detail::numeric("commuting nilpotent closed form", l.residual_closed_form, 1e-25));
  return r;
}

inline SuiteReport suite_hecke(const SuiteOptions& o) {
  SuiteReport r{"hecke", {}};
  const mpfr_prec_t p = std::min<mpfr_prec_t>(o.prec, 64);
  const BigC tau = BigC::i(guard_prec(p));
  for (auto [N, m, pp] : std::vector<std::tuple<long, int, long>>{{5, 6, 2}, {5, 6, 3}, {7, 5, 2}}) {
    Real worst(p);
    for (long k = 0; k < N; ++k) worst = max(worst, hecke_identity_residual(m, Root(k, N), pp, tau, 300, p));
    r.checks.push_back(detail::numeric("T_p G = p^(m-1) G + G_(z^p) at tau=i, " + detail::nm(N, m) + ",p=" + std::to_string(pp), worst, 1e-6));
  }
  Real ls(p), sh(p);
  for (long k = 0; k < 5; ++k) {
    ls = max(ls, level_shift_residual(6, Root(k, 5), 2, tau, 300, p));
    sh = max(sh, shift_hecke_residual(6, Root(k, 5), 2, 3, tau, 150, p));
  }
  r.checks.push_back(detail::numeric("[d] numerically, N=5,m=6,d=2", ls, 1e-6));
  r.checks.push_back(detail::numeric("[d] T_p = T_p [d] numerically, N=5,m=6,d=2,p=3", sh, 1e-6));
  return r;
}

// ---------------------------------------------------------------------------

inline const std::vector<std::pair<std::string, std::function<SuiteReport(const SuiteOptions&)>>>& suites() {
  static const std::vector<std::pair<std::string, std::function<SuiteReport(const SuiteOptions&)>>> s{
      {"cylinder", suite_cylinder},
      {"hain", suite_hain},
      {"hain-columns", [](const SuiteOptions& o) { return suite_hain_columns(o); }},
      {"dims", suite_dims},
      {"heads", suite_heads},
      {"depth1", suite_depth1},
      {"psi", suite_psi},
      {"bernoulli", suite_bernoulli},
      {"decomposition", suite_decomposition},
      {"distribution", suite_distribution},
      {"mzv", suite_mzv},
      {"shuffle", suite_shuffle},
      {"dch", suite_dch},
      {"star", suite_star},
      {"linearized", suite_linearized},
      {"hecke", suite_hecke},
  };
  return s;
}

inline SuiteReport run_suite(const std::string& name, const SuiteOptions& o) {
  for (const auto& [n, f] : suites())
    if (n == name) return f(o);
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace kzb
