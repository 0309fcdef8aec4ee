#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coeff.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "rational.hpp"
#include "roots.hpp"
#include "sym.hpp"

namespace kzb {

// Commutative polynomial in X, Y: (deg_X, deg_Y) -> coefficient.
template <class C>
class Poly2 {
 public:
  using Exp = std::pair<int, int>;

  const std::map<Exp, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  C coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Coeff<C>::zero() : it->second;
  }
  int max_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
    return d;
  }

  void add(int i, int j, const C& c, int max_deg) {
    if (i + j > max_deg || Coeff<C>::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(Exp{i, j}, c);
    if (!inserted) {
      it->second += c;
      if (Coeff<C>::is_zero(it->second)) terms_.erase(it);
    }
  }
  void add(const Poly2& o, int max_deg) {
    for (const auto& [e, c] : o.terms_) add(e.first, e.second, c, max_deg);
  }
  void sub(const Poly2& o, int max_deg) {
    for (const auto& [e, c] : o.terms_) add(e.first, e.second, -c, max_deg);
  }
  Poly2 scaled(const C& s) const {
    Poly2 r;
    for (const auto& [e, c] : terms_) r.add(e.first, e.second, c * s, 1 << 20);
    return r;
  }
  Poly2 scaled_q(const Q& s) const {
    Poly2 r;
    for (const auto& [e, c] : terms_) {
      C v = c;
      v *= s;
      r.add(e.first, e.second, v, 1 << 20);
    }
    return r;
  }
  // (a X + b Y) * this
  Poly2 times_linear(const C& a, const C& b, int max_deg) const {
    Poly2 r;
    for (const auto& [e, c] : terms_) {
      if (!Coeff<C>::is_zero(a)) r.add(e.first + 1, e.second, a * c, max_deg);
      if (!Coeff<C>::is_zero(b)) r.add(e.first, e.second + 1, b * c, max_deg);
    }
    return r;
  }

  friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    // Highest total degree first, then by descending power of X.
    std::vector<std::pair<Exp, const C*>> items;
    for (const auto& [e, c] : terms_) items.emplace_back(e, &c);
    std::sort(items.begin(), items.end(), [](const auto& u, const auto& v) {
      const int du = u.first.first + u.first.second, dv = v.first.first + v.first.second;
      if (du != dv) return du > dv;
      return u.first.first > v.first.first;
    });
    for (const auto& [e, cp] : items) {
      std::string mono;
      if (e.first > 0) mono += e.first == 1 ? "X" : "X^" + std::to_string(e.first);
      if (e.second > 0) {
        if (!mono.empty()) mono += "*";
        mono += e.second == 1 ? "Y" : "Y^" + std::to_string(e.second);
      }
      std::string cs = Coeff<C>::str(*cp);
      bool compound = cs.find(' ') != std::string::npos;
      if (compound) cs = "(" + cs + ")";
      std::string term;
      if (mono.empty()) {
        term = cs;
      } else if (cs == "1") {
        term = mono;
      } else if (cs == "-1") {
        term = "-" + mono;
      } else {
        term = cs + "*" + mono;
      }
      if (!first) out += (term[0] == '-') ? " - " + term.substr(1) : " + " + term;
      else out += term;
      first = false;
    }
    return out;
  }

 private:
  std::map<Exp, C> terms_;
};

// Element of the KZB Lie algebra modulo D^2: a X + b Y + sum_k f_k(X, Y) t_k,
// where the column monomial X^i Y^j t_k stands for ad_X^i ad_Y^j t_k (W = i+j+2).
template <class C>
class PolyQuot {
 public:
  PolyQuot() = default;
  PolyQuot(long N, int cutoff) : N_(N), cutoff_(cutoff), a_(Coeff<C>::zero()), b_(Coeff<C>::zero()), cols_(N) {
    if (N < 1) throw DomainError("N must be >= 1");
    if (cutoff < 1) throw DomainError("cutoff must be >= 1");
  }

  static PolyQuot X(long N, int cutoff) {
    PolyQuot p(N, cutoff);
    p.a_ = Coeff<C>::from_q(Q(1));
    return p;
  }
  static PolyQuot Y(long N, int cutoff) {
    PolyQuot p(N, cutoff);
    p.b_ = Coeff<C>::from_q(Q(1));
    return p;
  }
  // X^i Y^j t_k
  static PolyQuot column(long N, int cutoff, long k, int i = 0, int j = 0, const C& c = Coeff<C>::from_q(Q(1))) {
    PolyQuot p(N, cutoff);
    p.add_column(k, i, j, c);
    return p;
  }

  long level() const { return N_; }
  int cutoff() const { return cutoff_; }
  int col_degree() const { return cutoff_ - 2; }
  const C& a() const { return a_; }
  const C& b() const { return b_; }
  const std::vector<Poly2<C>>& columns() const { return cols_; }
  const Poly2<C>& column(long k) const { return cols_.at(mod_l(k, N_)); }

  void set_a(const C& c) { a_ = c; }
  void set_b(const C& c) { b_ = c; }
  void add_column(long k, int i, int j, const C& c) { cols_.at(mod_l(k, N_)).add(i, j, c, col_degree()); }
  void add_column(long k, const Poly2<C>& f) { cols_.at(mod_l(k, N_)).add(f, col_degree()); }

  bool is_zero() const {
    if (!Coeff<C>::is_zero(a_) || !Coeff<C>::is_zero(b_)) return false;
    for (const auto& f : cols_)
      if (!f.is_zero()) return false;
    return true;
  }
  bool columns_only() const { return Coeff<C>::is_zero(a_) && Coeff<C>::is_zero(b_); }

  PolyQuot& operator+=(const PolyQuot& o) {
    check_(o);
    a_ += o.a_;
    b_ += o.b_;
    for (long k = 0; k < N_; ++k) cols_[k].add(o.cols_[k], col_degree());
    return *this;
  }
  PolyQuot& operator-=(const PolyQuot& o) {
    check_(o);
    a_ -= o.a_;
    b_ -= o.b_;
    for (long k = 0; k < N_; ++k) cols_[k].sub(o.cols_[k], col_degree());
    return *this;
  }
  PolyQuot scaled(const C& s) const {
    PolyQuot r(N_, cutoff_);
    r.a_ = a_ * s;
    r.b_ = b_ * s;
    for (long k = 0; k < N_; ++k) r.cols_[k] = cols_[k].scaled(s);
    return r;
  }
  PolyQuot scaled_q(const Q& s) const {
    PolyQuot r(N_, cutoff_);
    r.a_ = a_;
    r.a_ *= s;
    r.b_ = b_;
    r.b_ *= s;
    for (long k = 0; k < N_; ++k) r.cols_[k] = cols_[k].scaled_q(s);
    return r;
  }
  friend PolyQuot operator+(PolyQuot x, const PolyQuot& y) { return x += y; }
  friend PolyQuot operator-(PolyQuot x, const PolyQuot& y) { return x -= y; }
  friend bool operator==(const PolyQuot& x, const PolyQuot& y) {
    return x.N_ == y.N_ && x.cutoff_ == y.cutoff_ && x.a_ == y.a_ && x.b_ == y.b_ && x.cols_ == y.cols_;
  }

  // [(a,b,f), (a',b',f')] = (0, 0, g), g_k = (ab' - a'b) + (aX+bY) f'_k - (a'X+b'Y) f_k.
  friend PolyQuot bracket(const PolyQuot& u, const PolyQuot& v) {
    u.check_(v);
    PolyQuot r(u.N_, u.cutoff_);
    if (u.cutoff_ < 2) return r;
    const C cst = u.a_ * v.b_ - v.a_ * u.b_;
    const int d = u.col_degree();
    for (long k = 0; k < u.N_; ++k) {
      r.cols_[k].add(0, 0, cst, d);
      r.cols_[k].add(v.cols_[k].times_linear(u.a_, u.b_, d), d);
      r.cols_[k].sub(u.cols_[k].times_linear(v.a_, v.b_, d), d);
    }
    return r;
  }

  // Same element with columns truncated to a smaller (or padded to a larger) cutoff.
  PolyQuot with_cutoff(int cutoff) const {
    PolyQuot r(N_, cutoff);
    r.a_ = a_;
    r.b_ = b_;
    for (long k = 0; k < N_; ++k) r.cols_[k].add(cols_[k], r.col_degree());
    return r;
  }

  // Flat coordinate vector: a, b, then each column's monomials in a fixed order.
  std::vector<C> coordinates() const {
    std::vector<C> v{a_, b_};
    for (long k = 0; k < N_; ++k)
      for (int d = 0; d <= col_degree(); ++d)
        for (int i = d; i >= 0; --i) v.push_back(cols_[k].coeff(i, d - i));
    return v;
  }

  void check_(const PolyQuot& o) const {
    if (N_ != o.N_ || cutoff_ != o.cutoff_) throw MismatchError("PolyQuot level or cutoff mismatch");
  }

 private:
  long N_ = 1;
  int cutoff_ = 2;
  C a_{}, b_{};
  std::vector<Poly2<C>> cols_;
};

// KZ Lie algebra modulo D^2: a e0 + sum_{n,k} c_{n,k} e0^n . e_k, where
// e0^n . e_k = ad_{e0}^n e_k has length n + 1 <= cutoff.
template <class C>
class KzPolyQuot {
 public:
  KzPolyQuot() = default;
  KzPolyQuot(long N, int cutoff)
      : N_(N), cutoff_(cutoff), a_(Coeff<C>::zero()), cols_(N, std::vector<C>(std::max(cutoff, 0), Coeff<C>::zero())) {
    if (N < 1) throw DomainError("N must be >= 1");
    if (cutoff < 1) throw DomainError("cutoff must be >= 1");
  }

  static KzPolyQuot e0(long N, int cutoff) {
    KzPolyQuot p(N, cutoff);
    p.a_ = Coeff<C>::from_q(Q(1));
    return p;
  }
  // e0^n . e_{zeta^k}
  static KzPolyQuot column(long N, int cutoff, long k, int n, const C& c = Coeff<C>::from_q(Q(1))) {
    KzPolyQuot p(N, cutoff);
    p.add(k, n, c);
    return p;
  }

  long level() const { return N_; }
  int cutoff() const { return cutoff_; }
  const C& a() const { return a_; }
  void set_a(const C& c) { a_ = c; }
  const C& coeff(long k, int n) const { return cols_.at(mod_l(k, N_)).at(n); }
  void add(long k, int n, const C& c) {
    if (n + 1 > cutoff_) return;
    cols_.at(mod_l(k, N_)).at(n) += c;
  }

  bool is_zero() const {
    if (!Coeff<C>::is_zero(a_)) return false;
    for (const auto& col : cols_)
      for (const auto& c : col)
        if (!Coeff<C>::is_zero(c)) return false;
    return true;
  }

  KzPolyQuot& operator+=(const KzPolyQuot& o) {
    check_(o);
    a_ += o.a_;
    for (long k = 0; k < N_; ++k)
      for (int n = 0; n < cutoff_; ++n) cols_[k][n] += o.cols_[k][n];
    return *this;
  }
  KzPolyQuot& operator-=(const KzPolyQuot& o) {
    check_(o);
    a_ -= o.a_;
    for (long k = 0; k < N_; ++k)
      for (int n = 0; n < cutoff_; ++n) cols_[k][n] -= o.cols_[k][n];
    return *this;
  }
  KzPolyQuot scaled(const C& s) const {
    KzPolyQuot r(*this);
    r.a_ = a_ * s;
    for (auto& col : r.cols_)
      for (auto& c : col) c = c * s;
    return r;
  }
  friend KzPolyQuot operator+(KzPolyQuot x, const KzPolyQuot& y) { return x += y; }
  friend KzPolyQuot operator-(KzPolyQuot x, const KzPolyQuot& y) { return x -= y; }

  friend KzPolyQuot bracket(const KzPolyQuot& u, const KzPolyQuot& v) {
    u.check_(v);
    KzPolyQuot r(u.N_, u.cutoff_);
    for (long k = 0; k < u.N_; ++k)
      for (int n = 0; n + 1 < u.cutoff_; ++n) r.cols_[k][n + 1] = u.a_ * v.cols_[k][n] - v.a_ * u.cols_[k][n];
    return r;
  }

  void check_(const KzPolyQuot& o) const {
    if (N_ != o.N_ || cutoff_ != o.cutoff_) throw MismatchError("KzPolyQuot level or cutoff mismatch");
  }

 private:
  long N_ = 1;
  int cutoff_ = 1;
  C a_{};
  std::vector<std::vector<C>> cols_;
};

// ---------------------------------------------------------------------------
// Hain map on the quotients: e0 -> Y + sum_{n>=1} B_n/n! X^{n-1} (all columns),
// e0^n . e_k -> Y^n t_k. Output cutoff is in W.

// Image of s * e0.
template <class C>
PolyQuot<C> hain_e0_mod_d2(long N, int cutoff, const C& s) {
  PolyQuot<C> p(N, cutoff);
  p.set_b(s);
  const auto bern = bernoulli_series(std::max(cutoff, 1));
  for (long k = 0; k < N; ++k)
    for (int n = 1; n - 1 <= cutoff - 2; ++n) {
      C v = s;
      v *= bern[n];
      p.add_column(k, n - 1, 0, v);
    }
  return p;
}

template <class C>
PolyQuot<C> hain_mod_d2(const KzPolyQuot<C>& u, int cutoff_w) {
  const long N = u.level();
  PolyQuot<C> out(N, cutoff_w);
  if (!Coeff<C>::is_zero(u.a())) out += hain_e0_mod_d2<C>(N, cutoff_w, u.a());
  for (long k = 0; k < N; ++k)
    for (int n = 0; n < u.cutoff(); ++n)
      if (!Coeff<C>::is_zero(u.coeff(k, n))) out.add_column(k, 0, n, u.coeff(k, n));
  return out;
}

// ---------------------------------------------------------------------------
// Inner derivations ad(u), u column-only.

template <class C>
struct InnerDer {
  PolyQuot<C> u;

  PolyQuot<C> apply(const PolyQuot<C>& v) const { return bracket(u, v); }
  bool is_zero() const { return u.is_zero(); }
};

// ad(Y^{m-1}(t_r + (-1)^{m+1} t_{conj r})).
template <class C = Q>
InnerDer<C> eps_op(int m, const Root& r, int cutoff = 0) {
  if (m < 2) throw DomainError("eps_op needs m >= 2");
  if (cutoff == 0) cutoff = m + 1;
  if (cutoff < m + 1) throw DomainError("cutoff too small for eps_op");
  PolyQuot<C> u(r.N, cutoff);
  u.add_column(r.k, 0, m - 1, Coeff<C>::from_q(Q(1)));
  u.add_column(r.conj().k, 0, m - 1, Coeff<C>::from_q(Q((m + 1) % 2 == 0 ? 1 : -1)));
  return {u};
}

// exp(L Y d/dX): X -> X + L Y on the linear part and f(X, Y) -> f(X + L Y, Y) on columns.
inline PolyQuot<Sym> monodromy_hq(const PolyQuot<Sym>& v) {
  const Sym L = Sym::L();
  PolyQuot<Sym> out(v.level(), v.cutoff());
  out.set_a(v.a());
  out.set_b(v.b() + v.a() * L);
  for (long k = 0; k < v.level(); ++k) {
    for (const auto& [e, c] : v.column(k).terms()) {
      const auto [i, j] = e;
      // (X + L Y)^i Y^j = sum_s binom(i,s) L^s X^{i-s} Y^{j+s}
      Sym Ls(1);
      for (int s = 0; s <= i; ++s) {
        out.add_column(k, i - s, j + s, c * Ls * Q(binomial(i, s)));
        Ls *= L;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Splitting of V_{m,r}: X -> X - lam X Y^{m-1} t_r, Y -> Y - lam Y^m t_r.

struct VSplit {
  int m;
  Root r;
  PolyQuot<Sym> image_X, image_Y;   // single splitting of V_{m,r}
  InnerDer<Sym> derivation;         // the paired splitting is 1 + derivation
};

inline PolyQuot<Sym> apply_single_split(const PolyQuot<Sym>& v, int m, const Root& r, const Sym& lam) {
  PolyQuot<Sym> out = v;
  // (aX + bY) Y^{m-1} t_r
  out.add_column(r.k, 1, m - 1, -(lam * v.a()));
  out.add_column(r.k, 0, m, -(lam * v.b()));
  return out;
}

inline VSplit vsplit_derivation(int m, const Root& r, int cutoff = 0) {
  if (m < 2) throw DomainError("vsplit needs m >= 2");
  if (cutoff == 0) cutoff = m + 2;
  const long N = r.N;
  const Sym lam = Sym::lambda(m, r.k, N);
  VSplit out{m, r, {}, {}, {}};
  out.image_X = apply_single_split(PolyQuot<Sym>::X(N, cutoff), m, r, lam);
  out.image_Y = apply_single_split(PolyQuot<Sym>::Y(N, cutoff), m, r, lam);

  auto der = eps_op<Sym>(m, r, cutoff);
  if (r.self_conjugate()) {
    out.derivation.u = der.u.scaled(lam * Q(1, 2));  // zero when m is even
  } else {
    out.derivation.u = der.u.scaled(lam);
  }

  // The paired splitting (r and conj r, with lam_{m,conj r} = (-1)^{m+1} lam_{m,r}
  // on the diagonal) must agree with 1 + derivation on X and Y.
  if (!(r.self_conjugate() && m % 2 == 0)) {
    const Sym lam_bar = r.self_conjugate() ? Sym() : lam * Q(m % 2 == 1 ? 1 : -1);
    for (const auto& gen : {PolyQuot<Sym>::X(N, cutoff), PolyQuot<Sym>::Y(N, cutoff)}) {
      PolyQuot<Sym> paired = apply_single_split(gen, m, r, lam);
      if (!r.self_conjugate()) {
        paired = apply_single_split(paired, m, r.conj(), lam_bar);
      }
      PolyQuot<Sym> expect = gen + out.derivation.apply(gen);
      if (!(paired == expect)) throw ContractViolation("paired splitting equals 1 + lambda*eps_op");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rational Betti basis of the cyclotomic polylog quotient at v1 and its Hain images.

struct BettiVector {
  std::string label;
  int weight;
  KzPolyQuot<Sym> kz;
  PolyQuot<Sym> kzb;
};

inline std::vector<BettiVector> betti_basis_cyc(long N, int m_max) {
  if (m_max < 2) throw DomainError("m_max must be >= 2");
  const int kz_cut = m_max + 1;
  const int w_cut = m_max + 2;
  const Sym L = Sym::L();
  std::vector<BettiVector> out;

  KzPolyQuot<Sym> v = KzPolyQuot<Sym>::e0(N, kz_cut).scaled(L);
  for (int m = 2; m <= m_max; ++m)
    for (long k = 0; k < N; ++k) v.add(k, m, -(L * Sym::lambda(m, k, N)));
  out.push_back({"e0", -2, v, hain_mod_d2(v, w_cut)});

  for (int m = 0; m <= m_max; ++m) {
    Sym Lm(1);
    for (int s = 0; s <= m; ++s) Lm *= L;
    for (long k = 0; k < N; ++k) {
      auto c = KzPolyQuot<Sym>::column(N, kz_cut, k, m, Lm);
      out.push_back({"e0^" + std::to_string(m) + ".z" + std::to_string(k), -2 * m - 2, c, hain_mod_d2(c, w_cut)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

template <class C>
std::size_t depth1_rank(const std::vector<InnerDer<C>>& ders);

template <>
inline std::size_t depth1_rank<Q>(const std::vector<InnerDer<Q>>& ders) {
  if (ders.empty()) return 0;
  QMat rows;
  for (const auto& d : ders) {
    if (!d.u.columns_only()) throw DomainError("inner derivation must be column-only");
    rows.push_back(d.u.coordinates());
  }
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw MismatchError("derivations with different (N, cutoff)");
  return rank(rows, rows.front().size());
}

}  // namespace kzb
