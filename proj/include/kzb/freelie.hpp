#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "alphabet.hpp"
#include "coeff.hpp"
#include "errors.hpp"
#include "polyquot.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace kzb {

// Element of the truncated free Lie algebra in Lyndon coordinates.
template <class C = Q>
class LieElt {
 public:
  using Coef = C;

  LieElt() = default;
  LieElt(AlphabetPtr alpha, int cutoff, long prec = 0) : alpha_(std::move(alpha)), cutoff_(cutoff), prec_(prec) {
    if (!alpha_) throw DomainError("null alphabet");
    if (cutoff_ <= 0) throw DomainError("cutoff must be >= 1");
  }

  static LieElt generator(AlphabetPtr a, int cutoff, Letter g, long prec = 0) {
    LieElt u(std::move(a), cutoff, prec);
    if (g >= u.alpha_->size()) throw DomainError("unknown generator");
    u.add(Word(1, static_cast<char>(g)), Coeff<C>::from_q(Q(1), prec));
    return u;
  }

  const AlphabetPtr& alphabet() const { return alpha_; }
  int cutoff() const { return cutoff_; }
  long prec() const { return prec_; }
  const std::map<Word, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  C coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Coeff<C>::zero(prec_) : it->second;
  }

  void add(const Word& w, const C& c) {
    if (Coeff<C>::is_zero(c) || alpha_->trunc_weight(w) > cutoff_) return;
    if (!is_lyndon(w)) throw NotLieError("not a Lyndon word: " + alpha_->spell(w));
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (Coeff<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

  LieElt& operator+=(const LieElt& o) {
    check_(o);
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  LieElt& operator-=(const LieElt& o) {
    check_(o);
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  LieElt& operator*=(const Q& q) {
    if (q == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= q;
    return *this;
  }
  LieElt scaled(const C& s) const {
    LieElt r(alpha_, cutoff_, prec_);
    for (const auto& [w, c] : terms_) r.add(w, c * s);
    return r;
  }
  LieElt operator-() const {
    LieElt r(*this);
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
  }
  friend LieElt operator+(LieElt a, const LieElt& b) { return a += b; }
  friend LieElt operator-(LieElt a, const LieElt& b) { return a -= b; }
  friend LieElt operator*(LieElt a, const Q& q) { return a *= q; }
  friend LieElt operator*(const Q& q, LieElt a) { return a *= q; }
  friend bool operator==(const LieElt& a, const LieElt& b) {
    return same_alphabet(a.alpha_, b.alpha_) && a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
  }

  LieElt with_cutoff(int cutoff) const {
    LieElt r(alpha_, cutoff, prec_);
    for (const auto& [w, c] : terms_) r.add(w, c);
    return r;
  }

  void check_(const LieElt& o) const {
    if (!same_alphabet(alpha_, o.alpha_)) throw MismatchError("Lie elements over different alphabets");
    if (cutoff_ != o.cutoff_) throw MismatchError("Lie elements with different cutoffs");
  }

 private:
  AlphabetPtr alpha_;
  int cutoff_ = 1;
  long prec_ = 0;
  std::map<Word, C> terms_;
};

// All Lyndon words of truncation weight <= cutoff, in lexicographic order.
inline std::vector<Word> lyndon_basis(const Alphabet& a, int cutoff) {
  if (cutoff <= 0) throw DomainError("cutoff must be >= 1");
  std::vector<Word> out;
  Word w;
  // Depth-first over prenecklaces; prefixes of Lyndon words are prenecklaces.
  auto rec = [&](auto&& self, int weight) -> void {
    for (std::size_t g = 0; g < a.size(); ++g) {
      const int wg = weight + a.gens[g].trunc;
      if (wg > cutoff) continue;
      w.push_back(static_cast<char>(g));
      const std::size_t p = lyndon_period(w);
      if (p != 0) {
        if (p == w.size()) out.push_back(w);
        self(self, wg);
      }
      w.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Word> lyndon_basis(const AlphabetPtr& a, int cutoff) { return lyndon_basis(*a, cutoff); }

// Word expansion of the standard bracketing P(w) of a Lyndon word w.
inline const std::map<Word, Q>& bracketing(const Alphabet& a, const Word& w) {
  static std::mutex mu;
  static std::map<std::pair<std::string, Word>, std::map<Word, Q>> cache;
  std::string key = a.name();
  for (const auto& g : a.gens) key += "|" + g.symbol;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({key, w});
    if (it != cache.end()) return it->second;
  }
  if (!is_lyndon(w)) throw NotLieError("bracketing of a non-Lyndon word");
  std::map<Word, Q> out;
  if (w.size() == 1) {
    out[w] = 1;
  } else {
    const auto [u, v] = standard_factorization(w);
    const auto pu = bracketing(a, u);
    const auto pv = bracketing(a, v);
    for (const auto& [x, cx] : pu)
      for (const auto& [y, cy] : pv) {
        out[x + y] += cx * cy;
        out[y + x] -= cx * cy;
      }
    for (auto it = out.begin(); it != out.end();) it = (it->second == 0) ? out.erase(it) : std::next(it);
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(key, w), std::move(out)).first->second;
}

template <class C>
NCS<C> to_series(const LieElt<C>& u) {
  NCS<C> s(u.alphabet(), u.cutoff(), u.prec());
  for (const auto& [w, c] : u.terms())
    for (const auto& [x, q] : bracketing(*u.alphabet(), w)) {
      C v = c;
      v *= q;
      s.add(x, v);
    }
  return s;
}

// Lyndon coordinates of a Lie polynomial given by its word expansion.
// P(w) = w + (lexicographically larger words), so the smallest surviving word
// is always the next Lyndon coordinate; a non-Lyndon smallest word means the
// input was not Lie.
template <class C>
LieElt<C> to_lie(const NCS<C>& s) {
  LieElt<C> out(s.alphabet(), std::max(s.cutoff(), 1), s.prec());
  std::map<Word, C> rem = s.terms();
  while (!rem.empty()) {
    auto it = rem.begin();
    if (Coeff<C>::near_zero(it->second)) {
      rem.erase(it);
      continue;
    }
    const Word w = it->first;
    const C c = it->second;
    if (w.empty()) throw NotLieError("nonzero constant term");
    if (!is_lyndon(w)) throw NotLieError("not a Lie element (word " + s.alphabet()->spell(w) + ")");
    out.add(w, c);
    for (const auto& [x, q] : bracketing(*s.alphabet(), w)) {
      C v = c;
      v *= q;
      auto [jt, inserted] = rem.emplace(x, -v);
      if (!inserted) {
        jt->second -= v;
        if (Coeff<C>::is_zero(jt->second)) rem.erase(jt);
      }
    }
  }
  return out;
}

template <class C>
LieElt<C> bracket(const LieElt<C>& u, const LieElt<C>& v) {
  u.check_(v);
  const NCS<C> su = to_series(u), sv = to_series(v);
  return to_lie(mul(su, sv) - mul(sv, su));
}

// ---------------------------------------------------------------------------
// Projection of a KZB Lie element to the mod-D^2 model.

inline PolyQuot<Q> project_generator(const Alphabet& a, Letter g, int cutoff) {
  if (a.kind != AlphabetKind::KZB) throw MismatchError("project_mod_D2 needs the KZB alphabet");
  const long N = a.level;
  if (g == 0) return PolyQuot<Q>::X(N, cutoff);
  if (g == 1) return PolyQuot<Q>::Y(N, cutoff);
  return PolyQuot<Q>::column(N, cutoff, static_cast<long>(g) - 1);
}

inline PolyQuot<Q> project_lyndon(const Alphabet& a, const Word& w, int cutoff) {
  if (w.size() == 1) return project_generator(a, static_cast<Letter>(w[0]), cutoff);
  const auto [u, v] = standard_factorization(w);
  return bracket(project_lyndon(a, u, cutoff), project_lyndon(a, v, cutoff));
}

template <class C>
PolyQuot<C> project_mod_D2(const LieElt<C>& u) {
  const Alphabet& a = *u.alphabet();
  PolyQuot<C> out(a.level, u.cutoff());
  for (const auto& [w, c] : u.terms()) {
    const PolyQuot<Q> img = project_lyndon(a, w, u.cutoff());
    PolyQuot<C> s(a.level, u.cutoff());
    C va = c, vb = c;
    va *= img.a();
    vb *= img.b();
    s.set_a(va);
    s.set_b(vb);
    for (long k = 0; k < a.level; ++k)
      for (const auto& [e, q] : img.column(k).terms()) {
        C v = c;
        v *= q;
        s.add_column(k, e.first, e.second, v);
      }
    out += s;
  }
  return out;
}

// KZ Lie element modulo D^2: the only Lyndon words of depth <= 1 are e0 and e0^n e_k.
template <class C>
KzPolyQuot<C> project_kz_mod_D2(const LieElt<C>& u) {
  const Alphabet& a = *u.alphabet();
  if (a.kind != AlphabetKind::KZ) throw MismatchError("project_kz_mod_D2 needs the KZ alphabet");
  KzPolyQuot<C> out(a.level, u.cutoff());
  for (const auto& [w, c] : u.terms()) {
    if (w.size() == 1 && w[0] == 0) {
      out.set_a(out.a() + c);
      continue;
    }
    std::size_t n = 0;
    while (n < w.size() && w[n] == 0) ++n;
    if (n + 1 == w.size()) out.add(static_cast<long>(static_cast<unsigned char>(w[n])) - 1, static_cast<int>(n), c);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct Degrees {
  int W = 0;
  int M = 0;
  int F = 0;
  int depth = 0;  // for KZB capped at 2, meaning "in D^2"
};

template <class C>
Degrees degrees(const LieElt<C>& u) {
  if (u.is_zero()) throw DomainError("degrees of the zero element");
  const Alphabet& a = *u.alphabet();
  Degrees d{1 << 20, 1 << 20, -(1 << 20), 1 << 20};
  for (const auto& [w, c] : u.terms()) {
    int W = 0, M = 0, F = 0, t = 0;
    for (unsigned char g : w) {
      W += a.gens[g].W;
      M += a.gens[g].M;
      F += a.gens[g].F;
      t += a.gens[g].t;
    }
    d.W = std::min(d.W, W);
    d.M = std::min(d.M, M);
    d.F = std::max(d.F, F);
    d.depth = std::min(d.depth, t);
  }
  if (a.kind == AlphabetKind::KZB) {
    const PolyQuot<C> p = project_mod_D2(u);
    if (!Coeff<C>::is_zero(p.a()) || !Coeff<C>::is_zero(p.b())) d.depth = 0;
    else if (!p.is_zero()) d.depth = 1;
    else d.depth = 2;
  }
  return d;
}

}  // namespace kzb
