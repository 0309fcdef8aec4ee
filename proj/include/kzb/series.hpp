#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "alphabet.hpp"
#include "coeff.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace kzb {

// Truncated element of the completed tensor algebra: word -> coefficient,
// every stored word has truncation weight <= cutoff.
template <class C>
class NCS {
 public:
  using Coef = C;
  using Traits = Coeff<C>;

  NCS() = default;
  NCS(AlphabetPtr alpha, int cutoff, long prec = 0) : alpha_(std::move(alpha)), cutoff_(cutoff), prec_(prec) {
    if (!alpha_) throw DomainError("null alphabet");
    if (cutoff_ < 0) throw DomainError("cutoff must be >= 0");
  }

  static NCS unit(AlphabetPtr a, int cutoff, long prec = 0) {
    NCS s(std::move(a), cutoff, prec);
    s.add(Word{}, Traits::from_q(Q(1), prec));
    return s;
  }
  static NCS letter(AlphabetPtr a, int cutoff, Letter g, long prec = 0) {
    NCS s(std::move(a), cutoff, prec);
    if (g >= s.alpha_->size()) throw DomainError("letter out of range");
    s.add(Word(1, static_cast<char>(g)), Traits::from_q(Q(1), prec));
    return s;
  }

  const AlphabetPtr& alphabet() const { return alpha_; }
  int cutoff() const { return cutoff_; }
  long prec() const { return prec_; }
  const std::map<Word, C>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  C coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Traits::zero(prec_) : it->second;
  }
  C constant() const { return coeff(Word{}); }

  void add(const Word& w, const C& c) {
    if (Traits::is_zero(c) || alpha_->trunc_weight(w) > cutoff_) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }
  void set(const Word& w, const C& c) {
    terms_.erase(w);
    add(w, c);
  }

  NCS& operator+=(const NCS& o) {
    check_(o);
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  NCS& operator-=(const NCS& o) {
    check_(o);
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  NCS& operator*=(const Q& q) {
    if (q == 0) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= q;
      it = Traits::is_zero(it->second) ? terms_.erase(it) : std::next(it);
    }
    return *this;
  }
  NCS scaled(const C& c) const {
    NCS r(alpha_, cutoff_, prec_);
    for (const auto& [w, v] : terms_) r.add(w, v * c);
    return r;
  }
  NCS operator-() const {
    NCS r(*this);
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
  }
  friend NCS operator+(NCS a, const NCS& b) { return a += b; }
  friend NCS operator-(NCS a, const NCS& b) { return a -= b; }
  friend NCS operator*(NCS a, const Q& q) { return a *= q; }
  friend NCS operator*(const NCS& a, const NCS& b) { return mul(a, b); }

  friend NCS mul(const NCS& s, const NCS& t) {
    s.check_(t);
    NCS r(s.alpha_, s.cutoff_, std::max(s.prec_, t.prec_));
    std::vector<std::pair<int, const std::pair<const Word, C>*>> tw;
    tw.reserve(t.terms_.size());
    for (const auto& e : t.terms_) tw.emplace_back(t.alpha_->trunc_weight(e.first), &e);
    for (const auto& [u, a] : s.terms_) {
      const int wu = s.alpha_->trunc_weight(u);
      for (const auto& [wv, e] : tw) {
        if (wu + wv > s.cutoff_) continue;
        r.add(u + e->first, a * e->second);
      }
    }
    return r;
  }

  NCS truncated(int cutoff) const {
    NCS r(alpha_, std::min(cutoff, cutoff_), prec_);
    for (const auto& [w, c] : terms_) r.add(w, c);
    return r;
  }

  // Same terms viewed at a different cutoff (extra terms are dropped).
  NCS with_cutoff(int cutoff) const {
    NCS r(alpha_, cutoff, prec_);
    for (const auto& [w, c] : terms_) r.add(w, c);
    return r;
  }

  int min_weight() const {
    int m = -1;
    for (const auto& [w, c] : terms_) {
      const int x = alpha_->trunc_weight(w);
      if (m < 0 || x < m) m = x;
    }
    return m;
  }

  friend bool operator==(const NCS& a, const NCS& b) {
    return same_alphabet(a.alpha_, b.alpha_) && a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
  }

  void check_(const NCS& o) const {
    if (!same_alphabet(alpha_, o.alpha_)) throw MismatchError("series over different alphabets");
    if (cutoff_ != o.cutoff_) throw MismatchError("series with different cutoffs");
  }

 private:
  AlphabetPtr alpha_;
  int cutoff_ = 0;
  long prec_ = 0;
  std::map<Word, C> terms_;
};

// exp of a series without constant term.
template <class C>
NCS<C> exp_series(const NCS<C>& s) {
  if (!Coeff<C>::is_zero(s.constant())) throw ConstantTermError("exp needs zero constant term");
  const auto unit = NCS<C>::unit(s.alphabet(), s.cutoff(), s.prec());
  NCS<C> r = unit;
  for (int n = s.cutoff(); n >= 1; --n) r = unit + mul(s, r) * Q(1, n);
  return r;
}

// log of a series with constant term 1.
template <class C>
NCS<C> log_series(const NCS<C>& s) {
  const C c0 = s.constant();
  const C one = Coeff<C>::from_q(Q(1), s.prec());
  if (!Coeff<C>::near_zero(c0 - one)) throw ConstantTermError("log needs constant term 1");
  NCS<C> x = s;
  x.set(Word{}, Coeff<C>::zero(s.prec()));
  const int n_max = std::max(1, s.cutoff());
  NCS<C> r(s.alphabet(), s.cutoff(), s.prec());
  for (int n = n_max; n >= 1; --n) {
    NCS<C> cst = NCS<C>::unit(s.alphabet(), s.cutoff(), s.prec()) * Q((n % 2) ? 1 : -1, n);
    r = cst + mul(x, r);
  }
  return mul(x, r);
}

// Multiplicative inverse of a series with constant term 1.
template <class C>
NCS<C> inverse(const NCS<C>& s) {
  const C one = Coeff<C>::from_q(Q(1), s.prec());
  if (!Coeff<C>::near_zero(s.constant() - one)) throw ConstantTermError("inverse implemented for constant term 1");
  const auto unit = NCS<C>::unit(s.alphabet(), s.cutoff(), s.prec());
  NCS<C> x = unit - s;
  x.set(Word{}, Coeff<C>::zero(s.prec()));
  NCS<C> r = unit;
  for (int n = 0; n < s.cutoff(); ++n) r = unit + mul(x, r);
  return r;
}

namespace detail {
template <class C>
void substitute_rec(const NCS<C>& prefix, typename std::map<Word, C>::const_iterator b,
                    typename std::map<Word, C>::const_iterator e, std::size_t depth,
                    const std::vector<NCS<C>>& images, NCS<C>& out) {
  while (b != e && b->first.size() == depth) {
    out += prefix.scaled(b->second);
    ++b;
  }
  while (b != e) {
    const char c = b->first[depth];
    auto g = b;
    while (g != e && g->first[depth] == c) ++g;
    NCS<C> next = mul(prefix, images.at(static_cast<unsigned char>(c)));
    if (!next.is_zero()) substitute_rec(next, b, g, depth + 1, images, out);
    b = g;
  }
}
}  // namespace detail

// Algebra morphism determined by generator images (all over one target alphabet).
template <class C>
NCS<C> substitute(const NCS<C>& s, const std::vector<NCS<C>>& images) {
  if (images.size() != s.alphabet()->size()) throw MismatchError("one image per generator required");
  const auto& tgt = images.front();
  NCS<C> out(tgt.alphabet(), tgt.cutoff(), std::max(tgt.prec(), s.prec()));
  const auto unit = NCS<C>::unit(tgt.alphabet(), tgt.cutoff(), out.prec());
  detail::substitute_rec(unit, s.terms().begin(), s.terms().end(), 0, images, out);
  return out;
}

}  // namespace kzb
