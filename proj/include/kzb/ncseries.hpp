#pragma once

#include <vector>

#include "errors.hpp"
#include "freelie.hpp"
#include "series.hpp"

namespace kzb {

template <class C>
NCS<C> exp(const LieElt<C>& u) {
  return exp_series(to_series(u));
}

// log of a group-like series; the result is checked to be a Lie element.
template <class C>
LieElt<C> log(const NCS<C>& s) {
  const NCS<C> l = log_series(s);
  try {
    return to_lie(l);
  } catch (const NotLieError& e) {
    throw NotGroupLikeError(std::string("log of a non-group-like series: ") + e.what());
  }
}

template <class C>
bool is_group_like(const NCS<C>& s) {
  try {
    (void)log(s);
    return true;
  } catch (const NotGroupLikeError&) {
    return false;
  } catch (const ConstantTermError&) {
    return false;
  }
}

// sum_n c_n ad_g^n(v)
template <class C>
LieElt<C> ad_series(const std::vector<Q>& c, Letter g, const LieElt<C>& v) {
  const auto G = LieElt<C>::generator(v.alphabet(), v.cutoff(), g, v.prec());
  LieElt<C> out(v.alphabet(), v.cutoff(), v.prec());
  LieElt<C> cur = v;
  for (std::size_t n = 0; n < c.size() && !cur.is_zero(); ++n) {
    if (c[n] != 0) out += cur * c[n];
    cur = bracket(G, cur);
  }
  return out;
}

// Ad(s)(v) = s v s^{-1} for group-like s.
template <class C>
LieElt<C> conjugate(const NCS<C>& s, const LieElt<C>& v) {
  if (!is_group_like(s)) throw NotGroupLikeError("conjugate needs a group-like series");
  const NCS<C> sv = to_series(v);
  if (s.cutoff() != sv.cutoff()) throw MismatchError("cutoff mismatch in conjugate");
  return to_lie(mul(mul(s, sv), inverse(s)));
}

}  // namespace kzb
