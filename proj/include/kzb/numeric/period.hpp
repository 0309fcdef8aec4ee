#pragma once

#include <map>

#include "../sym.hpp"
#include "polylog.hpp"

namespace kzb {

// Period map on Q[L, lambda_{m,k}]: L -> 2 pi i, lambda_{m,k} -> Li_m(zeta_N^k).
inline BigC period(const Sym& s, mpfr_prec_t prec) {
  const mpfr_prec_t wp = guard_prec(prec);
  std::map<SymVar, BigC> cache;
  auto value = [&](const SymVar& v) -> const BigC& {
    auto it = cache.find(v);
    if (it != cache.end()) return it->second;
    BigC x = v.is_L() ? BigC::two_pi_i(wp) : li(v.m, Root(v.k, v.N), wp);
    return cache.emplace(v, x).first->second;
  };
  BigC out(wp);
  for (const auto& [mono, c] : s.terms()) {
    BigC t(c, wp);
    for (const auto& [v, e] : mono) t *= pow_int(value(v), e);
    out += t;
  }
  return round_to(out, prec);
}

}  // namespace kzb
