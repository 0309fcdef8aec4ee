#pragma once

#include <set>
#include <vector>

#include "iterint.hpp"
#include "polylog.hpp"

namespace kzb {

struct DchEntry {
  int m;
  long k;
  BigC numeric;    // coefficient of e0^m . e_zeta in G(dch^{-1})
  BigC predicted;  // (-1)^m Li_{m+1}(conj zeta)
  Real diff;
};

// T(dch) mod D^2 by direct regularized quadrature along 1 -> 0.
inline std::vector<DchEntry> dch_mod_d2(long N, int max_m, mpfr_prec_t prec) {
  if (N < 1) throw DomainError("N must be >= 1");
  if (max_m < 0) throw DomainError("max weight must be >= 1");
  const mpfr_prec_t wp = guard_prec(prec);
  std::set<Word> words;
  for (int m = 0; m <= max_m; ++m)
    for (long k = 0; k < N; ++k) {
      if (m == 0 && k == 0) continue;
      Word w(m, 0);
      w.push_back(static_cast<char>(1 + k));
      words.insert(w);
    }
  auto vals = iterint_many(dch_path(wp).reversed(), kz_poles(N, wp), words, prec);
  std::vector<DchEntry> out;
  for (int m = 0; m <= max_m; ++m)
    for (long k = 0; k < N; ++k) {
      if (m == 0 && k == 0) continue;
      Word w(m, 0);
      w.push_back(static_cast<char>(1 + k));
      BigC pred = li(m + 1, Root(-k, N), prec);
      if (m % 2 == 1) pred = -pred;
      const BigC& v = vals.at(w);
      out.push_back({m, k, v, pred, abs(v - pred)});
    }
  return out;
}

}  // namespace kzb
