#pragma once

#include <string>
#include <vector>

#include "errors.hpp"
#include "freelie.hpp"
#include "ncseries.hpp"
#include "polyquot.hpp"
#include "rational.hpp"

namespace kzb {

// A KZ generator: e0, e_inf = -e0 - sum e_zeta (derived), or e_{zeta_N^k}.
struct KzGen {
  enum Kind { E0, EInf, EZeta } kind = E0;
  long k = 0;

  static KzGen e0() { return {E0, 0}; }
  static KzGen einf() { return {EInf, 0}; }
  static KzGen ez(long k) { return {EZeta, k}; }
};

// t_0 := [X, Y] - sum_{k>=1} t_k
inline LieElt<Q> kzb_t(long N, int cutoff, long k) {
  auto a = Alphabet::kzb(N);
  k = mod_l(k, N);
  if (k != 0) return LieElt<Q>::generator(a, cutoff, a->t(k));
  LieElt<Q> out(a, cutoff);
  if (cutoff < 2) return out;
  out.add(Word{static_cast<char>(a->X()), static_cast<char>(a->Y())}, Q(1));
  for (long j = 1; j < N; ++j) out.add(Word(1, static_cast<char>(a->t(j))), Q(-1));
  return out;
}

inline LieElt<Q> hain_image(const KzGen& g, long N, int cutoff) {
  if (cutoff < 1) throw DomainError("cutoff must be >= 1");
  auto a = Alphabet::kzb(N);
  const auto Y = LieElt<Q>::generator(a, cutoff, a->Y());
  switch (g.kind) {
    case KzGen::E0:
      return ad_series(bernoulli_series(cutoff), a->X(), Y);
    case KzGen::EInf:
      return ad_series(bernoulli_series_neg(cutoff), a->X(), Y);
    case KzGen::EZeta:
      return kzb_t(N, cutoff, g.k);
  }
  throw DomainError("unknown generator");
}

inline LieElt<Q> hain_image(Letter kz_letter, long N, int cutoff) {
  if (kz_letter == 0) return hain_image(KzGen::e0(), N, cutoff);
  if (kz_letter > N) throw DomainError("unknown KZ generator");
  return hain_image(KzGen::ez(static_cast<long>(kz_letter) - 1), N, cutoff);
}

// Lie morphism extension of hain_image; output truncated at W-cutoff `cutoff`.
inline LieElt<Q> hain_apply(const LieElt<Q>& u, int cutoff = 0) {
  const Alphabet& a = *u.alphabet();
  if (a.kind != AlphabetKind::KZ) throw MismatchError("hain_apply needs a KZ element");
  if (cutoff == 0) cutoff = u.cutoff();
  const long N = a.level;
  std::vector<NCS<Q>> images;
  for (std::size_t g = 0; g < a.size(); ++g) images.push_back(to_series(hain_image(static_cast<Letter>(g), N, cutoff)));
  return to_lie(substitute(to_series(u), images));
}

// Fused path: KZ element mod D^2, then the model Hain map.
inline PolyQuot<Q> hain_mod_d2(const LieElt<Q>& u, int cutoff = 0) {
  if (cutoff == 0) cutoff = u.cutoff();
  return hain_mod_d2(project_kz_mod_D2(u), cutoff);
}

// Ad(e^X) Psi(e0) + Psi(e_inf) == 0; `perturb` replaces Psi(e0) by Y.
inline bool cylinder_check(int cutoff, bool perturb = false) {
  if (cutoff < 2) throw DomainError("cylinder_check needs cutoff >= 2");
  auto a = Alphabet::kzb(1);
  const auto X = LieElt<Q>::generator(a, cutoff, a->X());
  const LieElt<Q> psi0 = perturb ? LieElt<Q>::generator(a, cutoff, a->Y()) : hain_image(KzGen::e0(), 1, cutoff);
  const LieElt<Q> lhs = conjugate(exp(X), psi0) + hain_image(KzGen::einf(), 1, cutoff);
  return lhs.is_zero();
}

// Psi(e0) + Psi(e_inf) + sum_zeta Psi(e_zeta)
inline LieElt<Q> hain_relation_residual(long N, int cutoff) {
  LieElt<Q> s = hain_image(KzGen::e0(), N, cutoff) + hain_image(KzGen::einf(), N, cutoff);
  for (long k = 0; k < N; ++k) s += hain_image(KzGen::ez(k), N, cutoff);
  return s;
}

}  // namespace kzb
