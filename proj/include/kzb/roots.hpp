#pragma once

#include <compare>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace kzb {

// zeta_N^k = exp(2 pi i k / N), stored as the residue k.
struct Root {
  long k = 0;
  long N = 1;

  Root() = default;
  Root(long k_, long N_) : k(0), N(N_) {
    if (N_ < 1) throw DomainError("root level must be >= 1");
    k = mod_l(k_, N_);
  }

  static Root unit(long N) { return Root(0, N); }

  Root conj() const { return Root(-k, N); }
  Root pow(long e) const { return Root(k * e, N); }
  Root mul(const Root& o) const {
    if (o.N != N) throw MismatchError("root levels differ");
    return Root(k + o.k, N);
  }
  bool self_conjugate() const { return mod_l(2 * k, N) == 0; }

  std::string label() const { return "k=" + std::to_string(k); }

  auto operator<=>(const Root&) const = default;
};

struct RootClass {
  bool is_primitive;
  long order;
  bool upper_half;
};

inline RootClass classify(const Root& r) {
  const long g = gcd_l(r.k, r.N);  // gcd(0, N) = N
  return {g == 1, r.N / g, 0 < r.k && 2 * r.k < r.N};
}

struct PairRep {
  Root root;
  bool self_conjugate;
};

inline std::vector<PairRep> pair_representatives(long N) {
  if (N < 1) throw DomainError("N must be >= 1");
  std::vector<PairRep> out;
  for (long k = 0; 2 * k <= N; ++k) {
    Root r(k, N);
    out.push_back({r, r.self_conjugate()});
  }
  return out;
}

// Index set of the extension basis: primitive roots with Im > 0 for N >= 3.
// For N <= 2 there is a single primitive root (1 for N=1, -1 for N=2).
inline std::vector<Root> basis_roots(long N) {
  if (N < 1) throw DomainError("N must be >= 1");
  if (N == 1) return {Root(0, 1)};
  if (N == 2) return {Root(1, 2)};
  std::vector<Root> out;
  for (long k = 1; 2 * k < N; ++k)
    if (gcd_l(k, N) == 1) out.emplace_back(k, N);
  return out;
}

inline bool is_basis_root(const Root& r) {
  for (const auto& b : basis_roots(r.N))
    if (b == r) return true;
  return false;
}

}  // namespace kzb
