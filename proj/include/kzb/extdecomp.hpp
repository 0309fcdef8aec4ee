#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "polyquot.hpp"
#include "rational.hpp"
#include "roots.hpp"

namespace kzb {

// Class of a combination of Li_m(zeta_N^j) modulo (2 pi i)^m Q and the
// distribution/conjugation relations, over the primitive basis.
struct ExtClass {
  long N = 1;
  int m = 2;
  std::map<Root, Q> coords;  // zero coordinates are not stored

  Q coord(const Root& r) const {
    auto it = coords.find(r);
    return it == coords.end() ? Q(0) : it->second;
  }
  void add(const Root& r, const Q& c) {
    if (c == 0) return;
    Q& v = coords[r];
    v += c;
    v.canonicalize();
    if (v == 0) coords.erase(r);
  }
  ExtClass& operator+=(const ExtClass& o) {
    if (o.N != N || o.m != m) throw MismatchError("ExtClass level or weight mismatch");
    for (const auto& [r, c] : o.coords) add(r, c);
    return *this;
  }
  ExtClass scaled(const Q& s) const {
    ExtClass e{N, m, {}};
    for (const auto& [r, c] : coords) e.add(r, c * s);
    return e;
  }
  friend bool operator==(const ExtClass& a, const ExtClass& b) {
    return a.N == b.N && a.m == b.m && a.coords == b.coords;
  }
};

inline QMat relation_matrix(long N, int m) {
  if (m < 2) throw DomainError("relation_matrix needs m >= 2");
  if (N < 1) throw DomainError("N must be >= 1");
  QMat rows;
  for (long l : prime_divisors(N)) {
    const long step = N / l;
    const Q lm = qpow(Q(l), m - 1);
    for (long b = 0; b < step; ++b) {
      QVec row(N, Q(0));
      for (long t = 0; t < l; ++t) row[b + t * step] += lm;
      row[mod_l(b * l, N)] -= 1;
      rows.push_back(std::move(row));
    }
  }
  const Q sgn = (m + 1) % 2 == 0 ? Q(1) : Q(-1);  // (-1)^{m+1}
  for (long j = 0; j < N; ++j) {
    QVec row(N, Q(0));
    row[mod_l(N - j, N)] += 1;
    row[j] -= sgn;
    bool nz = false;
    for (const auto& v : row) nz = nz || v != 0;
    if (nz) rows.push_back(std::move(row));
  }
  return rows;
}

struct ExtSystem {
  long N;
  int m;
  Rref rref;
  std::vector<long> basis;  // free variables, all primitive upper-half
};

// Elimination with variable order: non-primitive, primitive non-basis, basis.
inline const ExtSystem& ext_system(long N, int m) {
  static std::mutex mu;
  static std::map<std::pair<long, int>, ExtSystem> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({N, m});
    if (it != cache.end()) return it->second;
  }
  const QMat rows = relation_matrix(N, m);
  std::vector<std::size_t> order;
  std::vector<bool> in_basis(N, false);
  for (const auto& r : basis_roots(N)) in_basis[r.k] = true;
  for (long k = 0; k < N; ++k)
    if (!classify(Root(k, N)).is_primitive) order.push_back(k);
  for (long k = 0; k < N; ++k)
    if (classify(Root(k, N)).is_primitive && !in_basis[k]) order.push_back(k);
  for (long k = 0; k < N; ++k)
    if (in_basis[k]) order.push_back(k);
  ExtSystem sys{N, m, rref(rows, N, order), {}};
  for (std::size_t f : sys.rref.free_cols) {
    if (!in_basis[f]) throw ContractViolation("extension basis", "free variable x_" + std::to_string(f) + " is not a basis root");
    sys.basis.push_back(static_cast<long>(f));
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(N, m), std::move(sys)).first->second;
}

inline int ext_dim(long N, int m) { return static_cast<int>(ext_system(N, m).basis.size()); }

// Closed form of the dimension: phi(N)/2 for N >= 3, parity rules for N <= 2.
inline int ext_dim_formula(long N, int m) {
  if (N <= 2) return m % 2 == 1 && (N == 2 || m >= 3) ? 1 : 0;
  return static_cast<int>(euler_phi(N) / 2);
}

inline std::vector<Root> ext_basis(long N, int m) {
  std::vector<Root> out;
  for (long k : ext_system(N, m).basis) out.emplace_back(k, N);
  return out;
}

inline ExtClass decompose(long N, int m, long j) {
  const ExtSystem& sys = ext_system(N, m);
  j = mod_l(j, N);
  ExtClass e{N, m, {}};
  for (long f : sys.basis)
    if (f == j) {
      e.add(Root(j, N), Q(1));
      return e;
    }
  for (std::size_t i = 0; i < sys.rref.pivots.size(); ++i) {
    if (static_cast<long>(sys.rref.pivots[i]) != j) continue;
    for (long f : sys.basis) e.add(Root(f, N), -sys.rref.rows[i][f]);
    return e;
  }
  throw ContractViolation("decompose", "variable x_" + std::to_string(j) + " neither pivot nor free");
}

// Decomposition of a formal combination sum_j v_j Li_m(zeta^j).
inline ExtClass decompose_vector(long N, int m, const QVec& v) {
  ExtClass e{N, m, {}};
  for (long j = 0; j < N; ++j)
    if (v.at(j) != 0) e += decompose(N, m, j).scaled(v[j]);
  return e;
}

inline Q sigma_coefficient(long N, int m, const Root& zeta, long j) {
  if (zeta.N != N || !is_basis_root(zeta)) throw DomainError("zeta must be a basis root of level N");
  return decompose(N, m, j).coord(zeta);
}

struct Head {
  long N;
  int m;
  Root zeta;
  std::map<Root, Q> coeffs;  // pair representative -> c_eta
  PolyQuot<Q> u;             // sum_j s_j Y^{m-1} t_j

  Q coeff(const Root& r) const {
    auto it = coeffs.find(r);
    return it == coeffs.end() ? Q(0) : it->second;
  }
  bool has(const Root& r) const { return coeffs.count(r) != 0; }
};

inline PolyQuot<Q> derivation_combination(long N, int m, const std::map<Root, Q>& c) {
  PolyQuot<Q> out(N, m + 1);
  for (const auto& [r, v] : c) out += eps_op<Q>(m, r, m + 1).u.scaled(v);
  return out;
}

// Closed forms of the heads where they are known: prime powers, N = 1, 2, 6.
inline bool head_closed_form(long N, int m, const Root& zeta, std::map<Root, Q>& out) {
  out.clear();
  const Q one(1);
  if (N == 1) {
    out[Root(0, 1)] = Q(1, 2);
    return true;
  }
  if (N == 2) {
    out[Root(1, 2)] = Q(1, 2);
    Q c = one / (qpow(Q(2), 1 - m) - 1) / 2;
    c.canonicalize();
    out[Root(0, 2)] = c;
    return true;
  }
  const auto ps = prime_divisors(N);
  if (ps.size() == 1) {
    const long p = ps[0];
    long n = 0;
    for (long t = N; t > 1; t /= p) ++n;
    out[zeta] += one;
    Q c1 = qpow(Q(N), m - 1) / (one - qpow(Q(p), m - 1));
    c1.canonicalize();
    out[Root(0, N)] += c1;
    long pk = 1;
    for (long k = 1; k <= n - 1; ++k) {
      pk *= p;
      out[zeta.pow(pk)] += qpow(Q(p), k * (m - 1));
    }
    return true;
  }
  if (N == 6) {
    const Q sg = m % 2 == 0 ? one : -one;  // (-1)^m
    out[zeta] += one;
    Q c2 = one / (qpow(Q(2), 1 - m) + sg);
    Q c1 = qpow(Q(6), m - 1) / ((one - qpow(Q(3), m - 1)) * (one - qpow(Q(2), m - 1)));
    Q cm = one / (qpow(Q(3), 1 - m) - one);
    c2.canonicalize();
    c1.canonicalize();
    cm.canonicalize();
    out[zeta.pow(2)] += c2;
    out[Root(0, 6)] += c1;
    out[Root(3, 6)] += cm;
    return true;
  }
  return false;
}

inline Head head(long N, int m, const Root& zeta) {
  if (m < 2) throw DomainError("head needs m >= 2");
  if (zeta.N != N || !is_basis_root(zeta)) throw DomainError("zeta must be a primitive basis root of level N");
  Head h{N, m, zeta, {}, PolyQuot<Q>(N, m + 1)};
  const ExtSystem& sys = ext_system(N, m);
  bool in_basis = false;
  for (long f : sys.basis) in_basis = in_basis || f == zeta.k;
  if (!in_basis) return h;  // trivial extension group in this weight (N <= 2, wrong parity)

  std::vector<Q> s(N);
  for (long j = 0; j < N; ++j) {
    s[j] = sigma_coefficient(N, m, zeta, j);
    h.u.add_column(j, 0, m - 1, s[j]);
  }
  for (const auto& pr : pair_representatives(N)) {
    const long k = pr.root.k;
    if (!pr.self_conjugate) {
      if (s[k] != 0) h.coeffs[pr.root] = s[k];
    } else if (m % 2 == 1) {
      Q c = s[k] / 2;
      c.canonicalize();
      if (c != 0) h.coeffs[pr.root] = c;
    }
  }
  if (!(derivation_combination(N, m, h.coeffs) == h.u))
    throw ContractViolation("head re-expression", "sum c_eta eps_op != sum_j s_j Y^{m-1} t_j");

  std::map<Root, Q> closed;
  if (head_closed_form(N, m, zeta, closed) && !(derivation_combination(N, m, closed) == h.u))
    throw ContractViolation("head closed form", "N=" + std::to_string(N) + " m=" + std::to_string(m));
  return h;
}

// Rows: heads of the basis roots, as column-coefficient vectors.
inline std::size_t head_rank(long N, int m) {
  QMat rows;
  for (const auto& z : ext_basis(N, m)) rows.push_back(head(N, m, z).u.coordinates());
  if (rows.empty()) return 0;
  return rank(rows, rows.front().size());
}

}  // namespace kzb
