#pragma once

// Exact oracles written independently of the library: small rational
// elimination, Bernoulli numbers by the Worpitzky sum, Euler phi by gcd
// counting, and free Lie algebra dimensions by Moebius inversion.

#include <gmpxx.h>

#include <map>
#include <numeric>
#include <optional>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Vec = std::vector<Q>;
using Mat = std::vector<Vec>;

inline long phi_by_gcd(long n) {
  long c = 0;
  for (long k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

inline Q binom(long n, long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Q(r);
}

// B_n = sum_k 1/(k+1) sum_j (-1)^j C(k,j) j^n, with B_1 flipped to -1/2.
inline Q bernoulli(int n) {
  Q s = 0;
  for (int k = 0; k <= n; ++k) {
    Q inner = 0;
    for (int j = 0; j <= k; ++j) {
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), j, n);
      if (n == 0) p = 1;
      inner += (j % 2 ? -1 : 1) * binom(k, j) * Q(p);
    }
    s += inner / (k + 1);
  }
  s.canonicalize();
  return s;
}

inline Q bernoulli_poly(int m, const Q& x) {
  Q s = 0, xp = 1;
  for (int k = m; k >= 0; --k) {
    s += binom(m, k) * bernoulli(k) * xp;
    xp *= x;
  }
  s.canonicalize();
  return s;
}

inline Q factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Q(f);
}

// Solve y^T A = b^T (A: r x c, b: length c). Returns some solution y or nothing.
inline std::optional<Vec> solve_left(const Mat& A, const Vec& b) {
  const std::size_t r = A.size(), c = b.size();
  // Augmented system A^T y = b: c equations, r unknowns.
  Mat M(c, Vec(r + 1));
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < r; ++j) M[i][j] = A[j][i];
    M[i][r] = b[i];
  }
  std::vector<long> where(r, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < r && row < c; ++col) {
    std::size_t p = row;
    while (p < c && M[p][col] == 0) ++p;
    if (p == c) continue;
    std::swap(M[p], M[row]);
    for (std::size_t i = 0; i < c; ++i) {
      if (i == row || M[i][col] == 0) continue;
      const Q f = M[i][col] / M[row][col];
      for (std::size_t j = col; j <= r; ++j) M[i][j] -= f * M[row][j];
    }
    where[col] = static_cast<long>(row);
    ++row;
  }
  for (std::size_t i = row; i < c; ++i)
    if (M[i][r] != 0) return std::nullopt;
  Vec y(r, 0);
  for (std::size_t j = 0; j < r; ++j)
    if (where[j] >= 0) y[j] = M[where[j]][r] / M[where[j]][j];
  return y;
}

inline std::size_t rank(Mat M) {
  if (M.empty()) return 0;
  const std::size_t c = M[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < M.size(); ++col) {
    std::size_t p = row;
    while (p < M.size() && M[p][col] == 0) ++p;
    if (p == M.size()) continue;
    std::swap(M[p], M[row]);
    for (std::size_t i = row + 1; i < M.size(); ++i) {
      if (M[i][col] == 0) continue;
      const Q f = M[i][col] / M[row][col];
      for (std::size_t j = col; j < c; ++j) M[i][j] -= f * M[row][j];
    }
    ++row;
  }
  return row;
}

// Rows of the distribution and conjugation relations among x_j ~ Li_m(zeta_N^j),
// together with the right-hand sides in units of (2 pi i)^m: distribution rows
// hold exactly, conjugation rows hold up to -B_m(j/N)/m!.
struct AffineSystem {
  Mat rows;
  Vec rhs;
};

inline AffineSystem li_affine_system(long N, int m) {
  AffineSystem s;
  auto mod = [N](long a) { return ((a % N) + N) % N; };
  for (long l = 2; l <= N; ++l) {
    bool prime = true;
    for (long d = 2; d * d <= l; ++d) prime = prime && l % d != 0;
    if (!prime || N % l != 0) continue;
    mpz_class lp;
    mpz_ui_pow_ui(lp.get_mpz_t(), l, m - 1);
    for (long b = 0; b < N / l; ++b) {
      Vec row(N, 0);
      for (long t = 0; t < l; ++t) row[b + t * N / l] += Q(lp);
      row[mod(b * l)] -= 1;
      s.rows.push_back(row);
      s.rhs.push_back(0);
    }
  }
  for (long j = 0; j < N; ++j) {
    // x_j + (-1)^m x_{-j} = -B_m(j/N)/m!
    Vec row(N, 0);
    row[j] += 1;
    row[mod(-j)] += (m % 2 == 0) ? 1 : -1;
    s.rows.push_back(row);
    Q v = -bernoulli_poly(m, Q(j, N)) / factorial(m);
    v.canonicalize();
    s.rhs.push_back(v);
  }
  return s;
}

// Exact value of (x_j - sum_b c_b x_b)/(2 pi i)^m given the decomposition coefficients.
inline std::optional<Q> exact_residual(long N, int m, long j, const std::map<long, Q>& coords) {
  const AffineSystem s = li_affine_system(N, m);
  Vec target(N, 0);
  target[j] += 1;
  for (const auto& [b, c] : coords) target[b] -= c;
  auto y = solve_left(s.rows, target);
  if (!y) return std::nullopt;
  Q r = 0;
  for (std::size_t i = 0; i < y->size(); ++i) r += (*y)[i] * s.rhs[i];
  r.canonicalize();
  return r;
}

// dim of the weight-n piece of the free Lie algebra on generators of the given weights:
// prod_n (1 - x^n)^{-L_n} = 1/(1 - f(x)), f = sum x^{w_i}.
inline std::vector<long> free_lie_dims(const std::vector<int>& weights, int n_max) {
  // c_n = [x^n] -log(1 - f) = sum_j f^j / j
  std::vector<Q> c(n_max + 1, 0);
  std::vector<Q> fj(n_max + 1, 0);
  fj[0] = 1;
  for (int j = 1; j <= n_max; ++j) {
    std::vector<Q> next(n_max + 1, 0);
    for (int a = 0; a <= n_max; ++a)
      if (fj[a] != 0)
        for (int w : weights)
          if (a + w <= n_max) next[a + w] += fj[a];
    fj = next;
    for (int n = 0; n <= n_max; ++n) c[n] += fj[n] / j;
  }
  auto mobius = [](int n) {
    int r = 1;
    for (int p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        r = -r;
      }
    return n > 1 ? -r : r;
  };
  std::vector<long> L(n_max + 1, 0);
  for (int n = 1; n <= n_max; ++n) {
    Q s = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) s += mobius(n / d) * d * c[d];
    s /= n;
    s.canonicalize();
    L[n] = s.get_num().get_si();
  }
  return L;
}

}  // namespace oracle
