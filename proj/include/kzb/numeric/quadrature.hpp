#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "../errors.hpp"
#include "../real.hpp"

namespace kzb {

// Gauss-Legendre rule on [-1, 1] plus the indefinite-integration matrix
// S with  int_{-1}^{x_i} f  ~  sum_j S[i][j] f(x_j).
struct GaussRule {
  int n = 0;
  mpfr_prec_t prec = 0;
  std::vector<Real> x, w;
  std::vector<std::vector<Real>> S;
};

namespace detail {

// P_0..P_{n} at x by the three-term recurrence.
inline std::vector<Real> legendre_all(const Real& x, int n) {
  std::vector<Real> P;
  P.reserve(n + 1);
  P.emplace_back(1L, x.prec());
  if (n >= 1) P.push_back(x);
  for (int k = 1; k < n; ++k) P.push_back((x * P[k] * long(2 * k + 1) - P[k - 1] * long(k)) / long(k + 1));
  return P;
}

inline GaussRule build_gauss(int n, mpfr_prec_t prec) {
  GaussRule g;
  g.n = n;
  g.prec = prec;
  const mpfr_prec_t wp = prec + 32;
  for (int i = 0; i < n; ++i) {
    Real x(std::cos(M_PI * (i + 0.75) / (n + 0.5)), wp);
    Real dp(wp);
    for (int it = 0; it < 200; ++it) {
      auto P = legendre_all(x, n);
      // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
      dp = (x * P[n] - P[n - 1]) * long(n) / (x * x - Real(1L, wp));
      Real dx = P[n] / dp;
      x -= dx;
      if (dx.is_zero() || dx.exponent() < -static_cast<long>(wp) + 4) break;
    }
    auto P = legendre_all(x, n);
    dp = (x * P[n] - P[n - 1]) * long(n) / (x * x - Real(1L, wp));
    Real w = Real(2L, wp) / ((Real(1L, wp) - x * x) * dp * dp);
    g.x.push_back(x);
    g.w.push_back(w);
  }
  // int_{-1}^{x} P_k = (P_{k+1}(x) - P_{k-1}(x)) / (2k+1), and x + 1 for k = 0.
  std::vector<std::vector<Real>> Pnode(n), Qnode(n);
  for (int i = 0; i < n; ++i) {
    auto P = legendre_all(g.x[i], n);
    Pnode[i].assign(P.begin(), P.begin() + n);
    Qnode[i].resize(n);
    Qnode[i][0] = g.x[i] + Real(1L, wp);
    for (int k = 1; k < n; ++k) Qnode[i][k] = (P[k + 1] - P[k - 1]) / long(2 * k + 1);
  }
  g.S.assign(n, std::vector<Real>(n, Real(wp)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Real s(wp);
      for (int k = 0; k < n; ++k) s += Qnode[i][k] * Pnode[j][k] * Q(2 * k + 1, 2);
      g.S[i][j] = s * g.w[j];
    }
  for (auto& v : g.x) mpfr_prec_round(v.get(), prec, MPFR_RNDN);
  for (auto& v : g.w) mpfr_prec_round(v.get(), prec, MPFR_RNDN);
  for (auto& row : g.S)
    for (auto& v : row) mpfr_prec_round(v.get(), prec, MPFR_RNDN);
  return g;
}

}  // namespace detail

inline const GaussRule& gauss_rule(int n, mpfr_prec_t prec) {
  static std::mutex mu;
  static std::map<std::pair<int, mpfr_prec_t>, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, prec}];
  if (!slot) slot = std::make_unique<GaussRule>(detail::build_gauss(n, prec));
  return *slot;
}

// Nodes per panel for panels whose nearest singularity is at least three
// half-lengths from the centre.
inline int panel_nodes(mpfr_prec_t prec) { return static_cast<int>(0.4 * static_cast<double>(prec)) + 6; }

}  // namespace kzb
