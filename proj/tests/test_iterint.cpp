#include <gtest/gtest.h>

#include <random>

#include "kzb/numeric/dch.hpp"
#include "kzb/numeric/iterint.hpp"
#include "kzb/numeric/linearized.hpp"
#include "kzb/numeric/period.hpp"
#include "kzb/numeric/star.hpp"
#include "kzb/polyquot.hpp"
#include "oracles/exact.hpp"

using namespace kzb;

namespace {

constexpr mpfr_prec_t P = 128;
const mpfr_prec_t WP = guard_prec(P);

Real tol(const char* s) { return Real(std::string(s), P); }

PathSpec polyline(const std::vector<std::pair<double, double>>& pts) {
  PathSpec p;
  for (const auto& [x, y] : pts) p.points.emplace_back(x, y, WP);
  return p;
}

// Polylines whose segments keep distance > 0.3 from 0, 1, -1.
std::vector<PathSpec> random_paths(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ux(-1.5, 2.5), uy(-1.5, 1.5);
  auto far = [](double ax, double ay, double bx, double by) {
    for (double px : {0.0, 1.0, -1.0}) {
      const double dx = bx - ax, dy = by - ay, d2 = dx * dx + dy * dy;
      double t = d2 == 0 ? 0 : ((px - ax) * dx - ay * dy) / d2;
      t = std::clamp(t, 0.0, 1.0);
      const double qx = ax + t * dx - px, qy = ay + t * dy;
      if (qx * qx + qy * qy < 0.09) return false;
    }
    return true;
  };
  std::vector<PathSpec> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<std::pair<double, double>> pts;
    double x, y;
    do {
      x = ux(rng);
      y = uy(rng);
    } while (!far(x, y, x, y));
    pts.emplace_back(x, y);
    for (int s = 0; s < 3; ++s) {
      double nx, ny;
      do {
        nx = ux(rng);
        ny = uy(rng);
      } while (!far(x, y, nx, ny));
      pts.emplace_back(nx, ny);
      x = nx;
      y = ny;
    }
    out.push_back(polyline(pts));
  }
  return out;
}

Word W(std::initializer_list<int> l) {
  Word w;
  for (int c : l) w.push_back(static_cast<char>(c));
  return w;
}

}  // namespace

TEST(IterInt, ShuffleProduct) {
  const Poles poles = kz_poles(2, WP);
  for (const auto& path : random_paths(8, 101)) {
    const auto v = iterint_many(path, poles, {W({0}), W({1}), W({2}), W({0, 1}), W({1, 0}), W({2, 1}), W({0, 2, 1}), W({2, 0, 1}), W({2, 1, 0})}, P);
    // I(a) I(b) = I(ab) + I(ba)
    EXPECT_LT(abs(v.at(W({0})) * v.at(W({1})) - v.at(W({0, 1})) - v.at(W({1, 0}))), tol("1e-15"));
    // I(21) I(0) = I(210) + I(201) + I(021)
    EXPECT_LT(abs(v.at(W({2, 1})) * v.at(W({0})) - v.at(W({2, 1, 0})) - v.at(W({2, 0, 1})) - v.at(W({0, 2, 1}))), tol("1e-15"));
  }
}

TEST(IterInt, Inversion) {
  const Poles poles = kz_poles(2, WP);
  for (const auto& path : random_paths(6, 202)) {
    const auto fwd = iterint_many(path, poles, {W({1, 2}), W({0, 1, 2})}, P);
    const auto bwd = iterint_many(path.reversed(), poles, {W({2, 1}), W({2, 1, 0})}, P);
    EXPECT_LT(abs(bwd.at(W({2, 1})) - fwd.at(W({1, 2}))), tol("1e-15"));
    EXPECT_LT(abs(bwd.at(W({2, 1, 0})) + fwd.at(W({0, 1, 2}))), tol("1e-15"));
  }
}

TEST(IterInt, CompositionOfTransports) {
  const Poles poles = kz_poles(2, WP);
  const auto alpha = Alphabet::kz(2);
  for (const auto& path : random_paths(4, 303)) {
    PathSpec a, b;
    a.points.assign(path.points.begin(), path.points.begin() + 3);
    b.points.assign(path.points.begin() + 2, path.points.end());
    const auto G = transport(path, alpha, poles, 3, P);
    const auto Ga = transport(a, alpha, poles, 3, P);
    const auto Gb = transport(b, alpha, poles, 3, P);
    const auto diff = G - mul(Ga, Gb);
    Real worst(P);
    for (const auto& [w, c] : diff.terms()) worst = max(worst, abs(c));
    EXPECT_LT(worst, tol("1e-15"));
    // the inverse transports compose in the opposite order
    const auto d2 = inverse(G) - mul(inverse(Gb), inverse(Ga));
    worst = Real(P);
    for (const auto& [w, c] : d2.terms()) worst = max(worst, abs(c));
    EXPECT_LT(worst, tol("1e-15"));
  }
}

TEST(IterInt, LogarithmVariationFromTangentialBasePoint) {
  const Poles poles{BigC(WP)};
  for (double lam : {1.0, 2.0, 0.25})
    for (double q : {0.7, 1.9}) {
      PathSpec path = polyline({{0, 0}, {q, 0}});
      path.start = Tangent{BigC(lam, 0, WP), true};
      const auto v = iterint_many(path, poles, {W({0}), W({0, 0})}, P);
      const Real ell = log(Real(q, P)) - log(Real(lam, P));
      EXPECT_LT(abs(v.at(W({0})) - BigC(ell)), tol("1e-30")) << lam << " " << q;
      EXPECT_LT(abs(v.at(W({0, 0})) - BigC(ell * ell / 2L)), tol("1e-30"));
    }
}

TEST(IterInt, RegularizationModesAgree) {
  const auto a = associator(2, 3, 96, RegMode::Shuffle);
  const auto b = associator(2, 3, 96, RegMode::MortarBoard);
  Real worst(96);
  const auto diff = a - b;
  for (const auto& [w, c] : diff.terms()) worst = max(worst, abs(c));
  EXPECT_LT(worst, Real(std::string("1e-15"), 96));
}

TEST(IterInt, ErrorEstimateCoversRefinement) {
  const Poles poles = kz_poles(2, WP);
  for (const auto& path : random_paths(3, 404)) {
    const auto lo = iterint_with_error(path, poles, W({0, 1, 2}), 96);
    const auto hi = iterint(path, poles, W({0, 1, 2}), 192);
    EXPECT_LE(abs(lo.value - hi), lo.err);
  }
}

TEST(IterInt, Errors) {
  const Poles poles = kz_poles(1, WP);
  PathSpec bad = polyline({{0, 0}, {1, 0}});
  EXPECT_THROW(iterint(bad, poles, W({0, 1}), P), Error);
  EXPECT_THROW(iterint(polyline({{-1, 1}, {0.5, 0.5}}), poles, W({0, 3}), P), Error);
}

TEST(Associator, ZetaTwoCoefficient) {
  const auto phi = associator(1, 2, P);
  const Real pi = Real::pi(P);
  const auto a = Alphabet::kz(1);
  EXPECT_LT(abs(abs(phi.coeff(a->parse("e0z0"))) - pi * pi / 6L), tol("1e-30"));
  EXPECT_LT(abs(phi.coeff(a->parse("e0z0")) + phi.coeff(a->parse("z0e0"))), tol("1e-30"));
}

TEST(Dch, ModD2CoefficientsMatchPolylogs) {
  for (long N = 1; N <= 3; ++N)
    for (const auto& e : dch_mod_d2(N, 3, P)) EXPECT_LT(e.diff, tol("1e-10")) << "N=" << N << " m=" << e.m << " k=" << e.k;
}

TEST(Dch, AgreesWithBettiTableUpToBernoulli) {
  // Coefficient of e0^m e_zeta: transport gives L (-1)^m Li_m(conj zeta), the table -L Li_m(zeta);
  // the difference divided by L^{m+1} is -B_m(k/N)/m!.
  const long N = 2;
  const auto entries = dch_mod_d2(N, 3, P);
  const auto table = betti_basis_cyc(N, 4)[0].kz;
  const BigC L = BigC::two_pi_i(P);
  for (int m = 2; m <= 4; ++m)
    for (long k = 0; k < N; ++k) {
      const DchEntry* d = nullptr;
      for (const auto& e : entries)
        if (e.m == m - 1 && e.k == k) d = &e;
      ASSERT_NE(d, nullptr);
      const BigC transported = L * d->numeric * Q(-1);
      const BigC tab = period(table.coeff(k, m), P);
      Q expect = -oracle::bernoulli_poly(m, Q(k, N)) / oracle::factorial(m);
      expect.canonicalize();
      const BigC ratio = (transported - tab) / pow_int(L, m + 1);
      EXPECT_LT(abs(ratio - BigC(expect, P)), tol("1e-10")) << "m=" << m << " k=" << k;
    }
}

TEST(Star, ResidualSmallModD2) {
  for (long N : {1L, 2L}) {
    const auto r = star_check(N, P);
    EXPECT_LT(r.residual_mod_d2, tol("1e-8")) << N;
    EXPECT_LT(r.residual_hain, tol("1e-8")) << N;
  }
}

TEST(Star, PerturbationIsDetected) {
  const auto r = star_check(1, P, 3, 1e-3);
  EXPECT_GT(r.residual_mod_d2, tol("1e-4"));
}

TEST(Linearized, ToyConnection) {
  const auto r = linearized_transport_check(P);
  EXPECT_LT(r.residual_gauge, tol("1e-10"));
  EXPECT_LT(r.residual_closed_form, tol("1e-25"));
  EXPECT_GT(r.lambda_sensitivity, tol("1e-3"));
}
