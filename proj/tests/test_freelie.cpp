#include <gtest/gtest.h>

#include <map>
#include <random>

#include "common.hpp"
#include "kzb/freelie.hpp"
#include "kzb/ncseries.hpp"
#include "oracles/exact.hpp"

using namespace kzb;
using testutil::gen;
using testutil::lie;

namespace {

std::vector<std::string> spelled(const AlphabetPtr& a, int cutoff) {
  std::vector<std::string> out;
  for (const auto& w : lyndon_basis(a, cutoff)) out.push_back(a->spell(w));
  return out;
}

std::map<int, long> counts_by_weight(const AlphabetPtr& a, int cutoff) {
  std::map<int, long> c;
  for (const auto& w : lyndon_basis(a, cutoff)) ++c[a->trunc_weight(w)];
  return c;
}

}  // namespace

TEST(LyndonBasis, Examples) {
  EXPECT_EQ(spelled(Alphabet::kzb(1), 2), (std::vector<std::string>{"X", "XY", "Y"}));
  EXPECT_EQ(spelled(Alphabet::kz(1), 2), (std::vector<std::string>{"e0", "e0z0", "z0"}));
  EXPECT_EQ(counts_by_weight(Alphabet::kzb(2), 2)[2], 2);
  EXPECT_THROW(lyndon_basis(Alphabet::kzb(2), 0), DomainError);
}

TEST(LyndonBasis, CountsMatchWittFormula) {
  for (long N = 1; N <= 4; ++N) {
    const int cut = 7;
    const auto kz = counts_by_weight(Alphabet::kz(N), cut);
    const auto kzb = counts_by_weight(Alphabet::kzb(N), cut);
    const auto dkz = oracle::free_lie_dims(std::vector<int>(N + 1, 1), cut);
    std::vector<int> wts{1, 1};
    for (long k = 1; k < N; ++k) wts.push_back(2);
    const auto dkzb = oracle::free_lie_dims(wts, cut);
    for (int n = 1; n <= cut; ++n) {
      EXPECT_EQ(kz.count(n) ? kz.at(n) : 0, dkz[n]) << "KZ N=" << N << " n=" << n;
      EXPECT_EQ(kzb.count(n) ? kzb.at(n) : 0, dkzb[n]) << "KZB N=" << N << " n=" << n;
    }
  }
}

TEST(LyndonBasis, SortedAndLyndon) {
  const auto b = lyndon_basis(Alphabet::kzb(3), 6);
  EXPECT_TRUE(std::is_sorted(b.begin(), b.end()));
  for (const auto& w : b) EXPECT_TRUE(is_lyndon(w));
}

TEST(Bracket, Examples) {
  const auto a = Alphabet::kzb(1);
  const auto X = gen(a, 5, "X"), Y = gen(a, 5, "Y");
  const auto xy = bracket(X, Y);
  ASSERT_EQ(xy.size(), 1u);
  EXPECT_EQ(xy.coeff(a->parse("XY")), 1);
  EXPECT_TRUE((bracket(X, Y) + bracket(Y, X)).is_zero());
  EXPECT_THROW(bracket(X, gen(Alphabet::kzb(2), 5, "X")), MismatchError);
}

TEST(Bracket, AntisymmetryAndJacobi) {
  std::mt19937 rng(7);
  for (long N : {1L, 2L, 3L}) {
    const auto a = Alphabet::kzb(N);
    for (int t = 0; t < 5; ++t) {
      const auto u = testutil::random_lie(a, 6, 3, 3, rng);
      const auto v = testutil::random_lie(a, 6, 3, 3, rng);
      const auto x = testutil::random_lie(a, 6, 2, 3, rng);
      EXPECT_TRUE(bracket(u, u).is_zero());
      EXPECT_TRUE((bracket(u, v) + bracket(v, u)).is_zero());
      const auto jac = bracket(u, bracket(v, x)) + bracket(v, bracket(x, u)) + bracket(x, bracket(u, v));
      EXPECT_TRUE(jac.is_zero()) << "N=" << N;
    }
  }
}

TEST(Bracket, FiltrationCompatible) {
  std::mt19937 rng(11);
  const auto a = Alphabet::kzb(3);
  for (int t = 0; t < 20; ++t) {
    const auto u = testutil::random_lie(a, 7, 3, 2, rng);
    const auto v = testutil::random_lie(a, 7, 3, 2, rng);
    const auto b = bracket(u, v);
    if (u.is_zero() || v.is_zero() || b.is_zero()) continue;
    const auto du = degrees(u), dv = degrees(v), db = degrees(b);
    EXPECT_GE(db.W, du.W + dv.W);
    EXPECT_GE(db.M, du.M + dv.M);
    EXPECT_LE(db.F, du.F + dv.F);
    EXPECT_GE(db.depth, std::min(2, du.depth + dv.depth));
  }
}

TEST(Degrees, Examples) {
  const auto a2 = Alphabet::kzb(2);
  auto d = degrees(gen(a2, 4, "t1"));
  EXPECT_EQ(d.W, 2);
  EXPECT_EQ(d.M, 2);
  EXPECT_EQ(d.F, 1);
  EXPECT_EQ(d.depth, 1);

  const auto X = gen(a2, 4, "X"), Y = gen(a2, 4, "Y");
  d = degrees(bracket(X, bracket(X, Y)));
  EXPECT_EQ(d.W, 3);
  EXPECT_EQ(d.M, 2);
  EXPECT_EQ(d.F, 1);
  EXPECT_EQ(d.depth, 1);

  d = degrees(Y);
  EXPECT_EQ(d.W, 1);
  EXPECT_EQ(d.M, 2);
  EXPECT_EQ(d.F, 1);
  EXPECT_EQ(d.depth, 0);

  // [t1, [X, t1]] has two t letters
  EXPECT_EQ(degrees(bracket(gen(a2, 5, "t1"), bracket(gen(a2, 5, "X"), gen(a2, 5, "t1")))).depth, 2);
  EXPECT_THROW(degrees(LieElt<Q>(a2, 4)), DomainError);
}

TEST(ProjectModD2, Examples) {
  for (long N : {1L, 3L, 5L}) {
    const auto a = Alphabet::kzb(N);
    const int cut = 5;
    const auto X = gen(a, cut, "X"), Y = gen(a, cut, "Y");
    EXPECT_EQ(project_mod_D2(X), PolyQuot<Q>::X(N, cut));

    auto ones = PolyQuot<Q>(N, cut);
    auto xs = PolyQuot<Q>(N, cut);
    for (long k = 0; k < N; ++k) {
      ones.add_column(k, 0, 0, Q(1));
      xs.add_column(k, 1, 0, Q(1));
    }
    EXPECT_EQ(project_mod_D2(bracket(X, Y)), ones) << N;
    EXPECT_EQ(project_mod_D2(bracket(X, bracket(X, Y))), xs) << N;
  }
}

TEST(ProjectModD2, IsLieMorphism) {
  std::mt19937 rng(3);
  for (long N : {1L, 2L, 4L}) {
    const auto a = Alphabet::kzb(N);
    for (int t = 0; t < 10; ++t) {
      const auto u = testutil::random_lie(a, 6, 3, 3, rng);
      const auto v = testutil::random_lie(a, 6, 3, 3, rng);
      EXPECT_EQ(project_mod_D2(bracket(u, v)), bracket(project_mod_D2(u), project_mod_D2(v))) << "N=" << N;
    }
  }
}

TEST(KzAbelianization, KernelIsPositiveTDegree) {
  for (long N : {1L, 2L, 3L}) {
    const auto a = Alphabet::kz(N);
    for (int n = 1; n <= 5; ++n) {
      std::vector<Word> words;
      for (const auto& w : lyndon_basis(a, n))
        if (static_cast<int>(w.size()) == n) words.push_back(w);
      // image of a Lyndon element under e0 -> e0, e_zeta -> 0
      std::vector<NCS<Q>> img;
      for (std::size_t g = 0; g < a->size(); ++g)
        img.push_back(g == 0 ? NCS<Q>::letter(a, n, 0) : NCS<Q>(a, n));
      std::vector<Word> cols;
      QMat rows;
      for (const auto& w : words) {
        LieElt<Q> u(a, n);
        u.add(w, Q(1));
        const auto s = substitute(to_series(u), img);
        QVec row;
        for (const auto& [x, c] : s.terms()) {
          auto it = std::find(cols.begin(), cols.end(), x);
          if (it == cols.end()) {
            cols.push_back(x);
            for (auto& r : rows) r.push_back(0);
            it = cols.end() - 1;
          }
          row.resize(cols.size(), 0);
          row[it - cols.begin()] = c;
        }
        row.resize(cols.size(), 0);
        rows.push_back(row);
        const bool has_t = std::any_of(w.begin(), w.end(), [](char c) { return c != 0; });
        EXPECT_EQ(s.is_zero(), has_t) << a->spell(w);
      }
      for (auto& r : rows) r.resize(cols.size(), 0);
      long with_t = 0;
      for (const auto& w : words) with_t += std::any_of(w.begin(), w.end(), [](char c) { return c != 0; });
      const std::size_t rk = cols.empty() ? 0 : oracle::rank(rows);
      EXPECT_EQ(static_cast<long>(words.size() - rk), with_t) << "N=" << N << " n=" << n;
    }
  }
}

TEST(LieElt, NoZeroCoefficientsStored) {
  const auto a = Alphabet::kzb(1);
  auto u = lie(a, 3, {{"X", Q(1)}, {"XY", Q(2)}});
  u.add(a->parse("X"), Q(-1));
  EXPECT_EQ(u.size(), 1u);
  EXPECT_EQ(u.coeff(a->parse("X")), 0);
}
