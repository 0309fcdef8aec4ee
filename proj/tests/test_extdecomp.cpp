#include <gtest/gtest.h>

#include <algorithm>

#include "kzb/extdecomp.hpp"
#include "oracles/exact.hpp"

using namespace kzb;

namespace {

bool has_row(const QMat& rows, const QVec& r) { return std::find(rows.begin(), rows.end(), r) != rows.end(); }

// Heads of the prime-power closed form, written out here independently.
std::map<Root, Q> prime_power_head(long N, long p, int m, const Root& z) {
  std::map<Root, Q> c;
  c[z] += 1;
  mpz_class Nm, pm;
  mpz_ui_pow_ui(Nm.get_mpz_t(), N, m - 1);
  mpz_ui_pow_ui(pm.get_mpz_t(), p, m - 1);
  Q c1 = Q(Nm) / (Q(1) - Q(pm));
  c1.canonicalize();
  c[Root(0, N)] += c1;
  Q pk = 1;
  long e = 1;
  for (long t = p; t < N; t *= p) {
    pk *= Q(pm);
    e *= p;
    c[z.pow(e)] += pk;
  }
  return c;
}

}  // namespace

TEST(RelationMatrix, Examples) {
  EXPECT_TRUE(has_row(relation_matrix(2, 3), QVec{Q(3), Q(4)}));
  QVec conj(5, 0);
  conj[1] = 1;
  conj[4] = 1;
  EXPECT_TRUE(has_row(relation_matrix(5, 2), conj));
  EXPECT_THROW(relation_matrix(5, 1), DomainError);
}

TEST(RelationMatrix, SpansOracleDistributionRows) {
  for (long N = 1; N <= 16; ++N)
    for (int m = 2; m <= 5; ++m) {
      const auto rows = relation_matrix(N, m);
      const auto sys = oracle::li_affine_system(N, m);
      for (const auto& r : sys.rows) EXPECT_TRUE(in_row_span(rows, r)) << "N=" << N << " m=" << m;
      EXPECT_EQ(rank(rows, N), oracle::rank(sys.rows)) << "N=" << N << " m=" << m;
    }
}

TEST(Decompose, Examples) {
  const auto a = decompose(4, 3, 2);
  EXPECT_EQ(a.coords.size(), 1u);
  EXPECT_EQ(a.coord(Root(1, 4)), 8);

  const auto b = decompose(5, 3, 0);
  EXPECT_EQ(b.coords.size(), 2u);
  EXPECT_EQ(b.coord(Root(1, 5)), Q(-25, 12));
  EXPECT_EQ(b.coord(Root(2, 5)), Q(-25, 12));

  for (long N = 3; N <= 20; ++N)
    for (const auto& z : basis_roots(N)) {
      const auto e = decompose(N, 3, z.k);
      EXPECT_EQ(e.coords.size(), 1u);
      EXPECT_EQ(e.coord(z), 1);
    }
}

TEST(Decompose, KillsRelationsIncludingCompositeLevels) {
  for (long N = 2; N <= 24; ++N)
    for (int m = 2; m <= 5; ++m) {
      for (const auto& r : relation_matrix(N, m)) EXPECT_TRUE(decompose_vector(N, m, r).coords.empty());
      // composite l | N: l^{m-1} sum_t x_{b + tN/l} = x_{bl}
      for (long l = 4; l <= N; ++l) {
        if (N % l != 0 || is_prime(l)) continue;
        for (long b = 0; b < N / l; ++b) {
          QVec row(N, 0);
          for (long t = 0; t < l; ++t) row[b + t * N / l] += qpow(Q(l), m - 1);
          row[(b * l) % N] -= 1;
          EXPECT_TRUE(decompose_vector(N, m, row).coords.empty()) << "N=" << N << " m=" << m << " l=" << l;
        }
      }
    }
}

TEST(Decompose, LinearAndIdempotent) {
  for (long N : {5L, 8L, 12L})
    for (int m = 2; m <= 4; ++m) {
      QVec v(N, 0);
      for (long j = 0; j < N; ++j) v[j] = Q(j * j - 3, j + 1);
      ExtClass sum{N, m, {}};
      for (long j = 0; j < N; ++j) sum += decompose(N, m, j).scaled(v[j]);
      EXPECT_EQ(decompose_vector(N, m, v), sum);
      for (const auto& z : ext_basis(N, m)) EXPECT_EQ(decompose(N, m, z.k), decompose(N, m, z.k + N));
    }
}

TEST(ExtDim, Examples) {
  EXPECT_EQ(ext_dim(7, 4), 3);
  EXPECT_EQ(ext_dim(2, 4), 0);
  EXPECT_EQ(ext_dim(1, 3), 1);
  EXPECT_EQ(ext_dim(1, 2), 0);
  EXPECT_EQ(ext_dim(2, 3), 1);
}

TEST(ExtDim, MatchesFormula) {
  for (long N = 1; N <= 30; ++N)
    for (int m = 2; m <= 6; ++m) {
      const long expect = N >= 3 ? oracle::phi_by_gcd(N) / 2 : (m % 2 == 1 ? 1 : 0);
      EXPECT_EQ(ext_dim(N, m), expect) << "N=" << N << " m=" << m;
      EXPECT_EQ(ext_dim_formula(N, m), expect);
    }
}

TEST(ExtBasis, SmallLevels) {
  EXPECT_EQ(ext_basis(1, 3), std::vector<Root>{Root(0, 1)});
  EXPECT_EQ(ext_basis(2, 5), std::vector<Root>{Root(1, 2)});
  EXPECT_TRUE(ext_basis(2, 4).empty());
  EXPECT_EQ(ext_basis(7, 2), (std::vector<Root>{Root(1, 7), Root(2, 7), Root(3, 7)}));
}

TEST(SigmaCoefficient, Examples) {
  for (long N : {5L, 7L, 12L})
    for (int m = 2; m <= 5; ++m)
      for (const auto& z : basis_roots(N)) {
        EXPECT_EQ(sigma_coefficient(N, m, z, z.k), 1);
        EXPECT_EQ(sigma_coefficient(N, m, z, z.conj().k), m % 2 == 1 ? 1 : -1);
      }
  EXPECT_EQ(sigma_coefficient(5, 3, Root(1, 5), 0), Q(-25, 12));
  EXPECT_THROW(sigma_coefficient(5, 3, Root(4, 5), 0), DomainError);
  EXPECT_THROW(sigma_coefficient(6, 3, Root(2, 6), 0), DomainError);
}

TEST(Head, PrimeLevel) {
  const auto h = head(5, 3, Root(1, 5));
  EXPECT_EQ(h.coeff(Root(1, 5)), 1);
  EXPECT_EQ(h.coeff(Root(0, 5)), Q(-25, 24));
  EXPECT_EQ(Q(-25, 24), Q(1) / (Q(1, 25) - 1));
  EXPECT_EQ(h.coeffs.size(), 2u);
}

TEST(Head, NineWeightTwo) {
  const auto h = head(9, 2, Root(1, 9));
  EXPECT_EQ(h.coeff(Root(1, 9)), 1);
  EXPECT_EQ(h.coeff(Root(3, 9)), 3);
  // m even: the derivation at zeta = 1 vanishes, so its coefficient is not reported
  EXPECT_FALSE(h.has(Root(0, 9)));
  std::map<Root, Q> with_c1{{Root(1, 9), Q(1)}, {Root(3, 9), Q(3)}, {Root(0, 9), Q(-9, 2)}};
  EXPECT_EQ(derivation_combination(9, 2, with_c1), h.u);
}

TEST(Head, SixWeightThree) {
  const auto h = head(6, 3, Root(1, 6));
  EXPECT_EQ(h.coeff(Root(1, 6)), 1);
  EXPECT_EQ(h.coeff(Root(2, 6)), Q(-4, 3));
  EXPECT_EQ(h.coeff(Root(0, 6)), Q(3, 2));
  EXPECT_EQ(h.coeff(Root(3, 6)), Q(-9, 8));
}

TEST(Head, SixWeightFour) {
  // c_{zeta^2} = 1/(2^{-3} + 1), c_{-1} = 1/(3^{-3} - 1); the two self-conjugate terms vanish for m even
  const auto h = head(6, 4, Root(1, 6));
  std::map<Root, Q> expect{{Root(1, 6), Q(1)}, {Root(2, 6), Q(8, 9)}, {Root(3, 6), Q(-27, 26)}, {Root(0, 6), Q(216, 182)}};
  EXPECT_EQ(derivation_combination(6, 4, expect), h.u);
  EXPECT_EQ(h.coeff(Root(1, 6)), 1);
  EXPECT_EQ(h.coeff(Root(2, 6)), Q(8, 9));
}

TEST(Head, LevelOneAndTwo) {
  for (int m : {3, 5, 7, 9}) {
    const auto h1 = head(1, m, Root(0, 1));
    EXPECT_EQ(h1.coeff(Root(0, 1)), Q(1, 2)) << m;
    const auto h2 = head(2, m, Root(1, 2));
    EXPECT_EQ(h2.coeff(Root(1, 2)), Q(1, 2)) << m;
    Q c = Q(1) / (2 * (qpow(Q(2), 1 - m) - 1));
    c.canonicalize();
    EXPECT_EQ(h2.coeff(Root(0, 2)), c) << m;
  }
  EXPECT_TRUE(head(1, 4, Root(0, 1)).coeffs.empty());
}

TEST(Head, PrimePowerClosedForms) {
  const std::vector<std::tuple<long, long, int>> cases{{5, 5, 3}, {7, 7, 4}, {8, 2, 3}, {9, 3, 2}, {25, 5, 3}, {16, 2, 5}, {27, 3, 3}};
  for (const auto& [N, p, m] : cases)
    for (const auto& z : basis_roots(N)) {
      const auto h = head(N, m, z);
      EXPECT_EQ(derivation_combination(N, m, prime_power_head(N, p, m, z)), h.u) << "N=" << N << " m=" << m << " k=" << z.k;
      EXPECT_EQ(h.coeff(z), 1);
    }
}

TEST(Head, ClosedFormTableAgrees) {
  for (long N : {3L, 4L, 5L, 6L, 7L, 8L, 9L, 11L, 13L})
    for (int m = 2; m <= 5; ++m)
      for (const auto& z : basis_roots(N)) {
        std::map<Root, Q> c;
        ASSERT_TRUE(head_closed_form(N, m, z, c));
        EXPECT_EQ(derivation_combination(N, m, c), head(N, m, z).u) << "N=" << N << " m=" << m;
      }
  std::map<Root, Q> c;
  EXPECT_FALSE(head_closed_form(10, 3, Root(1, 10), c));
}

TEST(Head, DepthOneRankIsHalfPhi) {
  for (long N = 3; N <= 12; ++N)
    for (int m = 2; m <= 5; ++m) EXPECT_EQ(static_cast<long>(head_rank(N, m)), oracle::phi_by_gcd(N) / 2) << N << " " << m;
  EXPECT_EQ(head_rank(9, 3), 3u);
}

TEST(Head, Errors) {
  EXPECT_THROW(head(5, 1, Root(1, 5)), DomainError);
  EXPECT_THROW(head(5, 3, Root(3, 5)), DomainError);
  EXPECT_THROW(head(5, 3, Root(1, 6)), DomainError);
}
