#include <gtest/gtest.h>

#include "oracles.hpp"
#include "srlnc/bit_matrix.hpp"
#include "srlnc/coding_model.hpp"
#include "srlnc/column_basis.hpp"
#include "srlnc/errors.hpp"
#include "srlnc/matrix.hpp"
#include "srlnc/rng.hpp"

using namespace srlnc;

namespace {

Matrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, RngStream& rng) {
  Matrix m(f, r, c);
  for (auto& v : m.data()) v = static_cast<std::uint16_t>(rng.uniform_below(f->order()));
  return m;
}

std::vector<std::vector<std::uint32_t>> to_rows(const Matrix& m) {
  std::vector<std::vector<std::uint32_t>> rows(m.rows(), std::vector<std::uint32_t>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
  }
  return rows;
}

std::vector<FieldPtr> test_fields() { return {Field::gf2(), Field::prime(3), Field::prime(5), Field::binary_extension(4), Field::gf256()}; }

}  // namespace

TEST(Rank, Examples) {
  const auto f2 = Field::gf2();
  EXPECT_EQ(rank(Matrix(f2, 3, 5)), 0u);
  EXPECT_EQ(rank(Matrix(Field::gf256(), 4, 2)), 0u);
  EXPECT_EQ(rank(Matrix(f2, {{1, 0}, {1, 0}})), 1u);
  for (const auto& f : test_fields()) EXPECT_EQ(rank(Matrix::identity(f, 6)), 6u);
}

TEST(Rank, MatchesTextbookEliminationOverPrimeFields) {
  RngStream rng(3);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const auto f = Field::prime(p);
    for (int k = 0; k < 300; ++k) {
      const auto m = random_matrix(f, 1 + rng.uniform_below(7), 1 + rng.uniform_below(7), rng);
      ASSERT_EQ(static_cast<int>(rank(m)), oracle::prime_rank(to_rows(m), p));
      ASSERT_EQ(rank_generic(m), rank(m));
    }
  }
}

TEST(Rank, TransposeInvariant) {
  RngStream rng(4);
  for (const auto& f : test_fields()) {
    for (int k = 0; k < 100; ++k) {
      const auto m = random_matrix(f, 1 + rng.uniform_below(8), 1 + rng.uniform_below(8), rng);
      ASSERT_EQ(rank(m), rank(m.transpose()));
    }
  }
}

TEST(Rank, InvariantUnderElementaryRowOperations) {
  RngStream rng(5);
  for (const auto& f : test_fields()) {
    for (int k = 0; k < 100; ++k) {
      const std::size_t r = 2 + rng.uniform_below(6);
      auto m = random_matrix(f, r, 1 + rng.uniform_below(8), rng);
      // Make low rank likely by copying a row.
      if (k % 2) std::copy(m.row(0).begin(), m.row(0).end(), m.row(1).begin());
      const auto before = rank(m);
      const std::size_t a = rng.uniform_below(static_cast<std::uint32_t>(r));
      const std::size_t b = (a + 1 + rng.uniform_below(static_cast<std::uint32_t>(r - 1))) % r;
      m.swap_rows(a, b);
      ASSERT_EQ(rank(m), before);
      m.scale_row(a, 1 + rng.uniform_below(f->order() - 1));
      ASSERT_EQ(rank(m), before);
      m.add_scaled_row(b, a, rng.uniform_below(f->order()));
      ASSERT_EQ(rank(m), before);
    }
  }
}

TEST(Rank, ProductRankBound) {
  RngStream rng(6);
  for (const auto& f : test_fields()) {
    for (int k = 0; k < 100; ++k) {
      const std::size_t a = 1 + rng.uniform_below(6), b = 1 + rng.uniform_below(6), c = 1 + rng.uniform_below(6);
      const auto x = random_matrix(f, a, b, rng);
      const auto y = random_matrix(f, b, c, rng);
      ASSERT_LE(rank(matmul(x, y)), std::min(rank(x), rank(y)));
    }
  }
}

TEST(Rank, FullRowRankShortCircuitAgrees) {
  RngStream rng(8);
  for (const auto& f : test_fields()) {
    const CoefficientModel model(f, 0.7);
    for (int k = 0; k < 200; ++k) {
      const auto m = sample_matrix(model, 1 + rng.uniform_below(6), 1 + rng.uniform_below(9), rng);
      ASSERT_EQ(is_full_row_rank(m), rank(m) == m.rows());
    }
  }
}

TEST(BitMatrix, AgreesWithGenericPathOnRandomMatrices) {
  const auto f2 = Field::gf2();
  RngStream rng(9);
  for (int k = 0; k < 10000; ++k) {
    const std::size_t r = 1 + rng.uniform_below(128);
    const std::size_t c = 1 + rng.uniform_below(192);
    // Mix dense and sparse matrices so that rank deficiency is common.
    const CoefficientModel model(f2, k % 3 == 0 ? 0.5 : 0.97);
    const auto m = sample_matrix(model, r, c, rng);
    const auto bits = BitMatrix::from_matrix(m);
    ASSERT_EQ(bits.to_matrix(), m);
    const auto generic = rank_generic(m);
    ASSERT_EQ(rank(bits), generic) << r << "x" << c;
    ASSERT_EQ(is_full_row_rank(bits), generic == r);
  }
  EXPECT_THROW(BitMatrix::from_matrix(Matrix(Field::prime(3), 2, 2)), UsageError);
}

TEST(Rref, Examples) {
  const auto f2 = Field::gf2();
  const auto id = rref(Matrix::identity(Field::gf256(), 4));
  EXPECT_EQ(id.rref, Matrix::identity(Field::gf256(), 4));
  EXPECT_EQ(id.rank, 4u);
  EXPECT_EQ(id.pivots, (std::vector<std::size_t>{0, 1, 2, 3}));
  const auto r = rref(Matrix(f2, {{1, 1}, {1, 1}}));
  EXPECT_EQ(r.rref, Matrix(f2, {{1, 1}, {0, 0}}));
  EXPECT_EQ(r.rank, 1u);
}

TEST(Rref, CanonicalFormProperties) {
  RngStream rng(10);
  for (const auto& f : test_fields()) {
    for (int k = 0; k < 200; ++k) {
      const auto m = random_matrix(f, 4, 6, rng);
      const auto res = rref(m);
      ASSERT_EQ(res.rank, rank(m));
      ASSERT_EQ(res.pivots.size(), res.rank);
      for (std::size_t i = 0; i < res.pivots.size(); ++i) {
        if (i > 0) ASSERT_LT(res.pivots[i - 1], res.pivots[i]);
        for (std::size_t r = 0; r < res.rref.rows(); ++r) ASSERT_EQ(res.rref(r, res.pivots[i]), r == i ? 1u : 0u);
      }
      for (std::size_t r = res.rank; r < res.rref.rows(); ++r) {
        for (std::size_t c = 0; c < res.rref.cols(); ++c) ASSERT_EQ(res.rref(r, c), 0u);
      }
      ASSERT_EQ(rref(res.rref).rref, res.rref);
      ASSERT_EQ(rank(res.rref), res.rank);
    }
  }
}

TEST(Matmul, IdentityZeroAndAssociativity) {
  RngStream rng(12);
  for (const auto& f : test_fields()) {
    const auto a = random_matrix(f, 3, 4, rng);
    EXPECT_EQ(matmul(a, Matrix::identity(f, 4)), a);
    EXPECT_TRUE(matmul(a, Matrix(f, 4, 2)).is_zero());
    for (int k = 0; k < 50; ++k) {
      const auto x = random_matrix(f, 3, 4, rng);
      const auto y = random_matrix(f, 4, 5, rng);
      const auto z = random_matrix(f, 5, 2, rng);
      ASSERT_EQ(matmul(matmul(x, y), z), matmul(x, matmul(y, z)));
    }
  }
  EXPECT_THROW(matmul(Matrix(Field::gf2(), 2, 3), Matrix(Field::gf2(), 2, 3)), UsageError);
  EXPECT_THROW(matmul(Matrix(Field::gf2(), 2, 2), Matrix(Field::prime(3), 2, 2)), UsageError);
}

TEST(Invert, Examples) {
  const auto f2 = Field::gf2();
  EXPECT_EQ(*invert(Matrix::identity(Field::gf256(), 5)), Matrix::identity(Field::gf256(), 5));
  const Matrix swap(f2, {{0, 1}, {1, 0}});
  EXPECT_EQ(*invert(swap), swap);
  EXPECT_FALSE(invert(Matrix(f2, {{1, 1}, {1, 1}})).has_value());
  EXPECT_THROW(invert(Matrix(f2, 2, 3)), UsageError);
}

TEST(Invert, RandomNonsingularGf256) {
  const auto f = Field::gf256();
  RngStream rng(13);
  int checked = 0;
  while (checked < 200) {
    const auto m = random_matrix(f, 5, 5, rng);
    const auto inv = invert(m);
    ASSERT_EQ(inv.has_value(), rank(m) == 5);
    if (!inv) continue;
    ASSERT_EQ(matmul(m, *inv), Matrix::identity(f, 5));
    ASSERT_EQ(matmul(*inv, m), Matrix::identity(f, 5));
    ++checked;
  }
}

TEST(Matrix, DumpRoundTrip) {
  RngStream rng(14);
  const auto f = Field::prime(7);
  const auto m = random_matrix(f, 3, 4, rng);
  EXPECT_EQ(Matrix::parse(f, m.dump()), m);
  EXPECT_THROW(Matrix::parse(f, "1 2\n3\n"), UsageError);
  EXPECT_THROW(Matrix::parse(f, "1 9\n"), DomainError);
}

TEST(ColumnBasis, InsertionRankMatchesMatrixRank) {
  RngStream rng(15);
  for (const auto& f : test_fields()) {
    const CoefficientModel model(f, 0.8);
    for (int k = 0; k < 300; ++k) {
      const std::size_t n = 1 + rng.uniform_below(70);
      const std::size_t m = 1 + rng.uniform_below(80);
      const auto mat = sample_matrix(model, n, m, rng);
      std::size_t basis_rank = 0;
      if (f->order() == 2) {
        Gf2Basis basis(n);
        std::vector<std::uint64_t> v(basis.words());
        for (std::size_t c = 0; c < m; ++c) {
          std::fill(v.begin(), v.end(), 0);
          for (std::size_t r = 0; r < n; ++r) v[r / 64] |= static_cast<std::uint64_t>(mat(r, c)) << (r % 64);
          basis.insert(v);
        }
        basis_rank = basis.rank();
      } else if (f->order() == 256) {
        Gf256Basis basis(f, n);
        std::vector<std::uint8_t> v(n);
        for (std::size_t c = 0; c < m; ++c) {
          for (std::size_t r = 0; r < n; ++r) v[r] = static_cast<std::uint8_t>(mat(r, c));
          basis.insert(v);
        }
        basis_rank = basis.rank();
      }
      GenericBasis generic(f, n);
      std::vector<Elem> v(n);
      for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t r = 0; r < n; ++r) v[r] = mat(r, c);
        generic.insert(v);
      }
      ASSERT_EQ(generic.rank(), rank(mat));
      if (f->order() == 2 || f->order() == 256) ASSERT_EQ(basis_rank, rank(mat));
    }
  }
}
