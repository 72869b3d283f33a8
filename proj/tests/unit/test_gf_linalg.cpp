#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "snfc/error.hpp"
#include "snfc/gf_matrix.hpp"
#include "snfc/rational.hpp"

using snfc::Elem;
using snfc::Error;
using snfc::ErrorCode;
using snfc::Field;
using snfc::GfMatrix;
using snfc::Rational;

namespace {

class FieldAxioms : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(FieldAxioms, HoldExhaustively) {
  const Field f = Field::parse(std::to_string(GetParam()));
  const Elem q = f.order();
  ASSERT_EQ(q, GetParam());
  for (Elem a = 0; a < q; ++a) {
    EXPECT_EQ(f.add(a, 0), a);
    EXPECT_EQ(f.mul(a, 1), a);
    EXPECT_EQ(f.add(a, f.neg(a)), 0u);
    if (a != 0) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
    for (Elem b = 0; b < q; ++b) {
      EXPECT_EQ(f.add(a, b), f.add(b, a));
      EXPECT_EQ(f.mul(a, b), f.mul(b, a));
      EXPECT_EQ(f.sub(f.add(a, b), b), a);
      for (Elem c = 0; c < q; c += 1 + q / 5) {
        EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      }
    }
  }
}

TEST_P(FieldAxioms, CharacteristicAnnihilates) {
  const Field f = Field::parse(std::to_string(GetParam()));
  for (Elem a = 0; a < f.order(); ++a) {
    Elem sum = 0;
    for (std::uint32_t i = 0; i < f.characteristic(); ++i) sum = f.add(sum, a);
    EXPECT_EQ(sum, 0u);
  }
}

TEST(Field, ModulusRootIsPrimitive) {
  for (const char* q : {"4", "8", "9", "16", "25", "27", "49"}) {
    const Field f = Field::parse(q);
    const Elem x = f.characteristic();
    std::uint32_t order = 1;
    for (Elem y = x; y != 1; y = f.mul(y, x)) ++order;
    EXPECT_EQ(order, f.order() - 1) << "GF(" << q << ")";
  }
}

INSTANTIATE_TEST_SUITE_P(SmallOrders, FieldAxioms, ::testing::Values(2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 49u));

TEST(Field, ExtensionModuliAreSmallestPrimitive) {
  EXPECT_EQ(Field::make(2, 2).modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(Field::make(2, 3).modulus(), (std::vector<std::uint32_t>{1, 1, 0, 1}));
  EXPECT_EQ(Field::make(3, 2).modulus(), (std::vector<std::uint32_t>{2, 1, 1}));
}

TEST(Field, ParseAcceptsPowersAndRejectsComposites) {
  EXPECT_EQ(Field::parse("3^2"), Field::make(3, 2));
  EXPECT_EQ(Field::parse("9"), Field::make(3, 2));
  EXPECT_EQ(Field::parse("11").order(), 11u);
  for (const char* bad : {"6", "1", "x", "2^", "12"}) {
    EXPECT_THROW(Field::parse(bad), Error) << bad;
  }
}

TEST(Field, SmallestAboveIsStrict) {
  EXPECT_EQ(Field::smallest_above(10).order(), 11u);
  EXPECT_EQ(Field::smallest_above(15).order(), 16u);
  EXPECT_EQ(Field::smallest_above(16).order(), 17u);
  EXPECT_EQ(Field::smallest_above(45).order(), 47u);
}

TEST(Field, PowMatchesRepeatedProduct) {
  const Field f = Field::make(5, 2);
  for (Elem a = 0; a < f.order(); ++a) {
    Elem acc = 1;
    for (std::uint64_t e = 0; e < 30; ++e) {
      EXPECT_EQ(f.pow(a, e), acc);
      acc = f.mul(acc, a);
    }
  }
}

TEST(Field, InverseOfZeroThrows) { EXPECT_THROW(Field::make(7).inv(0), Error); }

TEST(GfMatrix, RankAgreesWithIntegerElimination) {
  std::mt19937_64 rng(7);
  for (long p : {2L, 3L, 5L, 7L}) {
    const Field f = Field::make(static_cast<std::uint32_t>(p));
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t rows = 1 + rng() % 6;
      const std::size_t cols = 1 + rng() % 6;
      GfMatrix m = oracle::random_matrix(rng, f, rows, cols);
      if (trial % 3 == 0 && rows > 1) m.paste(rows - 1, 0, m.block(0, 0, 1, cols).scaled(f.neg(1)));
      std::vector<std::vector<long>> ints;
      for (const auto& r : m.to_rows()) ints.emplace_back(r.begin(), r.end());
      EXPECT_EQ(snfc::rank(m), oracle::rank_mod_p(ints, p));
      EXPECT_EQ(snfc::rank(m), snfc::rank(m.transpose()));
    }
  }
}

TEST(GfMatrix, SolveRightProducesSolutionsWhenConsistent) {
  std::mt19937_64 rng(11);
  const Field f = Field::make(3, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const std::size_t m = 1 + rng() % 5;
    const GfMatrix a = oracle::random_matrix(rng, f, n, m);
    const GfMatrix x = oracle::random_matrix(rng, f, m, 2);
    const GfMatrix b = a * x;
    const auto sol = snfc::solve_right(a, b);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(a * *sol, b);
    const GfMatrix other = oracle::random_matrix(rng, f, n, 1);
    const bool in_span = snfc::rank(snfc::hconcat(a, other)) == snfc::rank(a);
    EXPECT_EQ(snfc::solve_right(a, other).has_value(), in_span);
    EXPECT_EQ(snfc::column_span_contains(a, other), in_span);
  }
}

TEST(GfMatrix, InverseAndSingularity) {
  std::mt19937_64 rng(5);
  const Field f = Field::make(2, 4);
  int invertible = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const GfMatrix a = oracle::random_matrix(rng, f, 4, 4);
    const auto inv = snfc::inverse(a);
    EXPECT_EQ(inv.has_value(), snfc::rank(a) == 4);
    if (inv) {
      ++invertible;
      EXPECT_EQ(a * *inv, GfMatrix::identity(f, 4));
      EXPECT_EQ(*inv * a, GfMatrix::identity(f, 4));
    }
  }
  EXPECT_GT(invertible, 50);
}

TEST(GfMatrix, KroneckerWithIdentityRepeatsEntries) {
  const Field f = Field::make(5);
  const GfMatrix a = GfMatrix::from_rows(f, {{1, 2}, {3, 4}});
  const GfMatrix k = snfc::kron(a, GfMatrix::identity(f, 2));
  ASSERT_EQ(k.rows(), 4u);
  ASSERT_EQ(k.cols(), 4u);
  EXPECT_EQ(k, GfMatrix::from_rows(f, {{1, 0, 2, 0}, {0, 1, 0, 2}, {3, 0, 4, 0}, {0, 3, 0, 4}}));
}

TEST(GfMatrix, ShapeMismatchThrows) {
  const Field f = Field::make(3);
  EXPECT_THROW(GfMatrix(f, 2, 3) * GfMatrix(f, 2, 3), Error);
  EXPECT_THROW(GfMatrix(f, 2, 3) + GfMatrix(f, 3, 2), Error);
  EXPECT_THROW(GfMatrix(f, 2, 2) * GfMatrix(Field::make(5), 2, 2), Error);
}

TEST(GfMatrix, TrivialIntersectionMatchesRankSum) {
  std::mt19937_64 rng(3);
  const Field f = Field::make(2);
  for (int trial = 0; trial < 200; ++trial) {
    const GfMatrix a = oracle::random_matrix(rng, f, 5, 1 + rng() % 3);
    const GfMatrix b = oracle::random_matrix(rng, f, 5, 1 + rng() % 3);
    const std::size_t joint = snfc::rank(snfc::hconcat(a, b));
    EXPECT_EQ(snfc::subspaces_intersect_trivially(a, b), joint == snfc::rank(a) + snfc::rank(b));
  }
}

TEST(SpanBasis, TracksRankIncrementally) {
  std::mt19937_64 rng(9);
  const Field f = Field::make(3);
  for (int trial = 0; trial < 50; ++trial) {
    const GfMatrix m = oracle::random_matrix(rng, f, 4, 6);
    snfc::SpanBasis basis(f, 4);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto col = m.column_values(c);
      const bool was_in = basis.contains(col);
      EXPECT_EQ(basis.insert(col), !was_in);
      EXPECT_TRUE(basis.contains(col));
      EXPECT_EQ(basis.rank(), snfc::rank(m.block(0, 0, 4, c + 1)));
    }
  }
}

TEST(MatrixText, RoundTrips) {
  const Field f = Field::make(3, 2);
  const GfMatrix m = GfMatrix::from_rows(f, {{0, 8, 3}, {1, 2, 7}});
  EXPECT_EQ(snfc::parse_matrix(snfc::format_matrix(m)), m);
}

TEST(MatrixText, RejectsOutOfFieldEntries) {
  EXPECT_THROW(snfc::parse_matrix("matrix 1 2 over 3\n1 3\n"), Error);
  EXPECT_THROW(snfc::parse_matrix("matrix 2 2 over 3\n1 2\n"), Error);
}

TEST(Rational, NormalizesAndOrders) {
  EXPECT_EQ(Rational(4, 6), Rational(2, 3));
  EXPECT_EQ(Rational(2, -4), Rational(-1, 2));
  EXPECT_EQ(Rational(6, 3).to_string(), "2/1");
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(1, 3) - Rational(1, 2), Rational(-1, 6));
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("3"), Rational(3));
  EXPECT_THROW(Rational(1, 0), Error);
  EXPECT_THROW(Rational::parse("a/b"), Error);
}

}  // namespace
