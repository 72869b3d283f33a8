#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "snfc/error.hpp"
#include "snfc/function_table.hpp"

using snfc::Alphabet;
using snfc::EdgeSet;
using snfc::Error;
using snfc::ErrorCode;
using snfc::Network;
using snfc::Partition;
using snfc::SourceSet;
using snfc::TabularFunction;

namespace {

Partition from_ints(const std::vector<int>& labels) {
  return Partition(std::vector<std::uint64_t>(labels.begin(), labels.end()));
}

std::vector<int> random_labels(std::mt19937_64& rng, std::size_t n, int blocks) {
  std::vector<int> out(n);
  for (auto& v : out) v = static_cast<int>(rng() % static_cast<std::uint64_t>(blocks));
  return out;
}

TEST(TabularFunction, MixedRadixIndexing) {
  const TabularFunction f({Alphabet{2, 0}, Alphabet{3, 0}}, Alphabet{6, 0}, {0, 1, 2, 3, 4, 5});
  EXPECT_EQ(f.index_of({1, 2}), 5u);
  EXPECT_EQ(f.tuple_of(4), (std::vector<std::uint32_t>{1, 1}));
  EXPECT_EQ(f({0, 2}), 2u);
  for (std::uint64_t i = 0; i < f.domain_size(); ++i) EXPECT_EQ(f.index_of(f.tuple_of(i)), i);
  EXPECT_FALSE(f.is_constant());
}

TEST(TabularFunction, ConstructionErrors) {
  EXPECT_THROW(TabularFunction({Alphabet{2, 0}}, Alphabet{2, 0}, {0, 1, 1}), Error);
  EXPECT_THROW(TabularFunction({Alphabet{2, 0}}, Alphabet{2, 0}, {0, 2}), Error);
  EXPECT_THROW(TabularFunction({Alphabet{2, 5}}, Alphabet{2, 0}, {0, 1}), Error);
  const TabularFunction f({Alphabet{2, 0}}, Alphabet{2, 0}, {0, 1});
  EXPECT_THROW(f({2}), Error);
  EXPECT_THROW(f({0, 0}), Error);
}

TEST(TabularText, RoundTripsWithAndWithoutZeros) {
  const TabularFunction product = fixtures::butterfly_product();
  EXPECT_EQ(product.domain_size(), 4u);
  EXPECT_FALSE(product.inputs().front().zero.has_value());
  EXPECT_EQ(snfc::parse_tabular(snfc::format_tabular(product)), product);
  const TabularFunction sum = oracle::scalar_linear({1, 2}, 3);
  EXPECT_EQ(snfc::parse_tabular(snfc::format_tabular(sum)), sum);
}

TEST(TabularText, RejectsPartialTables) {
  EXPECT_THROW(snfc::parse_tabular("alphabets 2 2 / out 2\n0 0 -> 0\n"), Error);
  EXPECT_THROW(snfc::parse_tabular("0 0 -> 0\n"), Error);
  EXPECT_THROW(snfc::parse_tabular("alphabets 2 / out 2\n0 -> 3\n1 -> 0\n"), Error);
}

TEST(TabularFromMatrix, AgreesWithMatrixProduct) {
  const snfc::Field f = snfc::Field::make(3);
  const auto m = snfc::GfMatrix::from_rows(f, {{1, 0}, {2, 1}});
  const TabularFunction t = snfc::tabular_from_matrix(m);
  ASSERT_EQ(t.domain_size(), 9u);
  ASSERT_EQ(t.output().size, 9u);
  for (std::uint64_t i = 0; i < 9; ++i) {
    const auto x = t.tuple_of(i);
    const auto y0 = f.add(f.mul(x[0], 1), f.mul(x[1], 2));
    const auto y1 = f.mul(x[1], 1);
    EXPECT_EQ(t.at(i), y0 * 3 + y1);
  }
  EXPECT_EQ(t.inputs().front().zero, std::optional<std::uint32_t>(0));
}

TEST(Partition, CanonicalNumberingAndRefinement) {
  const Partition p(std::vector<std::uint64_t>{7, 3, 7, 9});
  EXPECT_EQ(p.blocks(), (std::vector<std::uint32_t>{0, 1, 0, 2}));
  EXPECT_EQ(p.block_count(), 3u);
  const Partition coarse(std::vector<std::uint64_t>{1, 1, 1, 2});
  EXPECT_TRUE(p.refines(coarse));
  EXPECT_FALSE(coarse.refines(p));
}

TEST(Partition, MaximalCommonFunctionMatchesExhaustiveSearch) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    const auto a = random_labels(rng, n, 1 + static_cast<int>(rng() % 4));
    const auto b = random_labels(rng, n, 1 + static_cast<int>(rng() % 4));
    const Partition got = snfc::maximal_common_function(from_ints(a), from_ints(b));
    EXPECT_EQ(got, from_ints(oracle::finest_common_coarsening(a, b)));
    EXPECT_TRUE(from_ints(a).refines(got));
    EXPECT_TRUE(from_ints(b).refines(got));
  }
}

TEST(Partition, EntropyMatchesDirectFormula) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const auto labels = random_labels(rng, 1 + rng() % 30, 1 + static_cast<int>(rng() % 6));
    EXPECT_NEAR(snfc::entropy_uniform(from_ints(labels)), oracle::entropy_of_labels(labels), 1e-12);
  }
  EXPECT_DOUBLE_EQ(snfc::entropy_uniform(from_ints({0, 1, 2, 3})), 2.0);
}

TEST(InducedPartition, RejectsDependenceOutsideSubset) {
  const TabularFunction sum = oracle::scalar_linear({1, 1}, 2);
  EXPECT_THROW(snfc::induced_partition(sum, SourceSet::of({0})), Error);
  EXPECT_EQ(snfc::induced_partition(sum, SourceSet::of({0, 1})).block_count(), 2u);
  const TabularFunction first = oracle::scalar_linear({1, 0}, 3);
  EXPECT_EQ(snfc::induced_partition(first, SourceSet::of({0})).block_count(), 3u);
}

TEST(StrongDecomposition, ExistsForLinearFunctions) {
  const TabularFunction sum = oracle::scalar_linear({1, 2, 1}, 3);
  for (std::uint64_t bits = 1; bits < 8; ++bits) {
    const auto d = snfc::strong_decomposition_for(sum, SourceSet(bits));
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(d->on_subset.block_count(), 3u);
    EXPECT_EQ(d->lifted.domain_size(), 27u);
  }
  EXPECT_THROW(snfc::strong_decomposition_for(sum, SourceSet()), Error);
}

TEST(StrongDecomposition, AbsentForProductWithZero) {
  std::vector<std::uint32_t> table;
  for (std::uint32_t a = 0; a < 3; ++a) {
    for (std::uint32_t b = 0; b < 3; ++b) table.push_back((a * b) % 3);
  }
  const TabularFunction mul({Alphabet{3, 0}, Alphabet{3, 0}}, Alphabet{3, 0}, table);
  EXPECT_FALSE(snfc::strong_decomposition_for(mul, SourceSet::of({0})).has_value());
  EXPECT_TRUE(snfc::strong_decomposition_for(mul, SourceSet::of({0, 1})).has_value());
}

TEST(StrongDecomposition, ButterflyCutsFollowProfile) {
  const Network net = fixtures::butterfly_network();
  const TabularFunction product = fixtures::butterfly_product();
  const auto d = snfc::strong_decomposition(net, net.edge_set({"e1", "e2"}), product);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->i_set, SourceSet::of({0}));
  EXPECT_EQ(d->on_subset.block_count(), 2u);
}

TEST(EntropyPinned, FixesRemainingSourcesAtZero) {
  const TabularFunction sum = oracle::scalar_linear({1, 1, 1}, 3);
  EXPECT_NEAR(snfc::entropy_pinned(sum, SourceSet::of({0})), std::log2(3.0), 1e-12);
  EXPECT_NEAR(snfc::entropy_pinned(sum, SourceSet::of({0, 2})), std::log2(3.0), 1e-12);
  EXPECT_THROW(snfc::entropy_pinned(fixtures::butterfly_product(), SourceSet::of({0})), Error);
}

TEST(GeneralBound, ButterflyProductAtLevelOne) {
  const Network net = fixtures::butterfly_network();
  const auto b = snfc::general_upper_bound(net, fixtures::butterfly_product(), fixtures::butterfly_identity(), 1, 2);
  EXPECT_NEAR(b.value, 1.0, 1e-12);
  ASSERT_TRUE(b.cut.has_value());
  ASSERT_TRUE(b.wiretap.has_value());
  EXPECT_TRUE(b.wiretap->is_subset_of(*b.cut));
}

TEST(GeneralBound, DesignatedZerosDoNotAffectDomainCheck) {
  const Network net = fixtures::butterfly_network();
  const TabularFunction with_zeros = snfc::parse_tabular(
      "alphabets 2 2 / out 2\n0 0 -> 0\n0 1 -> 1\n1 0 -> 1\n1 1 -> 0\nzeros 0 0 / 0\n");
  const auto b = snfc::general_upper_bound(net, with_zeros, fixtures::butterfly_identity(), 1, 2);
  EXPECT_NEAR(b.value, 1.0, 1e-12);
}

TEST(GeneralBound, InputValidation) {
  const Network net = fixtures::butterfly_network();
  const TabularFunction product = fixtures::butterfly_product();
  EXPECT_THROW(snfc::general_upper_bound(net, product, product, -1, 2), Error);
  EXPECT_THROW(snfc::general_upper_bound(net, product, product, 1, 1), Error);
  EXPECT_THROW(snfc::general_upper_bound(net, oracle::scalar_linear({1}, 2), product, 1, 2), Error);
  EXPECT_THROW(snfc::general_upper_bound(net, product, oracle::scalar_linear({1, 1}, 3), 1, 2), Error);
  try {
    snfc::general_upper_bound(fixtures::relay_network(), oracle::scalar_linear({1, 1, 2}, 3),
                              oracle::scalar_linear({1, 1, 2}, 3), 1, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InstanceTooLarge);
  }
}

TEST(Theorem2Bound, NeedsDesignatedZeros) {
  const Network net = fixtures::butterfly_network();
  try {
    snfc::theorem2_upper_bound(net, fixtures::butterfly_product(), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingZeroElement);
  }
  const auto combined = snfc::combined_upper_bound(net, fixtures::butterfly_product(), fixtures::butterfly_identity(), 1, 2);
  EXPECT_FALSE(combined.theorem2.has_value());
  EXPECT_NEAR(combined.value, combined.general.value, 1e-12);
}

TEST(Theorem2Bound, LinearSumOnButterfly) {
  const Network net = fixtures::butterfly_network();
  const auto b = snfc::theorem2_upper_bound(net, oracle::scalar_linear({1, 1}, 2), 2);
  EXPECT_NEAR(b.value, 2.0, 1e-12);
}

TEST(ScalarLinearDegeneration, MatchesCutFormulas) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    const Network net = oracle::random_network(rng, 3, 8, 3);
    const long p = trial % 2 == 0 ? 2 : 3;
    std::vector<long> alpha;
    for (std::size_t j = 0; j < net.source_count(); ++j) alpha.push_back(1 + static_cast<long>(rng() % (p - 1)));
    const TabularFunction f = oracle::scalar_linear(alpha, p);
    const int r = static_cast<int>(rng() % 3);
    const auto q = static_cast<std::uint32_t>(p);
    const auto general = snfc::general_upper_bound(net, f, snfc::identity_function(f.inputs()), r, q);
    EXPECT_NEAR(general.value, oracle::min_valid_difference(net, r), 1e-9);
    const auto combined = snfc::combined_upper_bound(net, f, f, r, q);
    EXPECT_NEAR(combined.value, oracle::two_regime_value(net, r), 1e-9);
    EXPECT_NEAR(combined.general.value, oracle::full_cut_value(net, r), 1e-9);
    ASSERT_TRUE(combined.theorem2.has_value());
    EXPECT_LE(combined.value, combined.general.value + 1e-9);
    EXPECT_LE(combined.value, combined.theorem2->value + 1e-9);
  }
}

}  // namespace
