#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "snfc/error.hpp"
#include "snfc/network.hpp"

using snfc::EdgeSet;
using snfc::Error;
using snfc::ErrorCode;
using snfc::Network;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    snfc::parse_network(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ErrorCode::Parse;
}

TEST(NetworkParse, ReadsButterfly) {
  const Network net = fixtures::butterfly_network();
  EXPECT_EQ(net.source_count(), 2u);
  EXPECT_EQ(net.edge_count(), 9u);
  EXPECT_EQ(net.node_name(net.sink()), "rho");
  EXPECT_EQ(net.in_edges(net.sink()).size(), 2u);
  EXPECT_EQ(net.edge_ids({0, 4}), (std::vector<std::string>{"e1", "e5"}));
  EXPECT_EQ(net.edge_set({"e5", "e1"}), (EdgeSet{0, 4}));
}

TEST(NetworkParse, ValidationErrors) {
  EXPECT_EQ(code_of("source a\nsink t\nedge e1 a b\nedge e2 b a\nedge e3 b t\n"), ErrorCode::SourceHasInEdge);
  EXPECT_EQ(code_of("source a\nsink t\nedge e1 a b\nedge e2 b c\nedge e3 c b\nedge e4 b t\n"), ErrorCode::CycleDetected);
  EXPECT_EQ(code_of("source a\nsink t\nedge e1 a t\nedge e2 t b\n"), ErrorCode::SinkHasOutEdge);
  EXPECT_EQ(code_of("source a\nsink t\nedge e1 a t\nedge e2 a b\n"), ErrorCode::NodeCannotReachSink);
  EXPECT_EQ(code_of("source a\nsink t\nedge e1 a t\nedge e1 a t\n"), ErrorCode::DuplicateEdgeId);
  EXPECT_EQ(code_of("source a\nsink t\nsink u\nedge e1 a t\nedge e2 a u\n"), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of("source a\nsink t\nedge e1 a\n"), ErrorCode::Parse);
  EXPECT_EQ(code_of("bogus line\n"), ErrorCode::Parse);
}

TEST(NetworkParse, ParallelEdgesAndCommentsAreAccepted) {
  const Network net = snfc::parse_network("# two parallel links\nsource a\nsink t\nedge x a t # first\nedge y a t\n");
  EXPECT_EQ(net.edge_count(), 2u);
  EXPECT_EQ(snfc::min_cut_capacity(net), 2);
}

TEST(NetworkParse, FormatRoundTrips) {
  const Network net = fixtures::relay_network();
  const Network again = snfc::parse_network(snfc::format_network(net));
  EXPECT_EQ(snfc::format_network(again), snfc::format_network(net));
  EXPECT_EQ(again.edge_count(), net.edge_count());
}

TEST(NetworkOrder, TopologicalOrderRespectsEdges) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const Network net = oracle::random_network(rng, 3, 14);
    std::vector<std::size_t> pos(net.node_count());
    for (std::size_t i = 0; i < net.topological_order().size(); ++i) {
      pos[static_cast<std::size_t>(net.topological_order()[i])] = i;
    }
    for (const auto& e : net.edges()) {
      EXPECT_LT(pos[static_cast<std::size_t>(e.tail)], pos[static_cast<std::size_t>(e.head)]);
    }
    EXPECT_EQ(net.edges_in_topological_order().size(), net.edge_count());
  }
}

TEST(NetworkReverse, KeepsIndicesAndFlipsEdges) {
  const Network net = fixtures::relay_network();
  const Network rev = snfc::reverse_network(net);
  ASSERT_EQ(rev.edge_count(), net.edge_count());
  ASSERT_EQ(rev.node_count(), net.node_count());
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const auto& a = net.edge(static_cast<snfc::EdgeId>(e));
    const auto& b = rev.edge(static_cast<snfc::EdgeId>(e));
    EXPECT_EQ(a.id, b.id);
    EXPECT_EQ(a.tail, b.head);
    EXPECT_EQ(a.head, b.tail);
  }
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    EXPECT_EQ(net.node_name(static_cast<snfc::NodeId>(v)), rev.node_name(static_cast<snfc::NodeId>(v)));
  }
  ASSERT_EQ(rev.sources().size(), 1u);
  EXPECT_EQ(rev.sources().front(), net.sink());
  EXPECT_EQ(rev.sinks().size(), net.source_count());
}

TEST(SourceProfile, MatchesGraphSearch) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    const Network net = oracle::random_network(rng, 4, 12);
    const snfc::CutProfiler profiler(net);
    const std::uint64_t subsets = std::uint64_t{1} << net.edge_count();
    for (std::uint64_t mask = 0; mask < subsets; mask += 1 + rng() % 7) {
      const auto want = oracle::profile(net, mask);
      const auto got = snfc::source_profile(net, EdgeSet::from_mask(mask));
      EXPECT_EQ(got.d_set.bits(), want.d);
      EXPECT_EQ(got.i_set.bits(), want.i);
      EXPECT_EQ(got.j_set.bits(), want.d & ~want.i);
      EXPECT_EQ(profiler.d_mask(mask), want.d);
      EXPECT_EQ(profiler.i_mask(mask), want.i);
    }
  }
}

TEST(MinCut, WiretapCutMatchesEnumeration) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 80; ++trial) {
    const Network net = oracle::random_network(rng, 3, 11);
    for (int pick = 0; pick < 5; ++pick) {
      const std::uint64_t w = (rng() & ((std::uint64_t{1} << net.edge_count()) - 1)) | 1;
      const auto res = snfc::mincut_to_edgeset(net, EdgeSet::from_mask(w));
      EXPECT_EQ(res.capacity, oracle::mincut_size(net, w));
      EXPECT_EQ(static_cast<int>(res.witness.size()), res.capacity);
      const auto d = oracle::profile(net, w).d;
      EXPECT_TRUE(oracle::separates(net, res.witness.mask(), w, d));
    }
  }
}

TEST(MinCut, SourceToSinkMatchesDisjointPaths) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 80; ++trial) {
    const Network net = oracle::random_network(rng, 3, 12);
    int best = 1 << 30;
    for (snfc::NodeId s : net.sources()) {
      const auto cut = snfc::mincut_node_to_node(net, {s}, net.sink());
      best = std::min(best, cut.capacity);
      const auto paths = snfc::edge_disjoint_paths(net, {s}, net.sink(), cut.capacity);
      ASSERT_EQ(static_cast<int>(paths.size()), cut.capacity);
      std::vector<int> used(net.edge_count(), 0);
      for (const auto& path : paths) {
        ASSERT_FALSE(path.empty());
        EXPECT_EQ(net.edge(path.front()).tail, s);
        EXPECT_EQ(net.edge(path.back()).head, net.sink());
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          EXPECT_EQ(net.edge(path[i]).head, net.edge(path[i + 1]).tail);
        }
        for (auto e : path) EXPECT_EQ(used[static_cast<std::size_t>(e)]++, 0);
      }
      EXPECT_THROW(snfc::edge_disjoint_paths(net, {s}, net.sink(), cut.capacity + 1), Error);
    }
    EXPECT_EQ(snfc::min_cut_capacity(net), best);
  }
}

TEST(MinCut, FixtureCapacities) {
  EXPECT_EQ(snfc::min_cut_capacity(fixtures::butterfly_network()), 2);
  EXPECT_EQ(snfc::min_cut_capacity(fixtures::relay_network()), 3);
}

TEST(EdgeSetOps, SetAlgebra) {
  const EdgeSet a{1, 3, 5};
  const EdgeSet b{3, 4};
  EXPECT_EQ(a.united(b), (EdgeSet{1, 3, 4, 5}));
  EXPECT_EQ(a.minus(b), (EdgeSet{1, 5}));
  EXPECT_TRUE((EdgeSet{3}).is_subset_of(b));
  EXPECT_FALSE(a.is_subset_of(b));
  EXPECT_EQ(EdgeSet::from_mask(a.mask()), a);
  EXPECT_EQ((EdgeSet{5, 1, 3}), a);
}

}  // namespace
