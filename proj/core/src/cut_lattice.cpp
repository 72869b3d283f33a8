#include "snfc/cut_lattice.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "flow.hpp"
#include "snfc/error.hpp"

namespace snfc {

namespace {

std::vector<char> edge_flags(const Network& net, const EdgeSet& set) {
  std::vector<char> flags(net.edge_count(), 0);
  for (EdgeId e : set) flags[static_cast<std::size_t>(e)] = 1;
  return flags;
}

SourceSet unreachable_sources(const Network& net, const std::vector<char>& reach) {
  SourceSet out;
  for (std::size_t i = 0; i < net.source_count(); ++i) {
    if (!reach[static_cast<std::size_t>(net.sources()[i])]) out.insert(static_cast<int>(i));
  }
  return out;
}

void validate_target(const Network& net, const GfMatrix& target) {
  if (target.rows() != net.source_count()) {
    throw Error(ErrorCode::ShapeMismatch, "target matrix needs one row per source");
  }
  for (std::size_t r = 0; r < target.rows(); ++r) {
    if (target.row_is_zero(r)) {
      throw Error(ErrorCode::InvalidArgument, "target matrix has an all-zero row");
    }
  }
}

// Sink-side minimum cut separating ρ from `nodes` in G_W.
EdgeSet top_of_nodes(const Network& net, const std::vector<char>& removed, const std::vector<NodeId>& nodes) {
  if (nodes.empty()) return {};
  detail::SplitFlow flow(net, removed);
  for (NodeId v : nodes) flow.add_source_node(v);
  flow.add_sink_node(net.sink());
  flow.run(static_cast<int>(net.edge_count()) + 1);
  return flow.sink_side_cut();
}

bool better(const Rational& value, const EdgeSet& wiretap, const EdgeSet& cut, const BoundValue& best, bool have) {
  if (!have) return true;
  if (value != best.value) return value < best.value;
  if (wiretap != best.wiretap) return wiretap < best.wiretap;
  return cut < best.cut;
}

void for_each_subset_up_to(std::size_t n, int level, std::vector<EdgeId>& current, EdgeId start,
                           const std::function<void(const std::vector<EdgeId>&)>& visit) {
  visit(current);
  if (static_cast<int>(current.size()) == level) return;
  for (auto e = static_cast<std::size_t>(start); e < n; ++e) {
    current.push_back(static_cast<EdgeId>(e));
    for_each_subset_up_to(n, level, current, static_cast<EdgeId>(e + 1), visit);
    current.pop_back();
  }
}

}  // namespace

EdgeSet primary_mincut_source_side(const Network& net, const EdgeSet& wiretap) {
  return mincut_to_edgeset(net, wiretap).witness;
}

EdgeSet primary_mincut_sink_side(const Network& net, const EdgeSet& wiretap, const EdgeSet& cut) {
  const auto removed = edge_flags(net, wiretap);
  const auto in_region = nodes_reaching_sink(net, removed);
  const auto after = nodes_reaching_sink(net, edge_flags(net, wiretap.united(cut)));
  std::vector<NodeId> region;
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    if (in_region[v] && !after[v]) region.push_back(static_cast<NodeId>(v));
  }
  return top_of_nodes(net, removed, region);
}

PrimaryWiretapFamily enumerate_primary_wiretaps(const Network& net, int level) {
  if (level < 0) throw Error(ErrorCode::InvalidArgument, "security level must be nonnegative");
  if (static_cast<std::size_t>(level) > net.edge_count()) {
    throw Error(ErrorCode::LevelTooLarge, "security level exceeds the number of edges");
  }
  std::set<EdgeSet> bottoms;
  std::vector<EdgeId> current;
  for_each_subset_up_to(net.edge_count(), level, current, 0, [&](const std::vector<EdgeId>& w) {
    bottoms.insert(primary_mincut_source_side(net, EdgeSet(w)));
  });
  PrimaryWiretapFamily fam;
  fam.level = level;
  fam.members.assign(bottoms.begin(), bottoms.end());
  for (const auto& w : fam.members) {
    if (static_cast<int>(w.size()) == level) fam.exact_members.push_back(w);
  }
  return fam;
}

PrimaryGlobalCutFamily primary_global_cuts(const Network& net, const EdgeSet& wiretap, const LatticeLimits& limits) {
  const auto removed = edge_flags(net, wiretap);
  const auto reach = nodes_reaching_sink(net, removed);
  const NodeId sink = net.sink();
  const SourceSet d_w = source_profile(net, wiretap).d_set;

  std::vector<NodeId> required;
  std::vector<NodeId> free_nodes;
  std::size_t region_size = 0;
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    if (!reach[v]) continue;
    ++region_size;
    const auto node = static_cast<NodeId>(v);
    if (node == sink) continue;
    const int pos = net.source_index(node);
    if (pos >= 0 && d_w.contains(pos)) {
      required.push_back(node);
    } else {
      free_nodes.push_back(node);
    }
  }
  if (region_size > static_cast<std::size_t>(limits.max_region_nodes)) {
    throw Error(ErrorCode::InstanceTooLarge, "residual network has " + std::to_string(region_size) +
                                                 " nodes reaching the sink; limit is " +
                                                 std::to_string(limits.max_region_nodes));
  }

  const std::size_t u = free_nodes.size();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> intervals;
  std::map<EdgeSet, SourceSet> tops;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << u); ++mask) {
    bool covered = false;
    for (const auto& [lo, hi] : intervals) {
      if ((lo & ~mask) == 0 && (mask & ~hi) == 0) {
        covered = true;
        break;
      }
    }
    if (covered) continue;

    std::vector<NodeId> nodes = required;
    for (std::size_t b = 0; b < u; ++b) {
      if ((mask >> b) & 1u) nodes.push_back(free_nodes[b]);
    }
    const EdgeSet top = top_of_nodes(net, removed, nodes);
    const auto after = nodes_reaching_sink(net, edge_flags(net, wiretap.united(top)));
    std::uint32_t closure = 0;
    for (std::size_t b = 0; b < u; ++b) {
      if (!after[static_cast<std::size_t>(free_nodes[b])]) closure |= std::uint32_t{1} << b;
    }
    intervals.emplace_back(mask, closure);

    const SourceSet i_set = unreachable_sources(net, after);
    if (!i_set.empty() && d_w.is_subset_of(i_set)) tops.emplace(top, i_set);
  }

  PrimaryGlobalCutFamily fam;
  fam.wiretap = wiretap;
  for (auto& [cut, i_set] : tops) fam.members.push_back({cut, i_set});
  return fam;
}

PrimaryGlobalCutFamily primary_global_cuts_oracle(const Network& net, const EdgeSet& wiretap,
                                                  const LatticeLimits& limits) {
  if (net.edge_count() > 64) throw Error(ErrorCode::InstanceTooLarge, "oracle needs at most 64 edges");
  std::vector<EdgeId> residual_edges;
  for (EdgeId e = 0; e < static_cast<EdgeId>(net.edge_count()); ++e) {
    if (!wiretap.contains(e)) residual_edges.push_back(e);
  }
  if (residual_edges.size() > static_cast<std::size_t>(limits.max_edges)) {
    throw Error(ErrorCode::InstanceTooLarge, "residual network has " + std::to_string(residual_edges.size()) +
                                                 " edges; oracle limit is " + std::to_string(limits.max_edges));
  }
  const auto removed = edge_flags(net, wiretap);
  const auto base_reach = nodes_reaching_sink(net, removed);
  const SourceSet d_w = source_profile(net, wiretap).d_set;
  const std::uint64_t w_mask = wiretap.mask();

  std::vector<NodeId> reverse_topo(net.topological_order().rbegin(), net.topological_order().rend());
  std::vector<char> reach(net.node_count());
  std::set<std::vector<char>> seen_regions;
  std::map<EdgeSet, SourceSet> tops;

  const std::size_t m = residual_edges.size();
  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << m); ++sub) {
    std::uint64_t cut = w_mask;
    for (std::uint64_t b = sub; b != 0; b &= b - 1) {
      cut |= std::uint64_t{1} << residual_edges[static_cast<std::size_t>(std::countr_zero(b))];
    }
    std::fill(reach.begin(), reach.end(), 0);
    reach[static_cast<std::size_t>(net.sink())] = 1;
    for (NodeId v : reverse_topo) {
      auto& r = reach[static_cast<std::size_t>(v)];
      if (r) continue;
      for (EdgeId e : net.out_edges(v)) {
        if (((cut >> e) & 1u) == 0 && reach[static_cast<std::size_t>(net.edge(e).head)]) {
          r = 1;
          break;
        }
      }
    }
    const SourceSet i_set = unreachable_sources(net, reach);
    if (i_set.empty() || !d_w.is_subset_of(i_set)) continue;

    std::vector<char> region(net.node_count(), 0);
    for (std::size_t v = 0; v < net.node_count(); ++v) region[v] = static_cast<char>(base_reach[v] && !reach[v]);
    if (!seen_regions.insert(region).second) continue;

    std::vector<NodeId> nodes;
    for (std::size_t v = 0; v < net.node_count(); ++v) {
      if (region[v]) nodes.push_back(static_cast<NodeId>(v));
    }
    const EdgeSet top = top_of_nodes(net, removed, nodes);
    const auto after = nodes_reaching_sink(net, edge_flags(net, wiretap.united(top)));
    tops.emplace(top, unreachable_sources(net, after));
  }

  PrimaryGlobalCutFamily fam;
  fam.wiretap = wiretap;
  for (auto& [c, i_set] : tops) fam.members.push_back({c, i_set});
  return fam;
}

std::size_t row_rank(const GfMatrix& target, SourceSet rows) {
  std::vector<std::size_t> idx;
  for (int p : rows.positions()) idx.push_back(static_cast<std::size_t>(p));
  return rank(target.select_rows(idx));
}

std::optional<Rational> linear_pair_value(const Network& net, const GfMatrix& target, const EdgeSet& wiretap,
                                          const EdgeSet& cut) {
  if (!wiretap.is_subset_of(cut)) return std::nullopt;
  const SourceSet i_set = source_profile(net, cut).i_set;
  const SourceSet d_w = source_profile(net, wiretap).d_set;
  if (i_set.empty() || !d_w.is_subset_of(i_set)) return std::nullopt;
  const auto rk = row_rank(target, i_set);
  if (rk == 0) return std::nullopt;
  return Rational(static_cast<std::int64_t>(cut.size() - wiretap.size()), static_cast<std::int64_t>(rk));
}

BoundValue omega(const Network& net, const EdgeSet& wiretap, const GfMatrix& target, const LatticeLimits& limits) {
  validate_target(net, target);
  const PrimaryGlobalCutFamily fam = primary_global_cuts(net, wiretap, limits);
  BoundValue best;
  bool have = false;
  for (const auto& member : fam.members) {
    const Rational value(static_cast<std::int64_t>(member.cut.size()),
                         static_cast<std::int64_t>(row_rank(target, member.i_set)));
    const EdgeSet full = member.cut.united(wiretap);
    if (better(value, wiretap, full, best, have)) {
      best = {value, wiretap, full};
      have = true;
    }
  }
  if (!have) throw Error(ErrorCode::NotACutSet, "no global cut found for the wiretap set");
  return best;
}

BoundValue algorithm2_bound(const Network& net, const GfMatrix& target, int level, const LatticeLimits& limits) {
  validate_target(net, target);
  const PrimaryWiretapFamily fam = enumerate_primary_wiretaps(net, level);
  BoundValue best;
  bool have = false;
  for (const auto& w : fam.members) {
    const BoundValue v = omega(net, w, target, limits);
    if (better(v.value, v.wiretap, v.cut, best, have)) {
      best = v;
      have = true;
    }
  }
  return best;
}

BoundValue bruteforce_linear_bound(const Network& net, const GfMatrix& target, int level,
                                   const LatticeLimits& limits) {
  validate_target(net, target);
  if (level < 0) throw Error(ErrorCode::InvalidArgument, "security level must be nonnegative");
  const std::size_t m = net.edge_count();
  if (m > static_cast<std::size_t>(limits.max_edges) || m > 63) {
    throw Error(ErrorCode::InstanceTooLarge, "network has " + std::to_string(m) + " edges; enumeration limit is " +
                                                 std::to_string(limits.max_edges));
  }
  const CutProfiler prof(net);
  std::unordered_map<std::uint64_t, std::size_t> rank_cache;
  BoundValue best;
  bool have = false;
  std::vector<EdgeId> eligible;
  for (std::uint64_t c = 1; c < (std::uint64_t{1} << m); ++c) {
    const std::uint64_t i_mask = prof.i_mask(c);
    if (i_mask == 0) continue;
    auto it = rank_cache.find(i_mask);
    if (it == rank_cache.end()) it = rank_cache.emplace(i_mask, row_rank(target, SourceSet(i_mask))).first;
    eligible.clear();
    for (std::uint64_t b = c; b != 0; b &= b - 1) {
      const EdgeId e = std::countr_zero(b);
      if ((prof.edge_upstream(e) & ~i_mask) == 0) eligible.push_back(e);
    }
    const auto w = std::min<std::size_t>(static_cast<std::size_t>(level), eligible.size());
    const Rational value(std::popcount(c) - static_cast<std::int64_t>(w), static_cast<std::int64_t>(it->second));
    if (have && value > best.value) continue;
    EdgeSet wiretap(std::vector<EdgeId>(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(w)));
    EdgeSet cut = EdgeSet::from_mask(c);
    if (better(value, wiretap, cut, best, have)) {
      best = {value, std::move(wiretap), std::move(cut)};
      have = true;
    }
  }
  if (!have) throw Error(ErrorCode::NotACutSet, "network has no cut set");
  return best;
}

}  // namespace snfc
