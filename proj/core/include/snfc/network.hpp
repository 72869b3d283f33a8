#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace snfc {

using NodeId = int;
using EdgeId = int;

/// Sorted set of edge indices into a Network.
class EdgeSet {
 public:
  EdgeSet() = default;
  EdgeSet(std::vector<EdgeId> members);  // NOLINT(google-explicit-constructor)
  EdgeSet(std::initializer_list<EdgeId> members) : EdgeSet(std::vector<EdgeId>(members)) {}

  static EdgeSet from_mask(std::uint64_t mask);
  /// Bitmask view; every member must be below 64.
  std::uint64_t mask() const;

  const std::vector<EdgeId>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(EdgeId e) const noexcept;
  bool is_subset_of(const EdgeSet& other) const noexcept;
  EdgeSet united(const EdgeSet& other) const;
  EdgeSet minus(const EdgeSet& other) const;

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;
  /// Lexicographic order on the sorted member lists.
  friend auto operator<=>(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::vector<EdgeId> members_;
};

/// Set of source positions 0..s-1 (at most 64 sources).
class SourceSet {
 public:
  SourceSet() = default;
  explicit SourceSet(std::uint64_t bits) : bits_(bits) {}
  static SourceSet of(std::initializer_list<int> positions);

  std::uint64_t bits() const noexcept { return bits_; }
  bool contains(int i) const noexcept { return ((bits_ >> i) & 1u) != 0; }
  void insert(int i) noexcept { bits_ |= (std::uint64_t{1} << i); }
  bool empty() const noexcept { return bits_ == 0; }
  int size() const noexcept;
  bool is_subset_of(SourceSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }
  std::vector<int> positions() const;

  friend bool operator==(SourceSet, SourceSet) = default;
  friend auto operator<=>(SourceSet, SourceSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// (D_C, I_C, J_C) for an edge set C.
struct SourceProfile {
  SourceSet d_set;
  SourceSet i_set;
  SourceSet j_set;
};

struct Edge {
  std::string id;
  NodeId tail = 0;
  NodeId head = 0;
};

/// Unvalidated declaration list, as read from the text format.
struct NetworkDescription {
  struct EdgeDecl {
    std::string id;
    std::string tail;
    std::string head;
  };
  std::vector<std::string> sources;
  std::vector<std::string> sinks;
  std::vector<EdgeDecl> edges;
};

/// Directed acyclic multigraph with ordered sources and a sink.
///
/// A validated network has exactly one sink. Reversal produces a network
/// with the old sink as its only source and the old sources as sinks.
class Network {
 public:
  std::size_t node_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t source_count() const noexcept { return sources_.size(); }

  const std::string& node_name(NodeId v) const { return names_.at(static_cast<std::size_t>(v)); }
  std::optional<NodeId> find_node(std::string_view name) const;
  std::optional<EdgeId> find_edge(std::string_view id) const;
  /// Like find_node/find_edge but throw InvalidArgument when missing.
  NodeId node(std::string_view name) const;
  EdgeId edge_index(std::string_view id) const;

  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<NodeId>& sources() const noexcept { return sources_; }
  const std::vector<NodeId>& sinks() const noexcept { return sinks_; }
  /// The unique sink ρ.
  NodeId sink() const;
  /// Position of v in the source list, or -1.
  int source_index(NodeId v) const noexcept { return source_pos_[static_cast<std::size_t>(v)]; }

  const std::vector<EdgeId>& in_edges(NodeId v) const { return in_.at(static_cast<std::size_t>(v)); }
  const std::vector<EdgeId>& out_edges(NodeId v) const { return out_.at(static_cast<std::size_t>(v)); }
  const std::vector<NodeId>& topological_order() const noexcept { return topo_; }
  /// Edges sorted by the topological position of their tails (stable in edge index).
  const std::vector<EdgeId>& edges_in_topological_order() const noexcept { return edge_topo_; }

  std::vector<std::string> edge_ids(const EdgeSet& set) const;
  EdgeSet edge_set(const std::vector<std::string>& ids) const;
  SourceSet all_sources() const noexcept;

  NetworkDescription describe() const;

 private:
  friend Network validate_network(const NetworkDescription& raw);
  friend Network reverse_network(const Network& net);
  /// `names` fixes the node numbering for the listed names.
  static Network build(const NetworkDescription& raw, const std::vector<std::string>& names = {});

  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<NodeId> sources_;
  std::vector<NodeId> sinks_;
  std::vector<int> source_pos_;
  std::vector<std::vector<EdgeId>> in_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<NodeId> topo_;
  std::vector<EdgeId> edge_topo_;
};

Network validate_network(const NetworkDescription& raw);
NetworkDescription parse_network_description(std::string_view text);
Network parse_network(std::string_view text);
Network read_network_file(const std::string& path);
std::string format_network(const Network& net);

/// Flips every edge; sources and sinks swap roles. Node and edge indices are kept.
Network reverse_network(const Network& net);

/// Per-node flag: can the node reach the sink with `removed` edges deleted.
std::vector<char> nodes_reaching_sink(const Network& net, const std::vector<char>& removed);
SourceProfile source_profile(const Network& net, const EdgeSet& cut);

struct CutResult {
  int capacity = 0;
  EdgeSet witness;
};

using Path = std::vector<EdgeId>;
/// Node target or edge-set target for path and cut queries.
using CutTarget = std::variant<NodeId, EdgeSet>;

/// Minimum cut separating v from U, with the source-side witness.
CutResult mincut_node_to_node(const Network& net, const std::vector<NodeId>& sources, NodeId target);
/// Minimum cut separating the edges of W from D_W, with the source-side witness.
CutResult mincut_to_edgeset(const Network& net, const EdgeSet& wiretap);
std::vector<Path> edge_disjoint_paths(const Network& net, const std::vector<NodeId>& sources,
                                      const CutTarget& target, int count);

/// C_min: the smallest cut separating some source from the sink.
int min_cut_capacity(const Network& net);

/// Bitmask evaluation of source profiles for enumeration over edge subsets.
class CutProfiler {
 public:
  /// Requires at most 64 edges.
  explicit CutProfiler(const Network& net);

  std::uint64_t edge_upstream(EdgeId e) const noexcept { return upstream_[static_cast<std::size_t>(e)]; }
  std::uint64_t d_mask(std::uint64_t edges) const noexcept;
  std::uint64_t i_mask(std::uint64_t edges) const;

 private:
  const Network* net_;
  std::vector<std::uint64_t> upstream_;
  std::vector<NodeId> reverse_topo_;
};

}  // namespace snfc
