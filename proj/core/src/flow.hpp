#pragma once

#include <vector>

#include "snfc/network.hpp"

namespace snfc::detail {

/// Unit-capacity max-flow on the edge-split graph of a network.
///
/// Every network edge e becomes tail -> e_in -> e_out -> head where only the
/// middle arc has capacity 1. Edges flagged in `removed` are left out.
class SplitFlow {
 public:
  SplitFlow(const Network& net, const std::vector<char>& removed);

  void add_source_node(NodeId v);
  void add_source_edge(EdgeId e);
  void add_sink_node(NodeId v);
  void add_sink_edge(EdgeId e);

  /// Augments until no path remains or `limit` units are routed.
  int run(int limit);

  /// Unit arcs leaving the residual-reachable region of the super source.
  EdgeSet source_side_cut() const;
  /// Unit arcs entering the region that still reaches the super sink.
  EdgeSet sink_side_cut() const;
  /// Decomposes the current flow into edge-disjoint paths; consumes the flow.
  std::vector<Path> take_paths();

 private:
  struct Arc {
    int to;
    int cap;
    int residual;
    EdgeId edge;  // network edge for unit arcs, -1 otherwise
  };

  int add_arc(int from, int to, int cap, EdgeId edge);
  int edge_in(EdgeId e) const { return static_cast<int>(n_) + 2 * e; }
  int edge_out(EdgeId e) const { return static_cast<int>(n_) + 2 * e + 1; }
  std::vector<char> reach_from_source() const;
  std::vector<char> reach_to_sink() const;

  const Network* net_;
  std::size_t n_;
  int super_source_;
  int super_sink_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace snfc::detail
