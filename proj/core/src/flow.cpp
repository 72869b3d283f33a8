#include "flow.hpp"

#include <limits>
#include <queue>

namespace snfc::detail {

namespace {
constexpr int kInfinite = std::numeric_limits<int>::max() / 4;
}

SplitFlow::SplitFlow(const Network& net, const std::vector<char>& removed)
    : net_(&net), n_(net.node_count()) {
  const int total = static_cast<int>(n_ + 2 * net.edge_count() + 2);
  super_source_ = total - 2;
  super_sink_ = total - 1;
  adj_.assign(static_cast<std::size_t>(total), {});
  for (EdgeId e = 0; e < static_cast<EdgeId>(net.edge_count()); ++e) {
    if (!removed.empty() && removed[static_cast<std::size_t>(e)]) continue;
    const Edge& ed = net.edge(e);
    add_arc(ed.tail, edge_in(e), kInfinite, -1);
    add_arc(edge_in(e), edge_out(e), 1, e);
    add_arc(edge_out(e), ed.head, kInfinite, -1);
  }
}

int SplitFlow::add_arc(int from, int to, int cap, EdgeId edge) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, cap, cap, edge});
  arcs_.push_back({from, 0, 0, -1});
  adj_[static_cast<std::size_t>(from)].push_back(id);
  adj_[static_cast<std::size_t>(to)].push_back(id + 1);
  return id;
}

void SplitFlow::add_source_node(NodeId v) { add_arc(super_source_, v, kInfinite, -1); }
void SplitFlow::add_source_edge(EdgeId e) { add_arc(super_source_, edge_in(e), kInfinite, -1); }
void SplitFlow::add_sink_node(NodeId v) { add_arc(v, super_sink_, kInfinite, -1); }
void SplitFlow::add_sink_edge(EdgeId e) { add_arc(edge_out(e), super_sink_, kInfinite, -1); }

int SplitFlow::run(int limit) {
  int flow = 0;
  std::vector<int> via(adj_.size());
  while (flow < limit) {
    std::fill(via.begin(), via.end(), -1);
    std::queue<int> queue;
    queue.push(super_source_);
    via[static_cast<std::size_t>(super_source_)] = -2;
    while (!queue.empty() && via[static_cast<std::size_t>(super_sink_)] == -1) {
      const int u = queue.front();
      queue.pop();
      for (int a : adj_[static_cast<std::size_t>(u)]) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.residual > 0 && via[static_cast<std::size_t>(arc.to)] == -1) {
          via[static_cast<std::size_t>(arc.to)] = a;
          queue.push(arc.to);
        }
      }
    }
    if (via[static_cast<std::size_t>(super_sink_)] == -1) break;
    // Every augmenting path crosses a unit arc, so one unit is pushed.
    for (int v = super_sink_; v != super_source_;) {
      const int a = via[static_cast<std::size_t>(v)];
      arcs_[static_cast<std::size_t>(a)].residual -= 1;
      arcs_[static_cast<std::size_t>(a ^ 1)].residual += 1;
      v = arcs_[static_cast<std::size_t>(a ^ 1)].to;
    }
    ++flow;
  }
  return flow;
}

std::vector<char> SplitFlow::reach_from_source() const {
  std::vector<char> seen(adj_.size(), 0);
  std::queue<int> queue;
  queue.push(super_source_);
  seen[static_cast<std::size_t>(super_source_)] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    for (int a : adj_[static_cast<std::size_t>(u)]) {
      const Arc& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.residual > 0 && !seen[static_cast<std::size_t>(arc.to)]) {
        seen[static_cast<std::size_t>(arc.to)] = 1;
        queue.push(arc.to);
      }
    }
  }
  return seen;
}

std::vector<char> SplitFlow::reach_to_sink() const {
  std::vector<char> seen(adj_.size(), 0);
  std::queue<int> queue;
  queue.push(super_sink_);
  seen[static_cast<std::size_t>(super_sink_)] = 1;
  while (!queue.empty()) {
    const int w = queue.front();
    queue.pop();
    for (int a : adj_[static_cast<std::size_t>(w)]) {
      // arcs_[a ^ 1] runs from arcs_[a].to into w.
      const Arc& back = arcs_[static_cast<std::size_t>(a ^ 1)];
      const int u = arcs_[static_cast<std::size_t>(a)].to;
      if (back.residual > 0 && !seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        queue.push(u);
      }
    }
  }
  return seen;
}

EdgeSet SplitFlow::source_side_cut() const {
  const auto seen = reach_from_source();
  std::vector<EdgeId> cut;
  for (const Arc& arc : arcs_) {
    if (arc.edge < 0) continue;
    if (seen[static_cast<std::size_t>(edge_in(arc.edge))] && !seen[static_cast<std::size_t>(edge_out(arc.edge))]) {
      cut.push_back(arc.edge);
    }
  }
  return EdgeSet(std::move(cut));
}

EdgeSet SplitFlow::sink_side_cut() const {
  const auto seen = reach_to_sink();
  std::vector<EdgeId> cut;
  for (const Arc& arc : arcs_) {
    if (arc.edge < 0) continue;
    if (!seen[static_cast<std::size_t>(edge_in(arc.edge))] && seen[static_cast<std::size_t>(edge_out(arc.edge))]) {
      cut.push_back(arc.edge);
    }
  }
  return EdgeSet(std::move(cut));
}

std::vector<Path> SplitFlow::take_paths() {
  std::vector<Path> paths;
  auto flow_on = [&](int a) {
    const Arc& arc = arcs_[static_cast<std::size_t>(a)];
    return arc.cap - arc.residual;
  };
  for (;;) {
    int u = super_source_;
    Path path;
    bool moved = true;
    while (u != super_sink_ && moved) {
      moved = false;
      for (int a : adj_[static_cast<std::size_t>(u)]) {
        if ((a & 1) != 0 || flow_on(a) <= 0) continue;
        Arc& arc = arcs_[static_cast<std::size_t>(a)];
        arc.residual += 1;
        arcs_[static_cast<std::size_t>(a ^ 1)].residual -= 1;
        if (arc.edge >= 0) path.push_back(arc.edge);
        u = arc.to;
        moved = true;
        break;
      }
    }
    if (u != super_sink_) break;
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace snfc::detail
