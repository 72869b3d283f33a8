#include "snfc/network.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "flow.hpp"
#include "snfc/error.hpp"

namespace snfc {

EdgeSet::EdgeSet(std::vector<EdgeId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

EdgeSet EdgeSet::from_mask(std::uint64_t mask) {
  std::vector<EdgeId> out;
  while (mask != 0) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  EdgeSet s;
  s.members_ = std::move(out);
  return s;
}

std::uint64_t EdgeSet::mask() const {
  std::uint64_t m = 0;
  for (EdgeId e : members_) {
    if (e < 0 || e >= 64) throw Error(ErrorCode::InstanceTooLarge, "edge index exceeds bitmask width");
    m |= std::uint64_t{1} << e;
  }
  return m;
}

bool EdgeSet::contains(EdgeId e) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), e);
}

bool EdgeSet::is_subset_of(const EdgeSet& other) const noexcept {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

EdgeSet EdgeSet::united(const EdgeSet& other) const {
  std::vector<EdgeId> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out));
  return EdgeSet(std::move(out));
}

EdgeSet EdgeSet::minus(const EdgeSet& other) const {
  std::vector<EdgeId> out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                      std::back_inserter(out));
  return EdgeSet(std::move(out));
}

SourceSet SourceSet::of(std::initializer_list<int> positions) {
  SourceSet s;
  for (int p : positions) s.insert(p);
  return s;
}

int SourceSet::size() const noexcept { return std::popcount(bits_); }

std::vector<int> SourceSet::positions() const {
  std::vector<int> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

std::optional<NodeId> Network::find_node(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<NodeId>(i);
  }
  return std::nullopt;
}

std::optional<EdgeId> Network::find_edge(std::string_view id) const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].id == id) return static_cast<EdgeId>(i);
  }
  return std::nullopt;
}

NodeId Network::node(std::string_view name) const {
  if (auto v = find_node(name)) return *v;
  throw Error(ErrorCode::InvalidArgument, "unknown node '" + std::string(name) + "'");
}

EdgeId Network::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw Error(ErrorCode::InvalidArgument, "unknown edge '" + std::string(id) + "'");
}

NodeId Network::sink() const {
  if (sinks_.size() != 1) throw Error(ErrorCode::InvalidArgument, "network does not have a unique sink");
  return sinks_.front();
}

std::vector<std::string> Network::edge_ids(const EdgeSet& set) const {
  std::vector<std::string> out;
  for (EdgeId e : set) out.push_back(edge(e).id);
  return out;
}

EdgeSet Network::edge_set(const std::vector<std::string>& ids) const {
  std::vector<EdgeId> out;
  for (const auto& id : ids) out.push_back(edge_index(id));
  return EdgeSet(std::move(out));
}

SourceSet Network::all_sources() const noexcept {
  const auto s = sources_.size();
  return SourceSet(s >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << s) - 1);
}

NetworkDescription Network::describe() const {
  NetworkDescription d;
  for (NodeId v : sources_) d.sources.push_back(names_[static_cast<std::size_t>(v)]);
  for (NodeId v : sinks_) d.sinks.push_back(names_[static_cast<std::size_t>(v)]);
  for (const Edge& e : edges_) {
    d.edges.push_back({e.id, names_[static_cast<std::size_t>(e.tail)], names_[static_cast<std::size_t>(e.head)]});
  }
  return d;
}

Network Network::build(const NetworkDescription& raw, const std::vector<std::string>& names) {
  Network net;
  std::map<std::string, NodeId> index;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = index.emplace(name, static_cast<NodeId>(net.names_.size()));
    if (inserted) net.names_.push_back(name);
    return it->second;
  };
  for (const auto& name : names) intern(name);
  for (const auto& s : raw.sources) intern(s);
  for (const auto& e : raw.edges) {
    intern(e.tail);
    intern(e.head);
  }
  for (const auto& t : raw.sinks) intern(t);

  std::set<std::string> seen_edges;
  for (const auto& e : raw.edges) {
    if (!seen_edges.insert(e.id).second) throw Error(ErrorCode::DuplicateEdgeId, "duplicate edge id '" + e.id + "'");
    net.edges_.push_back({e.id, index.at(e.tail), index.at(e.head)});
  }
  std::set<NodeId> seen_sources;
  for (const auto& s : raw.sources) {
    const NodeId v = index.at(s);
    if (!seen_sources.insert(v).second) throw Error(ErrorCode::Parse, "source '" + s + "' declared twice");
    net.sources_.push_back(v);
  }
  for (const auto& t : raw.sinks) net.sinks_.push_back(index.at(t));

  const std::size_t n = net.names_.size();
  net.source_pos_.assign(n, -1);
  for (std::size_t i = 0; i < net.sources_.size(); ++i) {
    net.source_pos_[static_cast<std::size_t>(net.sources_[i])] = static_cast<int>(i);
  }
  net.in_.assign(n, {});
  net.out_.assign(n, {});
  for (std::size_t e = 0; e < net.edges_.size(); ++e) {
    net.out_[static_cast<std::size_t>(net.edges_[e].tail)].push_back(static_cast<EdgeId>(e));
    net.in_[static_cast<std::size_t>(net.edges_[e].head)].push_back(static_cast<EdgeId>(e));
  }

  // Kahn's algorithm, smallest node index first for determinism.
  std::vector<int> indeg(n, 0);
  for (const auto& e : net.edges_) ++indeg[static_cast<std::size_t>(e.head)];
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.push(static_cast<NodeId>(v));
  }
  while (!ready.empty()) {
    const NodeId v = ready.top();
    ready.pop();
    net.topo_.push_back(v);
    for (EdgeId e : net.out_[static_cast<std::size_t>(v)]) {
      const auto h = static_cast<std::size_t>(net.edges_[static_cast<std::size_t>(e)].head);
      if (--indeg[h] == 0) ready.push(static_cast<NodeId>(h));
    }
  }
  if (net.topo_.size() != n) throw Error(ErrorCode::CycleDetected, "network contains a directed cycle");
  for (NodeId v : net.topo_) {
    for (EdgeId e : net.out_[static_cast<std::size_t>(v)]) net.edge_topo_.push_back(e);
  }
  return net;
}

Network validate_network(const NetworkDescription& raw) {
  if (raw.sources.empty()) throw Error(ErrorCode::InvalidArgument, "network declares no source");
  if (raw.sinks.size() != 1) throw Error(ErrorCode::InvalidArgument, "network must declare exactly one sink");
  if (raw.sources.size() > 64) throw Error(ErrorCode::InstanceTooLarge, "at most 64 sources are supported");
  for (const auto& s : raw.sources) {
    if (s == raw.sinks.front()) throw Error(ErrorCode::InvalidArgument, "node '" + s + "' is both source and sink");
  }
  std::set<std::string> ids;
  for (const auto& e : raw.edges) {
    if (!ids.insert(e.id).second) throw Error(ErrorCode::DuplicateEdgeId, "duplicate edge id '" + e.id + "'");
  }
  const std::string& sink = raw.sinks.front();
  for (const auto& e : raw.edges) {
    if (e.tail == sink) throw Error(ErrorCode::SinkHasOutEdge, "sink has outgoing edge '" + e.id + "'");
  }
  const std::set<std::string> sources(raw.sources.begin(), raw.sources.end());
  for (const auto& e : raw.edges) {
    if (sources.count(e.head) != 0) {
      throw Error(ErrorCode::SourceHasInEdge, "source '" + e.head + "' has incoming edge '" + e.id + "'");
    }
  }
  Network net = Network::build(raw);
  const auto reach = nodes_reaching_sink(net, {});
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    if (!reach[v]) {
      throw Error(ErrorCode::NodeCannotReachSink, "node '" + net.node_name(static_cast<NodeId>(v)) +
                                                      "' has no path to the sink");
    }
  }
  return net;
}

NetworkDescription parse_network_description(std::string_view text) {
  NetworkDescription d;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream tok(line);
    std::vector<std::string> words;
    for (std::string w; tok >> w;) words.push_back(w);
    if (words.empty()) continue;
    const auto where = "line " + std::to_string(lineno) + ": ";
    if (words[0] == "source" && words.size() == 2) {
      d.sources.push_back(words[1]);
    } else if (words[0] == "sink" && words.size() == 2) {
      d.sinks.push_back(words[1]);
    } else if (words[0] == "edge" && words.size() == 4) {
      d.edges.push_back({words[1], words[2], words[3]});
    } else {
      throw Error(ErrorCode::Parse, where + "expected 'source <id>', 'sink <id>' or 'edge <eid> <tail> <head>'");
    }
  }
  return d;
}

Network parse_network(std::string_view text) { return validate_network(parse_network_description(text)); }

Network read_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open network file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

std::string format_network(const Network& net) {
  std::ostringstream out;
  for (NodeId v : net.sources()) out << "source " << net.node_name(v) << '\n';
  for (NodeId v : net.sinks()) out << "sink " << net.node_name(v) << '\n';
  for (const Edge& e : net.edges()) {
    out << "edge " << e.id << ' ' << net.node_name(e.tail) << ' ' << net.node_name(e.head) << '\n';
  }
  return out.str();
}

Network reverse_network(const Network& net) {
  NetworkDescription d = net.describe();
  std::swap(d.sources, d.sinks);
  for (auto& e : d.edges) std::swap(e.tail, e.head);
  return Network::build(d, net.names_);
}

std::vector<char> nodes_reaching_sink(const Network& net, const std::vector<char>& removed) {
  std::vector<char> reach(net.node_count(), 0);
  for (NodeId t : net.sinks()) reach[static_cast<std::size_t>(t)] = 1;
  const auto& topo = net.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const auto v = static_cast<std::size_t>(*it);
    if (reach[v]) continue;
    for (EdgeId e : net.out_edges(*it)) {
      if (!removed.empty() && removed[static_cast<std::size_t>(e)]) continue;
      if (reach[static_cast<std::size_t>(net.edge(e).head)]) {
        reach[v] = 1;
        break;
      }
    }
  }
  return reach;
}

SourceProfile source_profile(const Network& net, const EdgeSet& cut) {
  std::vector<char> removed(net.edge_count(), 0);
  for (EdgeId e : cut) removed[static_cast<std::size_t>(e)] = 1;
  const auto reach = nodes_reaching_sink(net, removed);

  // Nodes upstream of some edge of the cut.
  std::vector<char> upstream(net.node_count(), 0);
  for (EdgeId e : cut) upstream[static_cast<std::size_t>(net.edge(e).tail)] = 1;
  const auto& topo = net.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const auto v = static_cast<std::size_t>(*it);
    for (EdgeId e : net.out_edges(*it)) {
      if (upstream[static_cast<std::size_t>(net.edge(e).head)]) upstream[v] = 1;
    }
  }
  SourceProfile p;
  for (std::size_t i = 0; i < net.source_count(); ++i) {
    const auto v = static_cast<std::size_t>(net.sources()[i]);
    if (upstream[v]) p.d_set.insert(static_cast<int>(i));
    if (!reach[v]) p.i_set.insert(static_cast<int>(i));
  }
  p.j_set = SourceSet(p.d_set.bits() & ~p.i_set.bits());
  return p;
}

CutResult mincut_node_to_node(const Network& net, const std::vector<NodeId>& sources, NodeId target) {
  for (NodeId u : sources) {
    if (u == target) throw Error(ErrorCode::InvalidArgument, "target node is among the sources");
  }
  detail::SplitFlow flow(net, {});
  for (NodeId u : sources) flow.add_source_node(u);
  flow.add_sink_node(target);
  CutResult out;
  out.capacity = flow.run(static_cast<int>(net.edge_count()) + 1);
  out.witness = flow.source_side_cut();
  return out;
}

CutResult mincut_to_edgeset(const Network& net, const EdgeSet& wiretap) {
  if (wiretap.empty()) return {};
  const SourceProfile prof = source_profile(net, wiretap);
  detail::SplitFlow flow(net, {});
  for (int i : prof.d_set.positions()) flow.add_source_node(net.sources()[static_cast<std::size_t>(i)]);
  for (EdgeId e : wiretap) flow.add_sink_edge(e);
  CutResult out;
  out.capacity = flow.run(static_cast<int>(wiretap.size()));
  out.witness = flow.source_side_cut();
  return out;
}

std::vector<Path> edge_disjoint_paths(const Network& net, const std::vector<NodeId>& sources,
                                      const CutTarget& target, int count) {
  if (count < 0) throw Error(ErrorCode::InvalidArgument, "negative path count");
  if (count == 0) return {};
  detail::SplitFlow flow(net, {});
  for (NodeId u : sources) flow.add_source_node(u);
  if (const auto* v = std::get_if<NodeId>(&target)) {
    for (NodeId u : sources) {
      if (u == *v) throw Error(ErrorCode::InvalidArgument, "target node is among the sources");
    }
    flow.add_sink_node(*v);
  } else {
    for (EdgeId e : std::get<EdgeSet>(target)) flow.add_sink_edge(e);
  }
  const int got = flow.run(count);
  if (got < count) {
    throw Error(ErrorCode::InsufficientConnectivity,
                "only " + std::to_string(got) + " edge-disjoint paths exist, " + std::to_string(count) + " requested");
  }
  return flow.take_paths();
}

int min_cut_capacity(const Network& net) {
  int best = -1;
  for (NodeId s : net.sources()) {
    const int c = mincut_node_to_node(net, {s}, net.sink()).capacity;
    if (best < 0 || c < best) best = c;
  }
  return best < 0 ? 0 : best;
}

CutProfiler::CutProfiler(const Network& net) : net_(&net), upstream_(net.edge_count(), 0) {
  if (net.edge_count() > 64) throw Error(ErrorCode::InstanceTooLarge, "bitmask enumeration needs at most 64 edges");
  // Sources upstream of each node, accumulated in topological order.
  std::vector<std::uint64_t> node_up(net.node_count(), 0);
  for (NodeId v : net.topological_order()) {
    const int pos = net.source_index(v);
    if (pos >= 0) node_up[static_cast<std::size_t>(v)] |= std::uint64_t{1} << pos;
    for (EdgeId e : net.out_edges(v)) {
      upstream_[static_cast<std::size_t>(e)] = node_up[static_cast<std::size_t>(v)];
      node_up[static_cast<std::size_t>(net.edge(e).head)] |= node_up[static_cast<std::size_t>(v)];
    }
  }
  reverse_topo_.assign(net.topological_order().rbegin(), net.topological_order().rend());
}

std::uint64_t CutProfiler::d_mask(std::uint64_t edges) const noexcept {
  std::uint64_t d = 0;
  for (std::uint64_t b = edges; b != 0; b &= b - 1) d |= upstream_[static_cast<std::size_t>(std::countr_zero(b))];
  return d;
}

std::uint64_t CutProfiler::i_mask(std::uint64_t edges) const {
  const Network& net = *net_;
  std::vector<char> reach(net.node_count(), 0);
  reach[static_cast<std::size_t>(net.sink())] = 1;
  for (NodeId v : reverse_topo_) {
    auto& r = reach[static_cast<std::size_t>(v)];
    if (r) continue;
    for (EdgeId e : net.out_edges(v)) {
      if (((edges >> e) & 1u) == 0 && reach[static_cast<std::size_t>(net.edge(e).head)]) {
        r = 1;
        break;
      }
    }
  }
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < net.source_count(); ++i) {
    if (!reach[static_cast<std::size_t>(net.sources()[i])]) out |= std::uint64_t{1} << i;
  }
  return out;
}

}  // namespace snfc
