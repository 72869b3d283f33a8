#include "snfc/linear_code.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "snfc/error.hpp"

namespace snfc {

using nlohmann::json;

CodeParameters make_parameters(int s, int R, int k, int r) {
  if (s < 1 || R < 1 || k < 1 || r < 0) throw Error(ErrorCode::InvalidArgument, "code parameters out of range");
  if (static_cast<long long>(r) * k > R) {
    throw Error(ErrorCode::SecurityLevelTooHigh, "rk exceeds the per-source block length R");
  }
  return CodeParameters{s, R, k, r, R - r * k, r * k};
}

namespace {

void check_local_shapes(const Network& net, const CodeParameters& p, const std::vector<GfMatrix>& local) {
  if (local.size() != net.edge_count()) throw Error(ErrorCode::ShapeMismatch, "one local matrix per edge required");
  const auto n = static_cast<std::size_t>(p.n());
  for (std::size_t e = 0; e < local.size(); ++e) {
    const NodeId tail = net.edge(static_cast<EdgeId>(e)).tail;
    const std::size_t rows = net.source_index(tail) >= 0 ? static_cast<std::size_t>(p.R) : net.in_edges(tail).size() * n;
    if (local[e].rows() != rows || local[e].cols() != n) {
      throw Error(ErrorCode::ShapeMismatch, "local matrix of edge '" + net.edge(static_cast<EdgeId>(e)).id +
                                                "' has the wrong shape");
    }
  }
}

}  // namespace

std::vector<GfMatrix> recompute_globals(const Network& net, const Field& field, const CodeParameters& p,
                                        const std::vector<GfMatrix>& local) {
  check_local_shapes(net, p, local);
  const auto dim = static_cast<std::size_t>(p.source_dim());
  const auto n = static_cast<std::size_t>(p.n());
  std::vector<GfMatrix> global(net.edge_count());
  for (EdgeId e : net.edges_in_topological_order()) {
    const NodeId tail = net.edge(e).tail;
    const int pos = net.source_index(tail);
    GfMatrix g(field, dim, n);
    if (pos >= 0) {
      g.paste(static_cast<std::size_t>(pos) * static_cast<std::size_t>(p.R), 0, local[static_cast<std::size_t>(e)]);
    } else {
      const auto& ins = net.in_edges(tail);
      if (!ins.empty()) {
        std::vector<GfMatrix> parts;
        for (EdgeId d : ins) parts.push_back(global[static_cast<std::size_t>(d)]);
        g = hconcat(parts, field, dim) * local[static_cast<std::size_t>(e)];
      }
    }
    global[static_cast<std::size_t>(e)] = std::move(g);
  }
  return global;
}

LinearSecureCode make_linear_code(Network net, GfMatrix target, CodeParameters params, std::vector<GfMatrix> local,
                                  GfMatrix decoder) {
  LinearSecureCode code;
  code.field = target.field();
  code.global = recompute_globals(net, code.field, params, local);
  code.network = std::move(net);
  code.params = params;
  code.target = std::move(target);
  code.local = std::move(local);
  code.decoder = std::move(decoder);
  return code;
}

GfMatrix wiretap_matrix(const LinearSecureCode& code, const EdgeSet& wiretap) {
  std::vector<GfMatrix> parts;
  for (EdgeId e : wiretap) parts.push_back(code.global.at(static_cast<std::size_t>(e)));
  return hconcat(parts, code.field, static_cast<std::size_t>(code.params.source_dim()));
}

GfMatrix sink_matrix(const LinearSecureCode& code) {
  const auto& ins = code.network.in_edges(code.network.sink());
  return wiretap_matrix(code, EdgeSet(std::vector<EdgeId>(ins.begin(), ins.end())));
}

namespace {

json matrix_json(const GfMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(json(std::vector<Elem>(m.row(r).begin(), m.row(r).end())));
  return json{{"shape", {m.rows(), m.cols()}}, {"rows", rows}};
}

GfMatrix matrix_from_json(const json& j, const Field& field) {
  const auto shape = j.at("shape").get<std::vector<std::size_t>>();
  if (shape.size() != 2) throw Error(ErrorCode::Parse, "matrix shape must have two entries");
  const auto rows = j.at("rows").get<std::vector<std::vector<std::uint64_t>>>();
  if (rows.size() != shape[0]) throw Error(ErrorCode::Parse, "matrix row count disagrees with its shape");
  GfMatrix m(field, shape[0], shape[1]);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != shape[1]) throw Error(ErrorCode::Parse, "matrix row length disagrees with its shape");
    for (std::size_t c = 0; c < shape[1]; ++c) {
      if (!field.contains(rows[r][c])) throw Error(ErrorCode::Parse, "matrix entry is not a field element");
      m(r, c) = static_cast<Elem>(rows[r][c]);
    }
  }
  return m;
}

}  // namespace

std::string serialize_code(const LinearSecureCode& code) {
  const Network& net = code.network;
  json doc;
  doc["format"] = "snfc-linear-code";
  doc["version"] = 1;
  doc["field"] = code.field.to_string();
  json jnet;
  std::vector<std::string> sources;
  for (NodeId v : net.sources()) sources.push_back(net.node_name(v));
  jnet["sources"] = sources;
  jnet["sink"] = net.node_name(net.sink());
  json jedges = json::array();
  for (const Edge& e : net.edges()) jedges.push_back({e.id, net.node_name(e.tail), net.node_name(e.head)});
  jnet["edges"] = jedges;
  doc["network"] = jnet;
  const auto& p = code.params;
  doc["params"] = {{"s", p.s}, {"R", p.R}, {"k", p.k}, {"r", p.r}, {"ell", p.ell}, {"z", p.z}};
  doc["target_matrix"] = matrix_json(code.target);
  if (code.security) doc["security_matrix"] = matrix_json(*code.security);
  json per_edge = json::array();
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    per_edge.push_back({{"id", net.edge(static_cast<EdgeId>(e)).id},
                        {"local", matrix_json(code.local[e])},
                        {"global", matrix_json(code.global[e])}});
  }
  doc["edges"] = per_edge;
  doc["decoder"] = matrix_json(code.decoder);
  return doc.dump(2) + "\n";
}

LinearSecureCode parse_code(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("code document is not valid JSON: ") + e.what());
  }
  try {
    if (doc.value("format", std::string()) != "snfc-linear-code") {
      throw Error(ErrorCode::Parse, "not a linear code document");
    }
    LinearSecureCode code;
    code.field = Field::parse(doc.at("field").get<std::string>());
    NetworkDescription desc;
    const auto& jnet = doc.at("network");
    desc.sources = jnet.at("sources").get<std::vector<std::string>>();
    desc.sinks = {jnet.at("sink").get<std::string>()};
    for (const auto& e : jnet.at("edges")) {
      const auto parts = e.get<std::vector<std::string>>();
      if (parts.size() != 3) throw Error(ErrorCode::Parse, "edge entries need [id, tail, head]");
      desc.edges.push_back({parts[0], parts[1], parts[2]});
    }
    code.network = validate_network(desc);
    const auto& jp = doc.at("params");
    code.params = CodeParameters{jp.at("s").get<int>(), jp.at("R").get<int>(), jp.at("k").get<int>(),
                                 jp.at("r").get<int>(), jp.at("ell").get<int>(), jp.at("z").get<int>()};
    const auto& p = code.params;
    if (p.s != static_cast<int>(code.network.source_count()) || p.ell + p.z != p.R || p.R < 1 || p.k < 1 ||
        p.ell < 0 || p.z < 0) {
      throw Error(ErrorCode::Parse, "inconsistent code parameters");
    }
    code.target = matrix_from_json(doc.at("target_matrix"), code.field);
    if (code.target.rows() != static_cast<std::size_t>(p.s) || code.target.cols() != static_cast<std::size_t>(p.k)) {
      throw Error(ErrorCode::Parse, "target matrix shape disagrees with the parameters");
    }
    if (doc.contains("security_matrix")) code.security = matrix_from_json(doc.at("security_matrix"), code.field);
    const auto& jedges = doc.at("edges");
    if (jedges.size() != code.network.edge_count()) throw Error(ErrorCode::Parse, "one entry per edge required");
    for (std::size_t e = 0; e < jedges.size(); ++e) {
      if (jedges[e].at("id").get<std::string>() != code.network.edge(static_cast<EdgeId>(e)).id) {
        throw Error(ErrorCode::Parse, "edge entries must follow the network edge order");
      }
      code.local.push_back(matrix_from_json(jedges[e].at("local"), code.field));
      GfMatrix g = matrix_from_json(jedges[e].at("global"), code.field);
      if (g.rows() != static_cast<std::size_t>(p.source_dim()) || g.cols() != static_cast<std::size_t>(p.n())) {
        throw Error(ErrorCode::Parse, "global matrix shape disagrees with the parameters");
      }
      code.global.push_back(std::move(g));
    }
    try {
      recompute_globals(code.network, code.field, p, code.local);
    } catch (const Error& e) {
      throw Error(ErrorCode::Parse, e.what());
    }
    code.decoder = matrix_from_json(doc.at("decoder"), code.field);
    const std::size_t sink_inputs = code.network.in_edges(code.network.sink()).size();
    if (code.decoder.rows() != sink_inputs * static_cast<std::size_t>(p.n()) ||
        code.decoder.cols() != static_cast<std::size_t>(p.ell * p.k)) {
      throw Error(ErrorCode::Parse, "decoder shape disagrees with the parameters");
    }
    return code;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed code document: ") + e.what());
  }
}

LinearSecureCode read_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open code file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_code(buf.str());
}

}  // namespace snfc
