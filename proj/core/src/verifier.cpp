#include "snfc/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <unordered_map>

#include "json.hpp"

#include "snfc/code_builder.hpp"
#include "snfc/cut_lattice.hpp"
#include "snfc/error.hpp"

namespace snfc {

using nlohmann::json;

namespace {

void append_symbols(std::string& key, std::span<const std::uint32_t> values) {
  for (std::uint32_t v : values) key.append(reinterpret_cast<const char*>(&v), sizeof v);
}

/// Counts of (Y_W, Z) pairs over a uniform enumeration.
class JointCounter {
 public:
  void add(const std::string& y, const std::string& z) {
    ++joint_[y + '\x1f' + std::to_string(z_index(z))];
    ++y_[y];
    ++total_;
  }

  EntropyBits finish() const {
    EntropyBits out;
    const auto n = static_cast<unsigned __int128>(total_);
    out.zero = joint_.size() == y_.size() * z_.size();
    double bits = 0.0;
    for (const auto& [key, c] : joint_) {
      const auto sep = key.rfind('\x1f');
      const std::uint64_t cy = y_.at(key.substr(0, sep));
      const std::uint64_t cz = z_counts_.at(std::stoull(key.substr(sep + 1)));
      if (static_cast<unsigned __int128>(c) * n != static_cast<unsigned __int128>(cy) * cz) out.zero = false;
      bits += static_cast<double>(c) / static_cast<double>(total_) *
              std::log2(static_cast<double>(c) * static_cast<double>(total_) /
                        (static_cast<double>(cy) * static_cast<double>(cz)));
    }
    out.bits = out.zero ? 0.0 : std::max(bits, 0.0);
    return out;
  }

 private:
  std::uint64_t z_index(const std::string& z) {
    auto [it, inserted] = z_.try_emplace(z, z_counts_.size());
    if (inserted) z_counts_.push_back(0);
    ++z_counts_[it->second];
    return it->second;
  }

  std::unordered_map<std::string, std::uint64_t> joint_;
  std::unordered_map<std::string, std::uint64_t> y_;
  std::unordered_map<std::string, std::uint64_t> z_;
  std::vector<std::uint64_t> z_counts_;
  std::uint64_t total_ = 0;
};

/// q^exponent, or nullopt once it exceeds `cap`.
std::optional<std::uint64_t> bounded_power(std::uint64_t q, std::uint64_t exponent, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (v > cap / q) return std::nullopt;
    v *= q;
  }
  return v;
}

/// Advances a mixed-radix odometer; returns false after the last tuple.
bool advance(std::vector<std::uint32_t>& digits, const std::vector<std::uint32_t>& radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

std::vector<Elem> row_times(const Field& f, std::span<const Elem> x, const GfMatrix& m) {
  std::vector<Elem> y(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (x[r] == 0) continue;
    const auto row = m.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c) y[c] = f.add(y[c], f.mul(x[r], row[c]));
  }
  return y;
}

std::uint64_t realization_count(const LinearSecureCode& code, std::uint64_t cap) {
  const auto count = bounded_power(code.field.order(), static_cast<std::uint64_t>(code.params.source_dim()), cap);
  if (!count) {
    throw Error(ErrorCode::InstanceTooLarge, "q^(sR) exceeds the exhaustive budget of " + std::to_string(cap));
  }
  return *count;
}

template <typename ZetaFn>
EntropyBits linear_mi(const LinearSecureCode& code, const EdgeSet& wiretap, const VerifierLimits& limits, ZetaFn zeta) {
  const std::uint64_t total = realization_count(code, limits.exhaustive_budget);
  const Field& f = code.field;
  const GfMatrix gw = wiretap_matrix(code, wiretap);
  const auto dim = static_cast<std::size_t>(code.params.source_dim());
  std::vector<std::uint32_t> x(dim, 0);
  const std::vector<std::uint32_t> radix(dim, f.order());
  JointCounter counter;
  for (std::uint64_t i = 0; i < total; ++i) {
    std::string y;
    std::string z;
    append_symbols(y, row_times(f, x, gw));
    append_symbols(z, zeta(x));
    counter.add(y, z);
    advance(x, radix);
  }
  return counter.finish();
}

double round12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

json network_json(const Network& net) {
  json jnet;
  std::vector<std::string> sources;
  for (NodeId v : net.sources()) sources.push_back(net.node_name(v));
  jnet["sources"] = sources;
  jnet["sink"] = net.node_name(net.sink());
  json jedges = json::array();
  for (const Edge& e : net.edges()) jedges.push_back({e.id, net.node_name(e.tail), net.node_name(e.head)});
  jnet["edges"] = jedges;
  return jnet;
}

Network network_from_json(const json& jnet) {
  NetworkDescription desc;
  desc.sources = jnet.at("sources").get<std::vector<std::string>>();
  desc.sinks = {jnet.at("sink").get<std::string>()};
  for (const auto& e : jnet.at("edges")) {
    const auto parts = e.get<std::vector<std::string>>();
    if (parts.size() != 3) throw Error(ErrorCode::Parse, "edge entries need [id, tail, head]");
    desc.edges.push_back({parts[0], parts[1], parts[2]});
  }
  return validate_network(desc);
}

std::mt19937_64 sampler(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace

TrafficTrace simulate(const LinearSecureCode& code, std::span<const Elem> x) {
  const Network& net = code.network;
  const Field& f = code.field;
  const auto R = static_cast<std::size_t>(code.params.R);
  if (x.size() != static_cast<std::size_t>(code.params.source_dim())) {
    throw Error(ErrorCode::ShapeMismatch, "source realization has the wrong length");
  }
  TrafficTrace trace;
  trace.blocks.resize(net.edge_count());
  for (EdgeId e : net.edges_in_topological_order()) {
    const auto ei = static_cast<std::size_t>(e);
    const NodeId tail = net.edge(e).tail;
    const int pos = net.source_index(tail);
    if (pos >= 0) {
      trace.blocks[ei] = row_times(f, x.subspan(static_cast<std::size_t>(pos) * R, R), code.local[ei]);
    } else {
      std::vector<Elem> in;
      for (EdgeId d : net.in_edges(tail)) {
        const auto& b = trace.blocks[static_cast<std::size_t>(d)];
        in.insert(in.end(), b.begin(), b.end());
      }
      if (in.size() != code.local[ei].rows()) throw Error(ErrorCode::ShapeMismatch, "local matrix has the wrong shape");
      trace.blocks[ei] = row_times(f, in, code.local[ei]);
    }
    if (trace.blocks[ei] != row_times(f, x, code.global.at(ei))) trace.consistent = false;
  }
  return trace;
}

std::vector<Elem> decode(const LinearSecureCode& code, const TrafficTrace& trace) {
  std::vector<Elem> in;
  for (EdgeId d : code.network.in_edges(code.network.sink())) {
    const auto& b = trace.on(d);
    in.insert(in.end(), b.begin(), b.end());
  }
  if (in.size() != code.decoder.rows()) throw Error(ErrorCode::ShapeMismatch, "decoder has the wrong shape");
  return row_times(code.field, in, code.decoder);
}

ComputabilityResult computability_details(const LinearSecureCode& code, const VerifierLimits& limits) {
  ComputabilityResult out;
  try {
    out.consistent = recompute_globals(code.network, code.field, code.params, code.local) == code.global;
  } catch (const Error&) {
    out.consistent = false;
  }
  const GfMatrix t_block = build_target_block(code.target, code.params);
  const GfMatrix g = sink_matrix(code);
  const bool shapes_ok = code.decoder.rows() == g.cols() && code.decoder.cols() == t_block.cols();
  out.algebraic = shapes_ok && solve_right(g, t_block).has_value() && g * code.decoder == t_block;
  if (!shapes_ok) return out;

  const Field& f = code.field;
  const auto dim = static_cast<std::size_t>(code.params.source_dim());
  const auto exhaustive = bounded_power(f.order(), dim, limits.exhaustive_budget);
  out.sampled_ok = true;
  auto check = [&](const std::vector<Elem>& x) {
    const TrafficTrace trace = simulate(code, x);
    if (!trace.consistent || decode(code, trace) != row_times(f, x, t_block)) out.sampled_ok = false;
  };
  std::vector<Elem> x(dim, 0);
  if (exhaustive) {
    out.mode = "exhaustive";
    const std::vector<std::uint32_t> radix(dim, f.order());
    for (std::uint64_t i = 0; i < *exhaustive && out.sampled_ok; ++i) {
      check(x);
      advance(x, radix);
      ++out.realizations;
    }
  } else {
    out.mode = "probabilistic";
    auto rng = sampler(limits.seed);
    for (std::uint64_t i = 0; i < limits.samples && out.sampled_ok; ++i) {
      for (auto& v : x) v = static_cast<Elem>(rng() % f.order());
      check(x);
      ++out.realizations;
    }
  }
  out.ok = out.consistent && out.algebraic && out.sampled_ok;
  return out;
}

bool check_computability(const LinearSecureCode& code, const VerifierLimits& limits) {
  return computability_details(code, limits).ok;
}

bool wiretap_is_secure(const LinearSecureCode& code, const GfMatrix& security_block, const EdgeSet& wiretap) {
  if (wiretap.empty()) return true;
  return subspaces_intersect_trivially(security_block, wiretap_matrix(code, wiretap));
}

bool check_security_algebraic(const LinearSecureCode& code, const GfMatrix& upsilon,
                              const std::optional<std::vector<EdgeSet>>& family) {
  const GfMatrix s = build_security_matrix(upsilon, code.params);
  const std::vector<EdgeSet> members =
      family ? *family : enumerate_primary_wiretaps(code.network, code.params.r).exact_members;
  for (const auto& w : members) {
    if (!wiretap_is_secure(code, s, w)) return false;
  }
  return true;
}

EntropyBits mutual_information_oracle(const LinearSecureCode& code, const EdgeSet& wiretap, const GfMatrix& upsilon,
                                      const VerifierLimits& limits) {
  const GfMatrix s = build_security_matrix(upsilon, code.params);
  return linear_mi(code, wiretap, limits, [&](const std::vector<Elem>& x) { return row_times(code.field, x, s); });
}

EntropyBits mutual_information_oracle(const LinearSecureCode& code, const EdgeSet& wiretap,
                                      const TabularFunction& zeta, const VerifierLimits& limits) {
  const auto s = static_cast<std::size_t>(code.params.s);
  if (zeta.arity() != s) throw Error(ErrorCode::DomainMismatch, "security function arity differs from the source count");
  for (const auto& a : zeta.inputs()) {
    if (a.size != code.field.order()) throw Error(ErrorCode::DomainMismatch, "security function alphabet must be the field");
  }
  const auto R = static_cast<std::size_t>(code.params.R);
  const auto ell = static_cast<std::size_t>(code.params.ell);
  return linear_mi(code, wiretap, limits, [&](const std::vector<Elem>& x) {
    std::vector<std::uint32_t> z(ell);
    std::vector<std::uint32_t> tuple(s);
    for (std::size_t t = 0; t < ell; ++t) {
      for (std::size_t i = 0; i < s; ++i) tuple[i] = x[i * R + t];
      z[t] = zeta(tuple);
    }
    return z;
  });
}

std::vector<EdgeSet> all_wiretaps_up_to(const Network& net, int level) {
  std::vector<EdgeSet> out;
  const int m = static_cast<int>(net.edge_count());
  for (int size = 1; size <= std::min(level, m); ++size) {
    std::vector<EdgeId> pick(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
      out.emplace_back(pick);
      int i = size - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - size + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

SecurityReport full_report(const LinearSecureCode& code, const GfMatrix& upsilon, int level,
                           const std::optional<std::vector<EdgeSet>>& family, const VerifierLimits& limits) {
  SecurityReport report;
  const ComputabilityResult comp = computability_details(code, limits);
  report.computability = comp.ok;
  report.computability_mode = comp.mode;
  report.consistent = comp.consistent;
  report.rate = Rational(code.params.ell, code.params.k);
  const std::vector<EdgeSet> members =
      family ? *family : enumerate_primary_wiretaps(code.network, level).exact_members;
  const GfMatrix s = build_security_matrix(upsilon, code.params);
  const bool mi_feasible =
      bounded_power(code.field.order(), static_cast<std::uint64_t>(code.params.source_dim()), limits.exhaustive_budget)
          .has_value();
  bool secure = true;
  for (const auto& w : members) {
    WiretapVerdict v;
    v.edges = w;
    v.algebraic_ok = wiretap_is_secure(code, s, w);
    secure = secure && *v.algebraic_ok;
    if (mi_feasible) {
      v.mi = mutual_information_oracle(code, w, upsilon, limits);
      secure = secure && v.mi->zero;
    }
    report.per_wiretap.push_back(std::move(v));
  }
  report.admissible = report.computability && secure;
  return report;
}

std::string report_to_json(const SecurityReport& report, const Network& net, int indent) {
  json doc;
  doc["admissible"] = report.admissible;
  doc["rate"] = report.rate.to_string();
  doc["computability"] = report.computability;
  doc["computability_mode"] = report.computability_mode;
  doc["consistent"] = report.consistent;
  json list = json::array();
  for (const auto& v : report.per_wiretap) {
    json item;
    item["edges"] = net.edge_ids(v.edges);
    item["algebraic_ok"] = v.algebraic_ok ? json(*v.algebraic_ok) : json(nullptr);
    item["mi_bits"] = v.mi ? json(round12(v.mi->bits)) : json(nullptr);
    list.push_back(std::move(item));
  }
  doc["per_wiretap"] = std::move(list);
  return doc.dump(indent);
}

void validate_tabular_code(const TabularCode& code) {
  const Network& net = code.network;
  const std::size_t s = net.source_count();
  if (code.message_alphabet.size() != s || code.key_alphabet.size() != s) {
    throw Error(ErrorCode::ShapeMismatch, "one message and key alphabet per source required");
  }
  for (std::size_t i = 0; i < s; ++i) {
    if (code.message_alphabet[i] == 0 || code.key_alphabet[i] == 0) {
      throw Error(ErrorCode::InvalidArgument, "alphabets must be nonempty");
    }
  }
  if (code.edge_alphabet == 0) throw Error(ErrorCode::InvalidArgument, "edge alphabet must be nonempty");
  if (code.edge_tables.size() != net.edge_count()) throw Error(ErrorCode::ShapeMismatch, "one table per edge required");
  constexpr std::uint64_t cap = std::uint64_t{1} << 24;
  auto table_size = [&](std::size_t inputs) {
    const auto n = bounded_power(code.edge_alphabet, inputs, cap);
    if (!n) throw Error(ErrorCode::InstanceTooLarge, "lookup table exceeds 2^24 entries");
    return *n;
  };
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const NodeId tail = net.edge(static_cast<EdgeId>(e)).tail;
    const int pos = net.source_index(tail);
    const std::uint64_t want = pos >= 0 ? std::uint64_t{code.message_alphabet[static_cast<std::size_t>(pos)]} *
                                              code.key_alphabet[static_cast<std::size_t>(pos)]
                                        : table_size(net.in_edges(tail).size());
    if (code.edge_tables[e].size() != want) {
      throw Error(ErrorCode::ShapeMismatch, "table of edge '" + net.edge(static_cast<EdgeId>(e)).id + "' has " +
                                                std::to_string(code.edge_tables[e].size()) + " entries, expected " +
                                                std::to_string(want));
    }
    for (auto v : code.edge_tables[e]) {
      if (v >= code.edge_alphabet) throw Error(ErrorCode::InvalidArgument, "edge symbol outside the edge alphabet");
    }
  }
  if (code.decoder.size() != table_size(net.in_edges(net.sink()).size())) {
    throw Error(ErrorCode::ShapeMismatch, "decoder table has the wrong size");
  }
  if (code.target.arity() != s) throw Error(ErrorCode::DomainMismatch, "target arity differs from the source count");
  for (std::size_t i = 0; i < s; ++i) {
    if (code.target.inputs()[i].size != code.message_alphabet[i]) {
      throw Error(ErrorCode::DomainMismatch, "target alphabets differ from the message alphabets");
    }
  }
  for (auto v : code.decoder) {
    if (v >= code.target.output().size) throw Error(ErrorCode::InvalidArgument, "decoder value outside the target range");
  }
}

std::uint64_t tabular_realization_count(const TabularCode& code) {
  unsigned __int128 n = 1;
  for (auto a : code.message_alphabet) n *= a;
  for (auto a : code.key_alphabet) n *= a;
  if (n > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(n);
}

std::vector<std::uint32_t> simulate(const TabularCode& code, std::span<const std::uint32_t> messages,
                                    std::span<const std::uint32_t> keys) {
  const Network& net = code.network;
  if (messages.size() != net.source_count() || keys.size() != net.source_count()) {
    throw Error(ErrorCode::ShapeMismatch, "one message and key per source required");
  }
  std::vector<std::uint32_t> y(net.edge_count(), 0);
  for (EdgeId e : net.edges_in_topological_order()) {
    const auto ei = static_cast<std::size_t>(e);
    const NodeId tail = net.edge(e).tail;
    const int pos = net.source_index(tail);
    std::uint64_t index = 0;
    if (pos >= 0) {
      const auto p = static_cast<std::size_t>(pos);
      if (messages[p] >= code.message_alphabet[p] || keys[p] >= code.key_alphabet[p]) {
        throw Error(ErrorCode::InvalidArgument, "realization outside the source alphabets");
      }
      index = std::uint64_t{messages[p]} * code.key_alphabet[p] + keys[p];
    } else {
      for (EdgeId d : net.in_edges(tail)) index = index * code.edge_alphabet + y[static_cast<std::size_t>(d)];
    }
    y[ei] = code.edge_tables[ei].at(index);
  }
  return y;
}

std::uint32_t decode(const TabularCode& code, const std::vector<std::uint32_t>& symbols) {
  std::uint64_t index = 0;
  for (EdgeId d : code.network.in_edges(code.network.sink())) {
    index = index * code.edge_alphabet + symbols.at(static_cast<std::size_t>(d));
  }
  return code.decoder.at(index);
}

namespace {

/// Calls fn(messages, keys) for every realization, or for `samples` random ones.
template <typename Fn>
std::string for_realizations(const TabularCode& code, const VerifierLimits& limits, bool allow_sampling, Fn fn) {
  const std::size_t s = code.network.source_count();
  std::vector<std::uint32_t> radix(code.message_alphabet);
  radix.insert(radix.end(), code.key_alphabet.begin(), code.key_alphabet.end());
  std::vector<std::uint32_t> digits(2 * s, 0);
  const std::uint64_t total = tabular_realization_count(code);
  auto call = [&] {
    return fn(std::span<const std::uint32_t>(digits.data(), s), std::span<const std::uint32_t>(digits.data() + s, s));
  };
  if (total <= limits.exhaustive_budget) {
    do {
      if (!call()) break;
    } while (advance(digits, radix));
    return "exhaustive";
  }
  if (!allow_sampling) {
    throw Error(ErrorCode::InstanceTooLarge, "realization count exceeds the exhaustive budget");
  }
  auto rng = sampler(limits.seed);
  for (std::uint64_t i = 0; i < limits.samples; ++i) {
    for (std::size_t j = 0; j < digits.size(); ++j) digits[j] = static_cast<std::uint32_t>(rng() % radix[j]);
    if (!call()) break;
  }
  return "probabilistic";
}

}  // namespace

ComputabilityResult computability_details(const TabularCode& code, const VerifierLimits& limits) {
  validate_tabular_code(code);
  ComputabilityResult out;
  out.consistent = true;
  out.algebraic = true;
  out.sampled_ok = true;
  std::vector<std::uint32_t> msg;
  out.mode = for_realizations(code, limits, true, [&](auto m, auto k) {
    ++out.realizations;
    msg.assign(m.begin(), m.end());
    if (decode(code, simulate(code, m, k)) != code.target(msg)) out.sampled_ok = false;
    return out.sampled_ok;
  });
  out.ok = out.sampled_ok;
  return out;
}

bool check_computability(const TabularCode& code, const VerifierLimits& limits) {
  return computability_details(code, limits).ok;
}

EntropyBits mutual_information_oracle(const TabularCode& code, const EdgeSet& wiretap, const TabularFunction& zeta,
                                      const VerifierLimits& limits) {
  validate_tabular_code(code);
  if (zeta.arity() != code.network.source_count()) {
    throw Error(ErrorCode::DomainMismatch, "security function arity differs from the source count");
  }
  for (std::size_t i = 0; i < zeta.arity(); ++i) {
    if (zeta.inputs()[i].size != code.message_alphabet[i]) {
      throw Error(ErrorCode::DomainMismatch, "security function alphabets differ from the message alphabets");
    }
  }
  JointCounter counter;
  std::vector<std::uint32_t> msg;
  std::vector<std::uint32_t> seen(wiretap.size());
  for_realizations(code, limits, false, [&](auto m, auto k) {
    const auto y = simulate(code, m, k);
    for (std::size_t i = 0; i < wiretap.size(); ++i) seen[i] = y[static_cast<std::size_t>(wiretap.members()[i])];
    msg.assign(m.begin(), m.end());
    const std::uint32_t zv = zeta(msg);
    std::string ys;
    std::string zs;
    append_symbols(ys, seen);
    append_symbols(zs, std::span<const std::uint32_t>(&zv, 1));
    counter.add(ys, zs);
    return true;
  });
  return counter.finish();
}

SecurityReport full_report(const TabularCode& code, const TabularFunction& zeta, int level,
                           const VerifierLimits& limits) {
  SecurityReport report;
  const ComputabilityResult comp = computability_details(code, limits);
  report.computability = comp.ok;
  report.computability_mode = comp.mode;
  report.consistent = comp.consistent;
  report.rate = Rational(1);
  bool secure = true;
  for (const auto& w : all_wiretaps_up_to(code.network, level)) {
    WiretapVerdict v;
    v.edges = w;
    v.mi = mutual_information_oracle(code, w, zeta, limits);
    secure = secure && v.mi->zero;
    report.per_wiretap.push_back(std::move(v));
  }
  report.admissible = report.computability && secure;
  return report;
}

std::string serialize_tabular_code(const TabularCode& code) {
  json doc;
  doc["format"] = "snfc-tabular-code";
  doc["version"] = 1;
  doc["network"] = network_json(code.network);
  doc["message_alphabet"] = code.message_alphabet;
  doc["key_alphabet"] = code.key_alphabet;
  doc["edge_alphabet"] = code.edge_alphabet;
  json per_edge = json::array();
  for (std::size_t e = 0; e < code.edge_tables.size(); ++e) {
    per_edge.push_back({{"id", code.network.edge(static_cast<EdgeId>(e)).id}, {"table", code.edge_tables[e]}});
  }
  doc["edges"] = per_edge;
  doc["decoder"] = code.decoder;
  doc["target"] = format_tabular(code.target);
  return doc.dump(2) + "\n";
}

TabularCode parse_tabular_code(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("code document is not valid JSON: ") + e.what());
  }
  try {
    if (doc.value("format", std::string()) != "snfc-tabular-code") {
      throw Error(ErrorCode::Parse, "not a tabular code document");
    }
    TabularCode code;
    code.network = network_from_json(doc.at("network"));
    code.message_alphabet = doc.at("message_alphabet").get<std::vector<std::uint32_t>>();
    code.key_alphabet = doc.at("key_alphabet").get<std::vector<std::uint32_t>>();
    code.edge_alphabet = doc.at("edge_alphabet").get<std::uint32_t>();
    const auto& jedges = doc.at("edges");
    if (jedges.size() != code.network.edge_count()) throw Error(ErrorCode::Parse, "one entry per edge required");
    for (std::size_t e = 0; e < jedges.size(); ++e) {
      if (jedges[e].at("id").get<std::string>() != code.network.edge(static_cast<EdgeId>(e)).id) {
        throw Error(ErrorCode::Parse, "edge entries must follow the network edge order");
      }
      code.edge_tables.push_back(jedges[e].at("table").get<std::vector<std::uint32_t>>());
    }
    code.decoder = doc.at("decoder").get<std::vector<std::uint32_t>>();
    code.target = parse_tabular(doc.at("target").get<std::string>());
    validate_tabular_code(code);
    return code;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed code document: ") + e.what());
  }
}

}  // namespace snfc
