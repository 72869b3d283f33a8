#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "snfc/code_builder.hpp"
#include "snfc/cut_lattice.hpp"
#include "snfc/error.hpp"
#include "snfc/function_table.hpp"
#include "snfc/verifier.hpp"

namespace snfc::cli {

using nlohmann::json;

namespace {

constexpr std::uint64_t kGeneralDomainCap = 4096;

json number(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

json edge_list(const Network& net, const std::optional<EdgeSet>& set) {
  if (!set) return nullptr;
  return net.edge_ids(*set);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void need(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(ErrorCode::InvalidArgument, std::string("missing required option ") + flag);
}

GfMatrix load_matrix(const std::string& path, const std::optional<std::string>& field) {
  GfMatrix m = read_matrix_file(path);
  if (!field) return m;
  const Field f = Field::parse(*field);
  if (f == m.field()) return m;
  if (f.characteristic() != m.field().characteristic()) {
    throw Error(ErrorCode::InvalidArgument, "matrix '" + path + "' is over GF(" + m.field().to_string() +
                                                ") which does not embed in GF(" + f.to_string() + ")");
  }
  GfMatrix lifted(f, m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) >= m.field().characteristic() && m.field().degree() > 1) {
        throw Error(ErrorCode::InvalidArgument, "only prime-subfield entries can be lifted to GF(" + f.to_string() + ")");
      }
      lifted(r, c) = m(r, c);
    }
  }
  return lifted;
}

LatticeLimits lattice_limits(const JobSpec& job) { return LatticeLimits{job.limit_nodes, job.limit_edges}; }

json bound_value_json(const Network& net, const BoundValue& b) {
  return json{{"value", b.value.to_string()}, {"wiretap", net.edge_ids(b.wiretap)}, {"cut", net.edge_ids(b.cut)}};
}

/// General and zeros-based bounds for tabular f and ζ.
void add_tabular_bounds(json& doc, const Network& net, const TabularFunction& f, const TabularFunction& zeta,
                        int level, std::uint32_t edge_alphabet, int limit_edges) {
  const FunctionLimits limits{limit_edges};
  const GeneralBound g = general_upper_bound(net, f, zeta, level, edge_alphabet, limits);
  doc["general_bound"] = number(g.value);
  doc["witnesses"]["general"] = {{"cut", edge_list(net, g.cut)}, {"wiretap", edge_list(net, g.wiretap)}};
  try {
    const Theorem2Bound t2 = theorem2_upper_bound(net, f, edge_alphabet, limits);
    doc["theorem2_bound"] = number(t2.value);
    doc["witnesses"]["theorem2"] = {{"cut", edge_list(net, t2.cut)}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MissingZeroElement) throw;
  }
}

bool small_domain(const GfMatrix& t, int limit_edges, const Network& net) {
  std::uint64_t domain = 1;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    domain *= t.field().order();
    if (domain > kGeneralDomainCap) return false;
  }
  return static_cast<int>(net.edge_count()) <= limit_edges;
}

json run_bound(const JobSpec& job, bool oracle) {
  need(job.network, "--network");
  const Network net = read_network_file(job.network);
  json doc = json::object();
  doc["level"] = job.level;
  if (!job.target_matrix.empty()) {
    const GfMatrix t = load_matrix(job.target_matrix, job.field);
    if (oracle) {
      const BoundValue b = bruteforce_linear_bound(net, t, job.level, lattice_limits(job));
      doc["bruteforce_linear_bound"] = b.value.to_string();
      doc["witnesses"]["bruteforce_linear"] = bound_value_json(net, b);
      const PrimaryWiretapFamily fam = enumerate_primary_wiretaps(net, job.level);
      doc["primary_wiretaps"] = fam.members.size();
      doc["exact_primary_wiretaps"] = fam.exact_members.size();
    } else {
      const BoundValue b = algorithm2_bound(net, t, job.level, lattice_limits(job));
      doc["linear_bound"] = b.value.to_string();
      doc["witnesses"]["linear"] = bound_value_json(net, b);
    }
    if (small_domain(t, job.limit_edges, net)) {
      const TabularFunction f = tabular_from_matrix(t);
      std::optional<GfMatrix> upsilon;
      if (!job.security_matrix.empty()) upsilon = load_matrix(job.security_matrix, t.field().to_string());
      const TabularFunction zeta = upsilon ? tabular_from_matrix(*upsilon) : identity_function(f.inputs());
      add_tabular_bounds(doc, net, f, zeta, job.level, job.edge_alphabet.value_or(t.field().order()), job.limit_edges);
    }
    return doc;
  }
  need(job.target_table, "--target-matrix or --target-table");
  const TabularFunction f = read_tabular_file(job.target_table);
  const TabularFunction zeta =
      job.security_table.empty() ? identity_function(f.inputs()) : read_tabular_file(job.security_table);
  if (!job.edge_alphabet) throw Error(ErrorCode::InvalidArgument, "tabular bounds need --edge-alphabet");
  add_tabular_bounds(doc, net, f, zeta, job.level, *job.edge_alphabet, job.limit_edges);
  return doc;
}

json run_construct(const JobSpec& job) {
  need(job.network, "--network");
  need(job.target_matrix, "--target-matrix");
  need(job.security_matrix, "--security-matrix");
  const Network net = read_network_file(job.network);
  const GfMatrix t = load_matrix(job.target_matrix, job.field);
  const GfMatrix upsilon = load_matrix(job.security_matrix, t.field().to_string());
  ConstructionOptions options;
  options.base.seed = job.seed;
  options.base.retry_budget = job.retry_budget;
  options.search.seed = job.seed;
  options.search.budget = job.search_budget;
  options.allow_search = job.search_budget > 0;
  const ConstructionResult res = construct_secure_code(net, t, upsilon, job.level, job.rate, options);
  json doc;
  doc["code"] = json::parse(serialize_code(res.code));
  doc["scheme"] = res.scheme;
  doc["field_size_bound"] = res.field_bound;
  doc["exact_primary_wiretaps"] = res.exact_wiretaps;
  doc["capacity_lower_bound"] = res.lower_bound.to_string();
  doc["c_min"] = res.c_min;
  doc["rate"] = Rational(res.code.params.ell, res.code.params.k).to_string();
  return doc;
}

/// Accepts a bare code document or a `construct` output wrapping one.
std::string code_text(const std::string& path) {
  const std::string text = slurp(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("code file is not valid JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("code") && doc["code"].is_object()) return doc["code"].dump();
  return text;
}

json run_verify(const JobSpec& job) {
  need(job.code, "--code");
  const std::string text = code_text(job.code);
  const json probe = json::parse(text);
  VerifierLimits limits;
  limits.exhaustive_budget = job.mi_budget;
  limits.seed = job.seed;
  if (probe.value("format", std::string()) == "snfc-tabular-code") {
    const TabularCode code = parse_tabular_code(text);
    const TabularFunction zeta = job.security_table.empty()
                                     ? identity_function(code.target.inputs())
                                     : read_tabular_file(job.security_table);
    return json::parse(report_to_json(full_report(code, zeta, job.level, limits), code.network));
  }
  const LinearSecureCode code = parse_code(text);
  GfMatrix upsilon;
  if (!job.security_matrix.empty()) {
    upsilon = load_matrix(job.security_matrix, code.field.to_string());
  } else if (code.security) {
    upsilon = *code.security;
  } else {
    throw Error(ErrorCode::InvalidArgument, "code carries no security matrix; pass --security-matrix");
  }
  const int level = job.level_given ? job.level : code.params.r;
  return json::parse(report_to_json(full_report(code, upsilon, level, std::nullopt, limits), code.network));
}

json run_report(const JobSpec& job) {
  json doc;
  doc["bound"] = run_bound(job, false);
  const json built = run_construct(job);
  doc["construction"] = built;
  const LinearSecureCode code = parse_code(built["code"].dump());
  VerifierLimits limits;
  limits.exhaustive_budget = job.mi_budget;
  limits.seed = job.seed;
  doc["verification"] =
      json::parse(report_to_json(full_report(code, *code.security, job.level, std::nullopt, limits), code.network));
  return doc;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidArgument: return 2;
    case ErrorCode::InstanceTooLarge: return 3;
    case ErrorCode::FieldTooSmall: return 4;
    case ErrorCode::SearchExhausted: return 5;
    default: return 1;
  }
}

JobResult error_result(int exit_code, std::string_view code, const std::string& message) {
  json doc;
  doc["error"] = {{"code", code}, {"message", message}};
  return {exit_code, doc.dump(2) + "\n"};
}

}  // namespace

JobResult usage_error(const std::string& message) { return error_result(2, "Usage", message); }

JobResult run(const JobSpec& job) {
  try {
    if (job.level < 0) throw Error(ErrorCode::InvalidArgument, "--level must be nonnegative");
    json doc;
    if (job.command == "bound") {
      doc = run_bound(job, false);
    } else if (job.command == "oracle") {
      doc = run_bound(job, true);
    } else if (job.command == "construct") {
      doc = run_construct(job);
    } else if (job.command == "verify") {
      doc = run_verify(job);
    } else if (job.command == "report") {
      doc = run_report(job);
    } else {
      return usage_error("unknown command '" + job.command + "'");
    }
    return {0, doc.dump(2) + "\n"};
  } catch (const Error& e) {
    return error_result(exit_code_for(e.code()), to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    return error_result(2, "Parse", e.what());
  } catch (const std::exception& e) {
    return error_result(1, "Internal", e.what());
  }
}

}  // namespace snfc::cli
