#include "snfc/code_builder.hpp"

#include <algorithm>
#include <random>

#include "snfc/error.hpp"

namespace snfc {

namespace {

Elem draw(std::mt19937_64& rng, const Field& f) { return static_cast<Elem>(rng() % f.order()); }

Elem draw_nonzero(std::mt19937_64& rng, const Field& f) { return static_cast<Elem>(1 + rng() % (f.order() - 1)); }

GfMatrix random_matrix(std::mt19937_64& rng, const Field& f, std::size_t rows, std::size_t cols) {
  GfMatrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = draw(rng, f);
  }
  return m;
}

void check_target(const Network& net, const GfMatrix& target) {
  if (target.rows() != net.source_count()) throw Error(ErrorCode::ShapeMismatch, "target matrix needs one row per source");
  if (target.cols() == 0) throw Error(ErrorCode::ShapeMismatch, "target matrix has no columns");
  for (std::size_t r = 0; r < target.rows(); ++r) {
    if (target.row_is_zero(r)) throw Error(ErrorCode::InvalidArgument, "target matrix has an all-zero row");
  }
}

// Vector with digits of `code` in base q, first coordinate most significant.
std::vector<Elem> vector_from_code(std::uint64_t code, std::uint32_t q, std::size_t dim) {
  std::vector<Elem> v(dim);
  for (std::size_t i = dim; i-- > 0;) {
    v[i] = static_cast<Elem>(code % q);
    code /= q;
  }
  return v;
}

}  // namespace

GfMatrix TransformMatrix::block_diagonal() const { return snfc::block_diagonal(blocks); }

GfMatrix TransformMatrix::inverse_block_diagonal() const {
  std::vector<GfMatrix> inv;
  for (const auto& b : blocks) {
    auto i = inverse(b);
    if (!i) throw Error(ErrorCode::Singular, "transform block is not invertible");
    inv.push_back(std::move(*i));
  }
  return snfc::block_diagonal(inv);
}

TransformMatrix TransformMatrix::shared(const GfMatrix& block, int sources) {
  return TransformMatrix{std::vector<GfMatrix>(static_cast<std::size_t>(sources), block)};
}

PreprocessedTarget preprocess_target(const GfMatrix& target, const Network& net) {
  if (target.rows() != net.source_count()) throw Error(ErrorCode::ShapeMismatch, "target matrix needs one row per source");
  NetworkDescription desc = net.describe();
  PreprocessedTarget out;
  std::vector<std::size_t> rows;
  std::vector<std::string> dropped;
  desc.sources.clear();
  for (std::size_t i = 0; i < net.source_count(); ++i) {
    const std::string& name = net.node_name(net.sources()[i]);
    if (target.row_is_zero(i)) {
      dropped.push_back(name);
    } else {
      desc.sources.push_back(name);
      rows.push_back(i);
      out.kept_sources.push_back(static_cast<int>(i));
    }
  }
  std::erase_if(desc.edges, [&](const NetworkDescription::EdgeDecl& e) {
    return std::find(dropped.begin(), dropped.end(), e.tail) != dropped.end();
  });
  out.target = target.select_rows(rows);
  if (rows.empty() || rank(out.target) < target.cols()) {
    throw Error(ErrorCode::NotFullColumnRank, "target matrix is not of full column rank after removing zero rows");
  }
  out.network = validate_network(desc);
  return out;
}

LinearSecureCode build_base_code(const Network& net, const GfMatrix& target, int rate, const BaseCodeOptions& options) {
  check_target(net, target);
  if (rate < 1) throw Error(ErrorCode::InvalidArgument, "rate must be at least 1");
  const int c_min = min_cut_capacity(net);
  if (rate > c_min) {
    throw Error(ErrorCode::RateExceedsMincut,
                "rate " + std::to_string(rate) + " exceeds the minimum cut " + std::to_string(c_min));
  }
  const Field& f = target.field();
  const auto R = static_cast<std::size_t>(rate);
  const auto k = target.cols();
  const Network rev = reverse_network(net);
  const CodeParameters params = make_parameters(static_cast<int>(net.source_count()), rate, static_cast<int>(k), 0);
  const GfMatrix expected = build_target_block(target, params);
  const NodeId sink = net.sink();
  const auto& sink_inputs = net.in_edges(sink);

  std::mt19937_64 rng(options.seed);
  for (int attempt = 0; attempt < options.retry_budget; ++attempt) {
    // Random multicast code on the reversed network. vec[e] is the global vector
    // of the reversed copy of e; coef[e][i] weights the i-th reversed edge
    // entering the tail of reversed e, i.e. net.out_edges(head(e))[i]. Even
    // attempts draw nonzero weights, odd attempts uniform ones.
    std::vector<std::vector<Elem>> vec(net.edge_count(), std::vector<Elem>(R, 0));
    std::vector<std::vector<Elem>> coef(net.edge_count());
    const bool nonzero_weights = attempt % 2 == 0;
    for (EdgeId e : rev.edges_in_topological_order()) {
      const NodeId from = rev.edge(e).tail;
      auto& v = vec[static_cast<std::size_t>(e)];
      if (from == sink) {
        for (auto& x : v) x = draw(rng, f);
        continue;
      }
      const auto& feeders = rev.in_edges(from);
      auto& c = coef[static_cast<std::size_t>(e)];
      c.resize(feeders.size());
      for (std::size_t i = 0; i < feeders.size(); ++i) {
        c[i] = nonzero_weights ? draw_nonzero(rng, f) : draw(rng, f);
        const auto& src = vec[static_cast<std::size_t>(feeders[i])];
        for (std::size_t t = 0; t < R; ++t) v[t] = f.add(v[t], f.mul(c[i], src[t]));
      }
    }

    // Each source must recover all R symbols in the reversed code.
    std::vector<GfMatrix> dec(net.source_count());
    bool ok = true;
    for (std::size_t i = 0; i < net.source_count() && ok; ++i) {
      const auto& outs = net.out_edges(net.sources()[i]);
      GfMatrix fi(f, R, outs.size());
      for (std::size_t j = 0; j < outs.size(); ++j) {
        for (std::size_t t = 0; t < R; ++t) fi(t, j) = vec[static_cast<std::size_t>(outs[j])][t];
      }
      auto d = solve_right(fi, GfMatrix::identity(f, R));
      if (!d) {
        ok = false;
      } else {
        dec[i] = std::move(*d);
      }
    }
    if (!ok) continue;

    // Transpose duality: forward weight of (e -> d) is the reversed weight of (d -> e).
    std::vector<GfMatrix> local(net.edge_count());
    for (std::size_t d = 0; d < net.edge_count(); ++d) {
      const NodeId tail = net.edge(static_cast<EdgeId>(d)).tail;
      const int pos = net.source_index(tail);
      if (pos >= 0) {
        const auto& outs = net.out_edges(tail);
        const auto j = static_cast<std::size_t>(std::find(outs.begin(), outs.end(), static_cast<EdgeId>(d)) - outs.begin());
        GfMatrix a(f, R, k);
        for (std::size_t col = 0; col < k; ++col) {
          const Elem scale = target(static_cast<std::size_t>(pos), col);
          for (std::size_t t = 0; t < R; ++t) a(t, col) = f.mul(scale, dec[static_cast<std::size_t>(pos)](j, t));
        }
        local[d] = std::move(a);
      } else {
        const auto& ins = net.in_edges(tail);
        const auto& outs = net.out_edges(tail);
        const auto j = static_cast<std::size_t>(std::find(outs.begin(), outs.end(), static_cast<EdgeId>(d)) - outs.begin());
        GfMatrix a(f, ins.size() * k, k);
        for (std::size_t p = 0; p < ins.size(); ++p) {
          const Elem w = coef[static_cast<std::size_t>(ins[p])][j];
          for (std::size_t col = 0; col < k; ++col) a(p * k + col, col) = w;
        }
        local[d] = std::move(a);
      }
    }
    GfMatrix decoder(f, sink_inputs.size() * k, R * k);
    for (std::size_t p = 0; p < sink_inputs.size(); ++p) {
      const auto& v = vec[static_cast<std::size_t>(sink_inputs[p])];
      for (std::size_t col = 0; col < k; ++col) {
        for (std::size_t t = 0; t < R; ++t) decoder(p * k + col, col * R + t) = v[t];
      }
    }
    LinearSecureCode code = make_linear_code(net, target, params, std::move(local), std::move(decoder));
    if (sink_matrix(code) * code.decoder == expected) return code;
  }
  throw Error(ErrorCode::MulticastConstructionFailed,
              "no valid multicast code within " + std::to_string(options.retry_budget) + " attempts over GF(" +
                  f.to_string() + ")");
}

GfMatrix build_security_matrix(const GfMatrix& upsilon, const CodeParameters& params) {
  if (upsilon.rows() != static_cast<std::size_t>(params.s)) {
    throw Error(ErrorCode::ShapeMismatch, "security matrix needs one row per source");
  }
  const Field& f = upsilon.field();
  const auto ell = static_cast<std::size_t>(params.ell);
  const auto R = static_cast<std::size_t>(params.R);
  const auto cols = upsilon.cols();
  GfMatrix s(f, static_cast<std::size_t>(params.source_dim()), ell * cols);
  for (std::size_t i = 0; i < upsilon.rows(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const Elem v = upsilon(i, j);
      for (std::size_t t = 0; t < ell; ++t) s(i * R + t, j * ell + t) = v;
    }
  }
  return s;
}

GfMatrix build_target_block(const GfMatrix& target, const CodeParameters& params) {
  if (target.rows() != static_cast<std::size_t>(params.s) || target.cols() != static_cast<std::size_t>(params.k)) {
    throw Error(ErrorCode::ShapeMismatch, "target matrix shape disagrees with the parameters");
  }
  const auto ell = static_cast<std::size_t>(params.ell);
  const auto R = static_cast<std::size_t>(params.R);
  GfMatrix out(target.field(), static_cast<std::size_t>(params.source_dim()), ell * target.cols());
  for (std::size_t i = 0; i < target.rows(); ++i) {
    for (std::size_t j = 0; j < target.cols(); ++j) {
      for (std::size_t t = 0; t < ell; ++t) out(i * R + t, j * ell + t) = target(i, j);
    }
  }
  return out;
}

TransformMatrix select_b_vectors(const LinearSecureCode& base, const CodeParameters& params,
                                 const std::vector<EdgeSet>& wiretaps, const SelectOptions& options) {
  const Field& f = base.field;
  const auto R = static_cast<std::size_t>(params.R);
  const auto s = static_cast<std::size_t>(params.s);
  const std::uint32_t q = f.order();
  if (base.params.R != params.R || base.params.s != params.s) {
    throw Error(ErrorCode::ShapeMismatch, "base code and parameters disagree on R or s");
  }

  // One running subspace per (W, source): ⟨G_W^{(σ_i)}⟩ + ⟨b_1, ..., b_{j-1}⟩.
  std::vector<SpanBasis> avoid;
  for (const auto& w : wiretaps) {
    const GfMatrix gw = wiretap_matrix(base, w);
    for (std::size_t i = 0; i < s; ++i) {
      SpanBasis b(f, R);
      b.insert_columns(gw.block(i * R, 0, R, gw.cols()));
      avoid.push_back(std::move(b));
    }
  }
  SpanBasis chosen(f, R);
  std::vector<std::vector<Elem>> picks;

  std::uint64_t space = 1;
  bool exhaustive = true;
  for (std::size_t i = 0; i < R && exhaustive; ++i) {
    exhaustive = space <= options.exhaustive_limit / q;
    space *= q;
  }
  std::mt19937_64 rng(options.seed);

  auto admissible = [&](const std::vector<Elem>& v, bool guarded) {
    bool nonzero = false;
    for (Elem x : v) nonzero = nonzero || x != 0;
    if (!nonzero || chosen.contains(v)) return false;
    if (!guarded) return true;
    for (const auto& b : avoid) {
      if (b.contains(v)) return false;
    }
    return true;
  };
  auto accept = [&](const std::vector<Elem>& v, bool guarded) {
    chosen.insert(v);
    if (guarded) {
      for (auto& b : avoid) b.insert(v);
    }
    picks.push_back(v);
  };

  for (std::size_t j = 0; j < R; ++j) {
    const bool guarded = j < static_cast<std::size_t>(params.ell);
    if (j < options.prefix.size()) {
      const auto& v = options.prefix[j];
      if (v.size() != R) throw Error(ErrorCode::ShapeMismatch, "prefix vector has the wrong length");
      if (!admissible(v, guarded)) throw Error(ErrorCode::InvalidArgument, "prefix vector violates the avoidance condition");
      accept(v, guarded);
      continue;
    }
    bool found = false;
    if (options.random_order || !exhaustive) {
      for (std::uint64_t t = 0; t < options.random_draws && !found; ++t) {
        std::vector<Elem> v(R);
        for (auto& x : v) x = draw(rng, f);
        if (admissible(v, guarded)) {
          accept(v, guarded);
          found = true;
        }
      }
    }
    for (std::uint64_t code = 1; exhaustive && code < space && !found; ++code) {
      const auto v = vector_from_code(code, q, R);
      if (admissible(v, guarded)) {
        accept(v, guarded);
        found = true;
      }
    }
    if (!found) {
      throw Error(ErrorCode::FieldTooSmall, "no admissible b_" + std::to_string(j + 1) + " in GF(" + f.to_string() +
                                                ")^" + std::to_string(R));
    }
  }
  GfMatrix cols(f, R, R);
  for (std::size_t j = 0; j < R; ++j) {
    for (std::size_t t = 0; t < R; ++t) cols(t, j) = picks[j][t];
  }
  auto b = inverse(cols);
  if (!b) throw Error(ErrorCode::Singular, "selected b-vectors are dependent");
  return TransformMatrix::shared(*b, params.s);
}

bool verify_transform(const TransformMatrix& transform, const LinearSecureCode& base, const CodeParameters& params,
                      const GfMatrix& target, const GfMatrix& security, const std::vector<EdgeSet>& wiretaps) {
  if (transform.blocks.size() != static_cast<std::size_t>(params.s)) return false;
  GfMatrix inv;
  try {
    inv = transform.inverse_block_diagonal();
  } catch (const Error&) {
    return false;
  }
  const GfMatrix t_block = inv * build_target_block(target, params);
  if (!column_span_contains(sink_matrix(base), t_block)) return false;
  const GfMatrix s_block = inv * security;
  for (const auto& w : wiretaps) {
    if (!subspaces_intersect_trivially(s_block, wiretap_matrix(base, w))) return false;
  }
  return true;
}

TransformMatrix search_transform(const LinearSecureCode& base, const CodeParameters& params, const GfMatrix& target,
                                 const GfMatrix& security, const std::vector<EdgeSet>& wiretaps,
                                 const SearchOptions& options) {
  if (options.budget < 1) throw Error(ErrorCode::InvalidArgument, "search budget must be at least 1");
  const Field& f = base.field;
  const auto R = static_cast<std::size_t>(params.R);
  std::mt19937_64 rng(options.seed);
  for (int trial = 0; trial < options.budget; ++trial) {
    TransformMatrix candidate;
    bool singular = false;
    const std::size_t count = options.distinct_blocks ? static_cast<std::size_t>(params.s) : 1;
    for (std::size_t i = 0; i < count && !singular; ++i) {
      GfMatrix b = random_matrix(rng, f, R, R);
      singular = rank(b) != R;
      candidate.blocks.push_back(std::move(b));
    }
    if (singular) continue;
    if (!options.distinct_blocks) candidate = TransformMatrix::shared(candidate.blocks.front(), params.s);
    if (verify_transform(candidate, base, params, target, security, wiretaps)) return candidate;
  }
  throw Error(ErrorCode::SearchExhausted,
              "no valid transform within " + std::to_string(options.budget) + " random trials");
}

LinearSecureCode apply_transform(const LinearSecureCode& base, const TransformMatrix& transform,
                                 const CodeParameters& params) {
  if (transform.blocks.size() != static_cast<std::size_t>(params.s) || base.params.R != params.R ||
      base.params.s != params.s || base.params.k != params.k) {
    throw Error(ErrorCode::ShapeMismatch, "transform does not match the base code");
  }
  const Network& net = base.network;
  LinearSecureCode code = base;
  code.params = params;
  const GfMatrix full = transform.block_diagonal();
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    code.global[e] = full * base.global[e];
    const int pos = net.source_index(net.edge(static_cast<EdgeId>(e)).tail);
    if (pos >= 0) code.local[e] = transform.blocks[static_cast<std::size_t>(pos)] * base.local[e];
  }
  auto d = solve_right(sink_matrix(code), build_target_block(code.target, params));
  if (!d) throw Error(ErrorCode::InvalidArgument, "transformed code cannot compute the target");
  code.decoder = std::move(*d);
  return code;
}

std::uint64_t field_size_bound(int sources, std::size_t exact_wiretaps) {
  return static_cast<std::uint64_t>(sources) * exact_wiretaps;
}

Rational capacity_lower_bound(int c_min, int k, int r) {
  if (k < 1 || r < 0) throw Error(ErrorCode::InvalidArgument, "k must be positive and r nonnegative");
  if (static_cast<long long>(r) * k > c_min) {
    throw Error(ErrorCode::SecurityLevelTooHigh, "rk exceeds the minimum cut capacity");
  }
  return Rational(c_min, k) - Rational(r);
}

ConstructionResult construct_secure_code(const Network& net, const GfMatrix& target, const GfMatrix& upsilon, int level,
                                         std::optional<int> rate, const ConstructionOptions& options) {
  check_target(net, target);
  ConstructionResult out;
  out.c_min = min_cut_capacity(net);
  const int k = static_cast<int>(target.cols());
  out.lower_bound = capacity_lower_bound(out.c_min, k, level);
  const int R = rate.value_or(out.c_min);
  const CodeParameters params = make_parameters(static_cast<int>(net.source_count()), R, k, level);
  const PrimaryWiretapFamily fam = enumerate_primary_wiretaps(net, level);
  out.exact_wiretaps = fam.exact_members.size();
  out.field_bound = field_size_bound(params.s, out.exact_wiretaps);

  const LinearSecureCode base = build_base_code(net, target, R, options.base);
  const GfMatrix security = build_security_matrix(upsilon, params);
  TransformMatrix transform;
  try {
    transform = select_b_vectors(base, params, fam.exact_members);
    out.scheme = "sequential";
    if (!verify_transform(transform, base, params, target, security, fam.exact_members)) {
      throw Error(ErrorCode::FieldTooSmall, "sequential choice failed verification");
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FieldTooSmall || !options.allow_search) throw;
    transform = search_transform(base, params, target, security, fam.exact_members, options.search);
    out.scheme = "search";
  }
  out.code = apply_transform(base, transform, params);
  out.code.security = upsilon;
  return out;
}

}  // namespace snfc
