#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snfc/gf_matrix.hpp"
#include "snfc/network.hpp"

namespace snfc {

/// Dimensions of an (ℓ, n) code built from a rate-R base code.
struct CodeParameters {
  int s = 0;    ///< number of sources
  int R = 0;    ///< coordinates per source block (ℓ + z)
  int k = 0;    ///< columns of T, also n
  int r = 0;    ///< security level
  int ell = 0;  ///< message symbols per source
  int z = 0;    ///< key symbols per source

  int n() const noexcept { return k; }
  int source_dim() const noexcept { return s * R; }

  friend bool operator==(const CodeParameters&, const CodeParameters&) = default;
};

/// ℓ = R - rk, z = rk. Throws SecurityLevelTooHigh when rk > R.
CodeParameters make_parameters(int s, int R, int k, int r);

/// Linear (secure) network code over a fixed network.
///
/// Source vector x_S concatenates per-source blocks of R coordinates; in each
/// block the first ℓ are messages and the last z are keys.
///
/// local[e] for an edge out of source σ_i is R×n and maps x_i to y_e.
/// For any other edge it stacks A_{d,e} (n×n) for d in In(tail(e)) in order,
/// so y_e = [y_d ...] · local[e].
///
/// global[e] is (sR)×n with y_e = x_S · global[e]. The decoder maps the
/// concatenated sink inputs [y_d : d ∈ In(ρ)] to ℓk outputs ordered by
/// (target column j, message index t).
struct LinearSecureCode {
  Network network;
  Field field;
  CodeParameters params;
  GfMatrix target;                   ///< T, s×k
  std::optional<GfMatrix> security;  ///< Υ, when attached
  std::vector<GfMatrix> local;
  std::vector<GfMatrix> global;
  GfMatrix decoder;
};

/// Global matrices implied by the local recursion.
std::vector<GfMatrix> recompute_globals(const Network& net, const Field& field, const CodeParameters& params,
                                        const std::vector<GfMatrix>& local);

/// Assembles a code from locals, deriving the global matrices.
LinearSecureCode make_linear_code(Network net, GfMatrix target, CodeParameters params, std::vector<GfMatrix> local,
                                  GfMatrix decoder);

/// [ĝ_e : e ∈ W] in the order of W.
GfMatrix wiretap_matrix(const LinearSecureCode& code, const EdgeSet& wiretap);
/// [ĝ_d : d ∈ In(ρ)].
GfMatrix sink_matrix(const LinearSecureCode& code);

std::string serialize_code(const LinearSecureCode& code);
LinearSecureCode parse_code(std::string_view json_text);
LinearSecureCode read_code_file(const std::string& path);

}  // namespace snfc
