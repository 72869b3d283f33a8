#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "snfc/cut_lattice.hpp"
#include "snfc/linear_code.hpp"
#include "snfc/rational.hpp"

namespace snfc {

/// Per-source invertible blocks B_1..B_s.
struct TransformMatrix {
  std::vector<GfMatrix> blocks;

  GfMatrix block_diagonal() const;
  /// diag(B_1^{-1}, ..., B_s^{-1}); throws Singular if a block is not invertible.
  GfMatrix inverse_block_diagonal() const;
  static TransformMatrix shared(const GfMatrix& block, int sources);
};

struct BaseCodeOptions {
  std::uint64_t seed = 1;
  int retry_budget = 64;
};

/// Candidates are scanned lexicographically (first coordinate most
/// significant) when q^R is at most `exhaustive_limit`; larger spaces are
/// sampled with `random_draws` seeded draws per vector.
struct SelectOptions {
  /// Draw candidates at random before falling back to the lexicographic scan.
  bool random_order = false;
  std::uint64_t seed = 1;
  std::uint64_t exhaustive_limit = std::uint64_t{1} << 14;
  std::uint64_t random_draws = std::uint64_t{1} << 14;
  /// Forced leading choices b_1, b_2, ...
  std::vector<std::vector<Elem>> prefix;
};

struct SearchOptions {
  std::uint64_t seed = 1;
  int budget = 4096;
  bool distinct_blocks = false;
};

struct PreprocessedTarget {
  GfMatrix target;
  Network network;
  std::vector<int> kept_sources;  ///< original source positions
};

PreprocessedTarget preprocess_target(const GfMatrix& target, const Network& net);

/// Plain (R, k) code computing x_S · (T ⊗ I_R) at the sink.
LinearSecureCode build_base_code(const Network& net, const GfMatrix& target, int rate,
                                 const BaseCodeOptions& options = {});

/// S with per-source blocks [Υ_i ⊗ I_ℓ ; 0_{z × ℓ r_Υ}].
GfMatrix build_security_matrix(const GfMatrix& upsilon, const CodeParameters& params);
/// T_{ℓ}: per (i, j) block [T_ij I_ℓ ; 0_{z×ℓ}], columns ordered by (j, t).
GfMatrix build_target_block(const GfMatrix& target, const CodeParameters& params);

TransformMatrix select_b_vectors(const LinearSecureCode& base, const CodeParameters& params,
                                 const std::vector<EdgeSet>& wiretaps, const SelectOptions& options = {});
TransformMatrix search_transform(const LinearSecureCode& base, const CodeParameters& params,
                                 const GfMatrix& target, const GfMatrix& security,
                                 const std::vector<EdgeSet>& wiretaps, const SearchOptions& options = {});
bool verify_transform(const TransformMatrix& transform, const LinearSecureCode& base, const CodeParameters& params,
                      const GfMatrix& target, const GfMatrix& security, const std::vector<EdgeSet>& wiretaps);
LinearSecureCode apply_transform(const LinearSecureCode& base, const TransformMatrix& transform,
                                 const CodeParameters& params);

std::uint64_t field_size_bound(int sources, std::size_t exact_wiretaps);
Rational capacity_lower_bound(int c_min, int k, int r);

struct ConstructionOptions {
  BaseCodeOptions base;
  SearchOptions search;
  bool allow_search = true;
};

struct ConstructionResult {
  LinearSecureCode code;
  std::string scheme;  ///< "sequential" or "search"
  std::size_t exact_wiretaps = 0;
  std::uint64_t field_bound = 0;
  Rational lower_bound;
  int c_min = 0;
};

/// Base code, then the sequential b-vector scheme, then randomized search.
ConstructionResult construct_secure_code(const Network& net, const GfMatrix& target, const GfMatrix& upsilon,
                                         int level, std::optional<int> rate = std::nullopt,
                                         const ConstructionOptions& options = {});

}  // namespace snfc
