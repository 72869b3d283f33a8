#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snfc/gf_matrix.hpp"
#include "snfc/network.hpp"

namespace snfc {

struct Alphabet {
  std::uint32_t size = 1;
  std::optional<std::uint32_t> zero;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

/// Finite function on a product of source alphabets, stored as a dense table.
///
/// Tuples are indexed in mixed radix with the first source most significant.
class TabularFunction {
 public:
  TabularFunction() = default;
  TabularFunction(std::vector<Alphabet> inputs, Alphabet output, std::vector<std::uint32_t> table);

  const std::vector<Alphabet>& inputs() const noexcept { return inputs_; }
  const Alphabet& output() const noexcept { return output_; }
  const std::vector<std::uint32_t>& table() const noexcept { return table_; }
  std::size_t arity() const noexcept { return inputs_.size(); }
  std::uint64_t domain_size() const noexcept { return table_.size(); }

  std::uint32_t operator()(const std::vector<std::uint32_t>& tuple) const;
  std::uint32_t at(std::uint64_t index) const { return table_.at(index); }
  std::uint64_t index_of(const std::vector<std::uint32_t>& tuple) const;
  std::vector<std::uint32_t> tuple_of(std::uint64_t index) const;
  bool is_constant() const noexcept;

  friend bool operator==(const TabularFunction&, const TabularFunction&) = default;

 private:
  std::vector<Alphabet> inputs_;
  Alphabet output_;
  std::vector<std::uint32_t> table_;
};

/// Partition of a finite domain, blocks numbered by first appearance.
class Partition {
 public:
  Partition() = default;
  /// Canonicalizes arbitrary labels.
  explicit Partition(const std::vector<std::uint64_t>& labels);

  std::size_t domain_size() const noexcept { return block_.size(); }
  std::uint32_t block_count() const noexcept { return count_; }
  std::uint32_t block_of(std::size_t i) const { return block_.at(i); }
  const std::vector<std::uint32_t>& blocks() const noexcept { return block_; }
  /// True iff every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::uint32_t> block_;
  std::uint32_t count_ = 0;
};

/// f_C both on A_{I_C} and lifted to the full source domain.
struct StrongDecomposition {
  SourceSet i_set;
  Partition on_subset;
  Partition lifted;
};

struct GeneralBound {
  double value = 0.0;  ///< +inf when no valid pair has positive entropy
  std::optional<EdgeSet> cut;
  std::optional<EdgeSet> wiretap;
};

struct Theorem2Bound {
  double value = 0.0;
  std::optional<EdgeSet> cut;
};

struct CombinedBound {
  double value = 0.0;
  GeneralBound general;
  std::optional<Theorem2Bound> theorem2;  ///< absent without designated zeros
};

struct FunctionLimits {
  int max_edges = 18;
};

constexpr double kEntropyTolerance = 1e-9;

/// Groups the full domain by g's value. When `subset` is given, g must not
/// depend on coordinates outside it.
Partition induced_partition(const TabularFunction& g, std::optional<SourceSet> subset = std::nullopt);

std::optional<StrongDecomposition> strong_decomposition_for(const TabularFunction& f, SourceSet i_set);
std::optional<StrongDecomposition> strong_decomposition(const Network& net, const EdgeSet& cut,
                                                        const TabularFunction& f);
Partition maximal_common_function(const Partition& a, const Partition& b);
double entropy_uniform(const Partition& p);
/// H(f(M_I, 0)) with the remaining coordinates pinned to their zeros.
double entropy_pinned(const TabularFunction& f, SourceSet i_set);

GeneralBound general_upper_bound(const Network& net, const TabularFunction& f, const TabularFunction& zeta, int level,
                                 std::uint32_t edge_alphabet, const FunctionLimits& limits = {});
Theorem2Bound theorem2_upper_bound(const Network& net, const TabularFunction& f, std::uint32_t edge_alphabet,
                                   const FunctionLimits& limits = {});
CombinedBound combined_upper_bound(const Network& net, const TabularFunction& f, const TabularFunction& zeta,
                                   int level, std::uint32_t edge_alphabet, const FunctionLimits& limits = {});

/// x_S -> x_S · M with each source contributing one field symbol; zero = 0.
TabularFunction tabular_from_matrix(const GfMatrix& m);
TabularFunction identity_function(const std::vector<Alphabet>& inputs);

/// Text format: `alphabets a1 ... as / out o`, optional `zeros z1 ... zs [/ zo]`
/// (use `-` for none), then `i1 ... is -> o` lines covering the domain.
TabularFunction parse_tabular(std::string_view text);
TabularFunction read_tabular_file(const std::string& path);
std::string format_tabular(const TabularFunction& f);

}  // namespace snfc
