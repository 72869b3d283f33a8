#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "snfc/function_table.hpp"
#include "snfc/linear_code.hpp"
#include "snfc/rational.hpp"

namespace snfc {

/// Symbols carried by every edge for one source realization, indexed by edge.
struct TrafficTrace {
  std::vector<std::vector<Elem>> blocks;
  /// Local recursion agreed with x_S · ĝ_e on every edge.
  bool consistent = true;

  const std::vector<Elem>& on(EdgeId e) const { return blocks.at(static_cast<std::size_t>(e)); }
};

struct VerifierLimits {
  std::uint64_t exhaustive_budget = std::uint64_t{1} << 20;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
};

/// Propagates x_S (length s·R) through the local encoders in topological order.
TrafficTrace simulate(const LinearSecureCode& code, std::span<const Elem> x);
/// Decoder output for a trace, ordered by (target column j, message index t).
std::vector<Elem> decode(const LinearSecureCode& code, const TrafficTrace& trace);

struct ComputabilityResult {
  bool ok = false;
  bool algebraic = false;  ///< G_In(ρ)·D = T_ℓ and the system is solvable
  bool consistent = false; ///< stored globals match the local recursion
  bool sampled_ok = false;
  std::string mode;        ///< "exhaustive" or "probabilistic"
  std::uint64_t realizations = 0;
};

ComputabilityResult computability_details(const LinearSecureCode& code, const VerifierLimits& limits = {});
bool check_computability(const LinearSecureCode& code, const VerifierLimits& limits = {});

/// ⟨G_W⟩ ∩ ⟨S⟩ = {0} for every W in the family (default Ŵ'_r).
bool check_security_algebraic(const LinearSecureCode& code, const GfMatrix& upsilon,
                              const std::optional<std::vector<EdgeSet>>& family = std::nullopt);
bool wiretap_is_secure(const LinearSecureCode& code, const GfMatrix& security_block, const EdgeSet& wiretap);

/// Exact mutual information: `zero` is decided on integer counts.
struct EntropyBits {
  double bits = 0.0;
  bool zero = true;
};

/// I(Y_W; M_S · S) with S built from Υ.
EntropyBits mutual_information_oracle(const LinearSecureCode& code, const EdgeSet& wiretap, const GfMatrix& upsilon,
                                      const VerifierLimits& limits = {});
/// ζ applied to each message index t separately; input alphabets must have size q.
EntropyBits mutual_information_oracle(const LinearSecureCode& code, const EdgeSet& wiretap,
                                      const TabularFunction& zeta, const VerifierLimits& limits = {});

struct WiretapVerdict {
  EdgeSet edges;
  std::optional<bool> algebraic_ok;
  std::optional<EntropyBits> mi;
};

struct SecurityReport {
  bool admissible = false;
  Rational rate;
  bool computability = false;
  std::string computability_mode;
  bool consistent = false;
  std::vector<WiretapVerdict> per_wiretap;
};

/// All edge subsets with 1..level members, ordered by size then lexicographically.
std::vector<EdgeSet> all_wiretaps_up_to(const Network& net, int level);

SecurityReport full_report(const LinearSecureCode& code, const GfMatrix& upsilon, int level,
                           const std::optional<std::vector<EdgeSet>>& family = std::nullopt,
                           const VerifierLimits& limits = {});
/// Sorted-key JSON; edges are listed by id, mi_bits is null when skipped.
std::string report_to_json(const SecurityReport& report, const Network& net, int indent = 2);

/// Arbitrary (possibly nonlinear) scalar code given by lookup tables.
///
/// A source edge reads index msg·|K_i| + key. Any other edge, and the
/// decoder, reads its inputs in mixed radix over the in-edges with the
/// first in-edge most significant.
struct TabularCode {
  Network network;
  std::vector<std::uint32_t> message_alphabet;
  std::vector<std::uint32_t> key_alphabet;
  std::uint32_t edge_alphabet = 2;
  std::vector<std::vector<std::uint32_t>> edge_tables;
  std::vector<std::uint32_t> decoder;
  TabularFunction target;
};

void validate_tabular_code(const TabularCode& code);
std::uint64_t tabular_realization_count(const TabularCode& code);
std::vector<std::uint32_t> simulate(const TabularCode& code, std::span<const std::uint32_t> messages,
                                    std::span<const std::uint32_t> keys);
std::uint32_t decode(const TabularCode& code, const std::vector<std::uint32_t>& symbols);
ComputabilityResult computability_details(const TabularCode& code, const VerifierLimits& limits = {});
bool check_computability(const TabularCode& code, const VerifierLimits& limits = {});
EntropyBits mutual_information_oracle(const TabularCode& code, const EdgeSet& wiretap, const TabularFunction& zeta,
                                      const VerifierLimits& limits = {});
/// Checks every wiretap set with 1..level edges by exhaustive MI.
SecurityReport full_report(const TabularCode& code, const TabularFunction& zeta, int level,
                           const VerifierLimits& limits = {});

std::string serialize_tabular_code(const TabularCode& code);
TabularCode parse_tabular_code(std::string_view json_text);

}  // namespace snfc
