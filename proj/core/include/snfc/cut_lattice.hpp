#pragma once

#include <optional>
#include <vector>

#include "snfc/gf_matrix.hpp"
#include "snfc/network.hpp"
#include "snfc/rational.hpp"

namespace snfc {

/// Enumeration caps for the exhaustive procedures.
struct LatticeLimits {
  int max_region_nodes = 20;  ///< |V_ρ| cap for the node-subset walk
  int max_edges = 18;         ///< |E| cap for subset enumeration over edges
};

/// Ŵ*_r and Ŵ'_r.
struct PrimaryWiretapFamily {
  int level = 0;
  std::vector<EdgeSet> members;
  std::vector<EdgeSet> exact_members;
};

struct GlobalCut {
  EdgeSet cut;
  SourceSet i_set;  ///< I^W_C
};

/// Ĉ*_W for one wiretap set, sorted by cut.
struct PrimaryGlobalCutFamily {
  EdgeSet wiretap;
  std::vector<GlobalCut> members;
};

/// A bound together with the pair attaining it.
///
/// `cut` is the full cut in N and contains `wiretap`, so the value re-evaluates
/// as (|cut| - |wiretap|) / Rank(T_{I_cut}).
struct BoundValue {
  Rational value;
  EdgeSet wiretap;
  EdgeSet cut;
};

/// Bottom ⊥ of W: the source-side minimum cut separating W from D_W.
EdgeSet primary_mincut_source_side(const Network& net, const EdgeSet& wiretap);

/// Top ⊤ of C in N_W: the sink-side minimum cut separating ρ from every node
/// that C disconnects from ρ in G_W.
EdgeSet primary_mincut_sink_side(const Network& net, const EdgeSet& wiretap, const EdgeSet& cut);

PrimaryWiretapFamily enumerate_primary_wiretaps(const Network& net, int level);

/// Walks node subsets of the residual network with interval pruning.
PrimaryGlobalCutFamily primary_global_cuts(const Network& net, const EdgeSet& wiretap,
                                           const LatticeLimits& limits = {});
/// Maps every qualifying edge subset of G_W to its top.
PrimaryGlobalCutFamily primary_global_cuts_oracle(const Network& net, const EdgeSet& wiretap,
                                                  const LatticeLimits& limits = {});

/// Rank of the rows of T selected by `rows`.
std::size_t row_rank(const GfMatrix& target, SourceSet rows);

/// (|cut| - |W|) / Rank(T_{I_cut}) when W ⊆ cut, D_W ⊆ I_cut and I_cut ≠ ∅.
std::optional<Rational> linear_pair_value(const Network& net, const GfMatrix& target, const EdgeSet& wiretap,
                                          const EdgeSet& cut);

BoundValue omega(const Network& net, const EdgeSet& wiretap, const GfMatrix& target,
                 const LatticeLimits& limits = {});
BoundValue algorithm2_bound(const Network& net, const GfMatrix& target, int level,
                            const LatticeLimits& limits = {});
BoundValue bruteforce_linear_bound(const Network& net, const GfMatrix& target, int level,
                                   const LatticeLimits& limits = {});

}  // namespace snfc
