#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <functional>
#include <map>
#include <string>

namespace oracle {

namespace {

std::vector<char> reachable_from(const Network& net, snfc::NodeId start, std::uint64_t skip_edges) {
  std::vector<char> seen(net.node_count(), 0);
  std::vector<snfc::NodeId> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
      const auto& edge = net.edge(static_cast<snfc::EdgeId>(e));
      if (edge.tail != v || ((skip_edges >> e) & 1u)) continue;
      if (!seen[static_cast<std::size_t>(edge.head)]) {
        seen[static_cast<std::size_t>(edge.head)] = 1;
        stack.push_back(edge.head);
      }
    }
  }
  return seen;
}

long inverse_mod(long a, long p) {
  long r = 1;
  for (long e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p) {
    if (e & 1) r = r * b % p;
  }
  return r;
}

template <typename Fn>
void for_each_submask(std::uint64_t mask, Fn fn) {
  for (std::uint64_t sub = mask;; sub = (sub - 1) & mask) {
    fn(sub);
    if (sub == 0) break;
  }
}

}  // namespace

Profile profile(const Network& net, std::uint64_t cut_mask) {
  Profile out;
  const auto sink = net.sink();
  for (std::size_t i = 0; i < net.source_count(); ++i) {
    const auto src = net.sources()[i];
    const auto all = reachable_from(net, src, 0);
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
      if (((cut_mask >> e) & 1u) && all[static_cast<std::size_t>(net.edge(static_cast<snfc::EdgeId>(e)).tail)]) {
        out.d |= std::uint64_t{1} << i;
      }
    }
    if (!reachable_from(net, src, cut_mask)[static_cast<std::size_t>(sink)]) out.i |= std::uint64_t{1} << i;
  }
  return out;
}

std::size_t rank_mod_p(std::vector<std::vector<long>> rows, long p) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] % p == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const long inv = inverse_mod(rows[rank][c] % p, p);
    for (auto& v : rows[rank]) v = v * inv % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] % p == 0) continue;
      const long factor = rows[r][c] % p;
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] = ((rows[r][k] - factor * rows[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

std::size_t row_rank_mod_p(const GfMatrix& t, std::uint64_t rows) {
  std::vector<std::vector<long>> picked;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (!((rows >> r) & 1u)) continue;
    std::vector<long> row;
    for (std::size_t c = 0; c < t.cols(); ++c) row.push_back(static_cast<long>(t(r, c)));
    picked.push_back(std::move(row));
  }
  return rank_mod_p(std::move(picked), static_cast<long>(t.field().characteristic()));
}

namespace {

std::vector<Profile> all_profiles(const Network& net) {
  std::vector<Profile> out(std::size_t{1} << net.edge_count());
  for (std::uint64_t m = 0; m < out.size(); ++m) out[m] = profile(net, m);
  return out;
}

}  // namespace

Rational linear_bound(const Network& net, const GfMatrix& t, int r) {
  const auto prof = all_profiles(net);
  const std::uint64_t all = (std::uint64_t{1} << net.edge_count()) - 1;
  Rational best(LLONG_MAX / 4);
  for (std::uint64_t c = 1; c <= all; ++c) {
    const Profile pc = prof[c];
    if (pc.i == 0) continue;
    const auto rk = static_cast<std::int64_t>(row_rank_mod_p(t, pc.i));
    if (rk == 0) continue;
    for_each_submask(c, [&](std::uint64_t w) {
      if (std::popcount(w) > r) return;
      if ((prof[w].d & ~pc.i) != 0) return;
      best = std::min(best, Rational(std::popcount(c) - std::popcount(w), rk));
    });
  }
  return best;
}

Rational cut_ratio_bound(const Network& net, const GfMatrix& t) {
  const auto prof = all_profiles(net);
  const std::uint64_t all = (std::uint64_t{1} << net.edge_count()) - 1;
  Rational best(LLONG_MAX / 4);
  for (std::uint64_t c = 1; c <= all; ++c) {
    const Profile pc = prof[c];
    const auto rk = static_cast<std::int64_t>(row_rank_mod_p(t, pc.i));
    if (rk == 0) continue;
    best = std::min(best, Rational(std::popcount(c), rk));
  }
  return best;
}

int min_valid_difference(const Network& net, int r) {
  const auto prof = all_profiles(net);
  const std::uint64_t all = (std::uint64_t{1} << net.edge_count()) - 1;
  int best = INT_MAX;
  for (std::uint64_t c = 1; c <= all; ++c) {
    const Profile pc = prof[c];
    if (pc.i == 0) continue;
    for_each_submask(c, [&](std::uint64_t w) {
      if (std::popcount(w) > r || (prof[w].d & ~pc.i) != 0) return;
      best = std::min(best, std::popcount(c) - std::popcount(w));
    });
  }
  return best;
}

int two_regime_value(const Network& net, int r) {
  const auto prof = all_profiles(net);
  const std::uint64_t all = (std::uint64_t{1} << net.edge_count()) - 1;
  const std::uint64_t every_source = (std::uint64_t{1} << net.source_count()) - 1;
  int best = INT_MAX;
  for (std::uint64_t c = 1; c <= all; ++c) {
    const Profile pc = prof[c];
    if (pc.i == 0) continue;
    for_each_submask(c, [&](std::uint64_t w) {
      if (std::popcount(w) > r) return;
      const std::uint64_t dw = prof[w].d;
      const bool full = pc.i == every_source && dw == every_source;
      const bool spare = (pc.i & ~dw) != 0;
      if (full || spare) best = std::min(best, std::popcount(c) - std::popcount(w));
    });
  }
  return best;
}

int full_cut_value(const Network& net, int r) {
  const auto prof = all_profiles(net);
  const std::uint64_t all = (std::uint64_t{1} << net.edge_count()) - 1;
  const std::uint64_t every_source = (std::uint64_t{1} << net.source_count()) - 1;
  int best = INT_MAX;
  for (std::uint64_t c = 1; c <= all; ++c) {
    if (prof[c].i != every_source) continue;
    for_each_submask(c, [&](std::uint64_t w) {
      if (std::popcount(w) <= r) best = std::min(best, std::popcount(c) - std::popcount(w));
    });
  }
  return best;
}

bool separates(const Network& net, std::uint64_t cut, std::uint64_t targets, std::uint64_t sources) {
  for (std::size_t i = 0; i < net.source_count(); ++i) {
    if (!((sources >> i) & 1u)) continue;
    const auto seen = reachable_from(net, net.sources()[i], cut);
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
      const bool open_target = ((targets >> e) & 1u) && !((cut >> e) & 1u);
      if (open_target && seen[static_cast<std::size_t>(net.edge(static_cast<snfc::EdgeId>(e)).tail)]) return false;
    }
  }
  return true;
}

int mincut_size(const Network& net, std::uint64_t w) {
  const std::uint64_t d = profile(net, w).d;
  const std::uint64_t all = (std::uint64_t{1} << net.edge_count()) - 1;
  int best = std::popcount(w);
  for (std::uint64_t c = 0; c <= all; ++c) {
    if (std::popcount(c) < best && separates(net, c, w, d)) best = std::popcount(c);
  }
  return best;
}

std::vector<std::uint64_t> all_min_cuts(const Network& net, std::uint64_t w) {
  const std::uint64_t d = profile(net, w).d;
  const int size = mincut_size(net, w);
  const std::uint64_t all = (std::uint64_t{1} << net.edge_count()) - 1;
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 0; c <= all; ++c) {
    if (std::popcount(c) == size && separates(net, c, w, d)) out.push_back(c);
  }
  return out;
}

bool wiretap_le(const Network& net, std::uint64_t alpha, std::uint64_t beta) {
  return std::popcount(alpha) == mincut_size(net, beta) && separates(net, alpha, beta, profile(net, beta).d);
}

snfc::TabularFunction scalar_linear(const std::vector<long>& alpha, long p) {
  const std::size_t s = alpha.size();
  std::vector<snfc::Alphabet> inputs(s, snfc::Alphabet{static_cast<std::uint32_t>(p), 0u});
  std::size_t total = 1;
  for (std::size_t i = 0; i < s; ++i) total *= static_cast<std::size_t>(p);
  std::vector<std::uint32_t> table(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    long sum = 0;
    std::size_t rest = idx;
    for (std::size_t i = s; i-- > 0;) {
      sum += alpha[i] * static_cast<long>(rest % static_cast<std::size_t>(p));
      rest /= static_cast<std::size_t>(p);
    }
    table[idx] = static_cast<std::uint32_t>(sum % p);
  }
  return snfc::TabularFunction(inputs, snfc::Alphabet{static_cast<std::uint32_t>(p), 0u}, table);
}

std::vector<int> finest_common_coarsening(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = a.size();
  std::vector<int> rgs(n, 0);
  std::vector<int> best;
  int best_blocks = -1;
  auto coarser_than = [&](const std::vector<int>& p, const std::vector<int>& fine) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (fine[i] == fine[j] && p[i] != p[j]) return false;
      }
    }
    return true;
  };
  std::function<void(std::size_t, int)> walk = [&](std::size_t pos, int used) {
    if (pos == n) {
      if (used > best_blocks && coarser_than(rgs, a) && coarser_than(rgs, b)) {
        best_blocks = used;
        best = rgs;
      }
      return;
    }
    for (int v = 0; v <= used; ++v) {
      rgs[pos] = v;
      walk(pos + 1, std::max(used, v + 1));
    }
  };
  walk(0, 0);
  return best;
}

double entropy_of_labels(const std::vector<int>& labels) {
  std::map<int, double> counts;
  for (int l : labels) counts[l] += 1.0;
  double h = 0.0;
  const auto n = static_cast<double>(labels.size());
  for (const auto& [l, c] : counts) h -= c / n * std::log2(c / n);
  return h;
}

Network random_network(std::mt19937_64& rng, int max_sources, int max_edges, int max_internal) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  while (true) {
    const int s = pick(1, max_sources);
    const int m = pick(0, max_internal);
    std::vector<std::string> names;
    for (int i = 0; i < s; ++i) names.push_back("s" + std::to_string(i + 1));
    for (int i = 0; i < m; ++i) names.push_back("v" + std::to_string(i + 1));
    names.push_back("t");
    const int nodes = s + m + 1;
    std::vector<std::pair<int, int>> arcs;
    for (int v = 0; v < nodes - 1; ++v) arcs.emplace_back(v, pick(std::max(v + 1, s), nodes - 1));
    for (int v = s; v < nodes - 1; ++v) arcs.emplace_back(pick(0, v - 1), v);
    if (static_cast<int>(arcs.size()) > max_edges) continue;
    const int extra = pick(0, max_edges - static_cast<int>(arcs.size()));
    for (int i = 0; i < extra; ++i) {
      const int tail = pick(0, nodes - 2);
      arcs.emplace_back(tail, pick(std::max(tail + 1, s), nodes - 1));
    }
    std::sort(arcs.begin(), arcs.end());
    snfc::NetworkDescription desc;
    for (int i = 0; i < s; ++i) desc.sources.push_back(names[static_cast<std::size_t>(i)]);
    desc.sinks.push_back("t");
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      desc.edges.push_back({"e" + std::to_string(i + 1), names[static_cast<std::size_t>(arcs[i].first)],
                            names[static_cast<std::size_t>(arcs[i].second)]});
    }
    return snfc::validate_network(desc);
  }
}

GfMatrix random_matrix(std::mt19937_64& rng, const snfc::Field& f, std::size_t rows, std::size_t cols) {
  GfMatrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<snfc::Elem>(rng() % f.order());
  }
  return m;
}

GfMatrix random_full_rank_target(std::mt19937_64& rng, const snfc::Field& f, std::size_t s, std::size_t k) {
  while (true) {
    GfMatrix t = random_matrix(rng, f, s, k);
    bool zero_row = false;
    for (std::size_t r = 0; r < s; ++r) zero_row = zero_row || t.row_is_zero(r);
    if (!zero_row && snfc::rank(t) == k) return t;
  }
}

snfc::LinearSecureCode random_linear_code(std::mt19937_64& rng, const Network& net, const snfc::Field& f,
                                          const snfc::CodeParameters& params) {
  const auto k = static_cast<std::size_t>(params.k);
  std::vector<GfMatrix> local;
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const auto tail = net.edge(static_cast<snfc::EdgeId>(e)).tail;
    const std::size_t rows =
        net.source_index(tail) >= 0 ? static_cast<std::size_t>(params.R) : net.in_edges(tail).size() * k;
    local.push_back(random_matrix(rng, f, rows, k));
  }
  GfMatrix decoder = random_matrix(rng, f, net.in_edges(net.sink()).size() * k, static_cast<std::size_t>(params.ell) * k);
  GfMatrix target = random_matrix(rng, f, net.source_count(), k);
  return snfc::make_linear_code(net, target, params, std::move(local), std::move(decoder));
}

}  // namespace oracle
