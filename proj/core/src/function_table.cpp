#include "snfc/function_table.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "snfc/error.hpp"

namespace snfc {

namespace {

constexpr std::uint64_t kMaxDomain = std::uint64_t{1} << 24;

std::vector<std::uint32_t> canonical(const std::vector<std::uint64_t>& labels, std::uint32_t& count) {
  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  std::vector<std::uint32_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = ids.emplace(labels[i], static_cast<std::uint32_t>(ids.size()));
    out[i] = it->second;
  }
  count = static_cast<std::uint32_t>(ids.size());
  return out;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Splits full-domain indices into (index over I, index over the rest).
struct DomainSplit {
  std::vector<std::uint64_t> sub_index;
  std::vector<std::uint64_t> rest_index;
  std::uint64_t sub_size = 1;
  std::uint64_t rest_size = 1;
};

DomainSplit split_domain(const TabularFunction& f, SourceSet i_set) {
  DomainSplit d;
  const std::size_t s = f.arity();
  for (std::size_t i = 0; i < s; ++i) {
    (i_set.contains(static_cast<int>(i)) ? d.sub_size : d.rest_size) *= f.inputs()[i].size;
  }
  d.sub_index.resize(f.domain_size());
  d.rest_index.resize(f.domain_size());
  for (std::uint64_t x = 0; x < f.domain_size(); ++x) {
    const auto tuple = f.tuple_of(x);
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < s; ++i) {
      if (i_set.contains(static_cast<int>(i))) {
        a = a * f.inputs()[i].size + tuple[i];
      } else {
        b = b * f.inputs()[i].size + tuple[i];
      }
    }
    d.sub_index[x] = a;
    d.rest_index[x] = b;
  }
  return d;
}

void check_arity(const Network& net, const TabularFunction& f) {
  if (f.arity() != net.source_count()) {
    throw Error(ErrorCode::DomainMismatch, "function arity differs from the number of sources");
  }
}

void check_edges(const Network& net, const FunctionLimits& limits) {
  if (net.edge_count() > static_cast<std::size_t>(limits.max_edges) || net.edge_count() > 63) {
    throw Error(ErrorCode::InstanceTooLarge, "network has " + std::to_string(net.edge_count()) +
                                                 " edges; enumeration limit is " + std::to_string(limits.max_edges));
  }
}

// Strictly better value, or equal within tolerance and lexicographically smaller witness.
bool improves(double value, const EdgeSet& wiretap, const EdgeSet& cut, double best, const std::optional<EdgeSet>& bw,
              const std::optional<EdgeSet>& bc) {
  if (!bc) return true;
  if (value < best - kEntropyTolerance) return true;
  if (value > best + kEntropyTolerance) return false;
  if (bw && wiretap != *bw) return wiretap < *bw;
  return cut < *bc;
}

}  // namespace

TabularFunction::TabularFunction(std::vector<Alphabet> inputs, Alphabet output, std::vector<std::uint32_t> table)
    : inputs_(std::move(inputs)), output_(output), table_(std::move(table)) {
  std::uint64_t size = 1;
  for (const auto& a : inputs_) {
    if (a.size < 1) throw Error(ErrorCode::InvalidArgument, "alphabet size must be at least 1");
    if (a.zero && *a.zero >= a.size) throw Error(ErrorCode::InvalidArgument, "zero index outside alphabet");
    size *= a.size;
    if (size > kMaxDomain) throw Error(ErrorCode::InstanceTooLarge, "function domain too large");
  }
  if (output_.size < 1) throw Error(ErrorCode::InvalidArgument, "output alphabet size must be at least 1");
  if (table_.size() != size) throw Error(ErrorCode::ShapeMismatch, "table does not cover the product domain");
  for (auto v : table_) {
    if (v >= output_.size) throw Error(ErrorCode::InvalidArgument, "table value outside the output alphabet");
  }
}

std::uint64_t TabularFunction::index_of(const std::vector<std::uint32_t>& tuple) const {
  if (tuple.size() != inputs_.size()) throw Error(ErrorCode::ShapeMismatch, "tuple arity mismatch");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] >= inputs_[i].size) throw Error(ErrorCode::InvalidArgument, "tuple symbol outside alphabet");
    idx = idx * inputs_[i].size + tuple[i];
  }
  return idx;
}

std::vector<std::uint32_t> TabularFunction::tuple_of(std::uint64_t index) const {
  std::vector<std::uint32_t> t(inputs_.size());
  for (std::size_t i = inputs_.size(); i-- > 0;) {
    t[i] = static_cast<std::uint32_t>(index % inputs_[i].size);
    index /= inputs_[i].size;
  }
  return t;
}

std::uint32_t TabularFunction::operator()(const std::vector<std::uint32_t>& tuple) const {
  return table_[index_of(tuple)];
}

bool TabularFunction::is_constant() const noexcept {
  for (auto v : table_) {
    if (v != table_.front()) return false;
  }
  return true;
}

Partition::Partition(const std::vector<std::uint64_t>& labels) { block_ = canonical(labels, count_); }

bool Partition::refines(const Partition& coarser) const {
  if (coarser.domain_size() != domain_size()) return false;
  std::vector<std::int64_t> image(count_, -1);
  for (std::size_t i = 0; i < block_.size(); ++i) {
    auto& slot = image[block_[i]];
    if (slot < 0) {
      slot = coarser.block_[i];
    } else if (slot != coarser.block_[i]) {
      return false;
    }
  }
  return true;
}

Partition induced_partition(const TabularFunction& g, std::optional<SourceSet> subset) {
  if (subset) {
    const DomainSplit d = split_domain(g, *subset);
    std::vector<std::int64_t> seen(d.sub_size, -1);
    for (std::uint64_t x = 0; x < g.domain_size(); ++x) {
      auto& v = seen[d.sub_index[x]];
      if (v < 0) {
        v = g.at(x);
      } else if (v != static_cast<std::int64_t>(g.at(x))) {
        throw Error(ErrorCode::InvalidArgument, "function depends on coordinates outside the given subset");
      }
    }
  }
  return Partition(std::vector<std::uint64_t>(g.table().begin(), g.table().end()));
}

std::optional<StrongDecomposition> strong_decomposition_for(const TabularFunction& f, SourceSet i_set) {
  if (i_set.empty()) throw Error(ErrorCode::NotACutSet, "I_C is empty");
  const DomainSplit d = split_domain(f, i_set);
  std::vector<std::vector<std::uint64_t>> slices(d.rest_size, std::vector<std::uint64_t>(d.sub_size));
  for (std::uint64_t x = 0; x < f.domain_size(); ++x) slices[d.rest_index[x]][d.sub_index[x]] = f.at(x);
  const Partition first(slices.front());
  for (std::size_t r = 1; r < slices.size(); ++r) {
    if (!(Partition(slices[r]) == first)) return std::nullopt;
  }
  std::vector<std::uint64_t> lifted(f.domain_size());
  for (std::uint64_t x = 0; x < f.domain_size(); ++x) lifted[x] = first.block_of(d.sub_index[x]);
  return StrongDecomposition{i_set, first, Partition(lifted)};
}

std::optional<StrongDecomposition> strong_decomposition(const Network& net, const EdgeSet& cut,
                                                        const TabularFunction& f) {
  check_arity(net, f);
  return strong_decomposition_for(f, source_profile(net, cut).i_set);
}

Partition maximal_common_function(const Partition& a, const Partition& b) {
  if (a.domain_size() != b.domain_size()) throw Error(ErrorCode::DomainMismatch, "partitions over different domains");
  const std::size_t n = a.domain_size();
  DisjointSets sets(n);
  std::vector<std::int64_t> first_a(a.block_count(), -1);
  std::vector<std::int64_t> first_b(b.block_count(), -1);
  for (std::size_t i = 0; i < n; ++i) {
    auto& fa = first_a[a.block_of(i)];
    if (fa < 0) fa = static_cast<std::int64_t>(i); else sets.unite(static_cast<std::size_t>(fa), i);
    auto& fb = first_b[b.block_of(i)];
    if (fb < 0) fb = static_cast<std::int64_t>(i); else sets.unite(static_cast<std::size_t>(fb), i);
  }
  std::vector<std::uint64_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = sets.find(i);
  return Partition(labels);
}

double entropy_uniform(const Partition& p) {
  if (p.domain_size() == 0) return 0.0;
  std::vector<std::uint64_t> counts(p.block_count(), 0);
  for (auto b : p.blocks()) ++counts[b];
  const auto n = static_cast<double>(p.domain_size());
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double pr = static_cast<double>(c) / n;
    h -= pr * std::log2(pr);
  }
  return h;
}

double entropy_pinned(const TabularFunction& f, SourceSet i_set) {
  for (const auto& a : f.inputs()) {
    if (!a.zero) throw Error(ErrorCode::MissingZeroElement, "input alphabet has no designated zero");
  }
  std::vector<std::uint64_t> labels;
  for (std::uint64_t x = 0; x < f.domain_size(); ++x) {
    const auto t = f.tuple_of(x);
    bool pinned = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!i_set.contains(static_cast<int>(i)) && t[i] != *f.inputs()[i].zero) {
        pinned = false;
        break;
      }
    }
    if (pinned) labels.push_back(f.at(x));
  }
  return entropy_uniform(Partition(labels));
}

GeneralBound general_upper_bound(const Network& net, const TabularFunction& f, const TabularFunction& zeta, int level,
                                 std::uint32_t edge_alphabet, const FunctionLimits& limits) {
  check_arity(net, f);
  check_arity(net, zeta);
  const auto size_of = [](const Alphabet& a) { return a.size; };
  if (!std::ranges::equal(f.inputs(), zeta.inputs(), {}, size_of, size_of)) throw Error(ErrorCode::DomainMismatch, "f and zeta use different input alphabets");
  if (level < 0) throw Error(ErrorCode::InvalidArgument, "security level must be nonnegative");
  if (edge_alphabet < 2) throw Error(ErrorCode::InvalidArgument, "edge alphabet needs at least two symbols");
  check_edges(net, limits);

  const CutProfiler prof(net);
  const Partition zeta_part = induced_partition(zeta);
  const double log_b = std::log2(static_cast<double>(edge_alphabet));
  std::unordered_map<std::uint64_t, double> denom;  // negative: no constraint

  GeneralBound best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<EdgeId> eligible;
  const std::size_t m = net.edge_count();
  for (std::uint64_t c = 1; c < (std::uint64_t{1} << m); ++c) {
    const std::uint64_t i_mask = prof.i_mask(c);
    if (i_mask == 0) continue;
    auto it = denom.find(i_mask);
    if (it == denom.end()) {
      double h = -1.0;
      if (auto dec = strong_decomposition_for(f, SourceSet(i_mask))) {
        h = entropy_uniform(maximal_common_function(dec->lifted, zeta_part));
        if (h <= kEntropyTolerance) h = -1.0;
      }
      it = denom.emplace(i_mask, h).first;
    }
    if (it->second < 0) continue;
    eligible.clear();
    for (std::uint64_t b = c; b != 0; b &= b - 1) {
      const EdgeId e = std::countr_zero(b);
      if ((prof.edge_upstream(e) & ~i_mask) == 0) eligible.push_back(e);
    }
    const auto w = std::min<std::size_t>(static_cast<std::size_t>(level), eligible.size());
    const double value = static_cast<double>(std::popcount(c) - static_cast<int>(w)) * log_b / it->second;
    if (best.cut && value > best.value + kEntropyTolerance) continue;
    EdgeSet wiretap(std::vector<EdgeId>(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(w)));
    EdgeSet cut = EdgeSet::from_mask(c);
    if (improves(value, wiretap, cut, best.value, best.wiretap, best.cut)) {
      best.value = value;
      best.wiretap = std::move(wiretap);
      best.cut = std::move(cut);
    }
  }
  return best;
}

Theorem2Bound theorem2_upper_bound(const Network& net, const TabularFunction& f, std::uint32_t edge_alphabet,
                                   const FunctionLimits& limits) {
  check_arity(net, f);
  for (const auto& a : f.inputs()) {
    if (!a.zero) throw Error(ErrorCode::MissingZeroElement, "input alphabet has no designated zero");
  }
  if (edge_alphabet < 2) throw Error(ErrorCode::InvalidArgument, "edge alphabet needs at least two symbols");
  check_edges(net, limits);

  const CutProfiler prof(net);
  const double log_b = std::log2(static_cast<double>(edge_alphabet));
  std::unordered_map<std::uint64_t, double> denom;
  Theorem2Bound best;
  best.value = std::numeric_limits<double>::infinity();
  const std::size_t m = net.edge_count();
  for (std::uint64_t c = 1; c < (std::uint64_t{1} << m); ++c) {
    const std::uint64_t i_mask = prof.i_mask(c);
    if (i_mask == 0) continue;
    auto it = denom.find(i_mask);
    if (it == denom.end()) it = denom.emplace(i_mask, entropy_pinned(f, SourceSet(i_mask))).first;
    if (it->second <= kEntropyTolerance) continue;
    const double value = static_cast<double>(std::popcount(c)) * log_b / it->second;
    EdgeSet cut = EdgeSet::from_mask(c);
    if (improves(value, {}, cut, best.value, std::nullopt, best.cut)) {
      best.value = value;
      best.cut = std::move(cut);
    }
  }
  return best;
}

CombinedBound combined_upper_bound(const Network& net, const TabularFunction& f, const TabularFunction& zeta,
                                   int level, std::uint32_t edge_alphabet, const FunctionLimits& limits) {
  CombinedBound out;
  out.general = general_upper_bound(net, f, zeta, level, edge_alphabet, limits);
  out.value = out.general.value;
  try {
    out.theorem2 = theorem2_upper_bound(net, f, edge_alphabet, limits);
    out.value = std::min(out.value, out.theorem2->value);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MissingZeroElement) throw;
  }
  return out;
}

TabularFunction tabular_from_matrix(const GfMatrix& m) {
  const Field& f = m.field();
  const std::uint32_t q = f.order();
  std::vector<Alphabet> inputs(m.rows(), Alphabet{q, 0});
  std::uint64_t out_size = 1;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    out_size *= q;
    if (out_size > kMaxDomain) throw Error(ErrorCode::InstanceTooLarge, "output alphabet too large");
  }
  std::uint64_t domain = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    domain *= q;
    if (domain > kMaxDomain) throw Error(ErrorCode::InstanceTooLarge, "function domain too large");
  }
  std::vector<std::uint32_t> table(domain);
  std::vector<std::uint32_t> x(m.rows());
  for (std::uint64_t idx = 0; idx < domain; ++idx) {
    std::uint64_t rem = idx;
    for (std::size_t i = m.rows(); i-- > 0;) {
      x[i] = static_cast<std::uint32_t>(rem % q);
      rem /= q;
    }
    std::uint64_t value = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Elem acc = 0;
      for (std::size_t i = 0; i < m.rows(); ++i) acc = f.add(acc, f.mul(x[i], m(i, j)));
      value = value * q + acc;
    }
    table[idx] = static_cast<std::uint32_t>(value);
  }
  return TabularFunction(std::move(inputs), Alphabet{static_cast<std::uint32_t>(out_size), 0}, std::move(table));
}

TabularFunction identity_function(const std::vector<Alphabet>& inputs) {
  std::uint64_t size = 1;
  for (const auto& a : inputs) {
    size *= a.size;
    if (size > kMaxDomain) throw Error(ErrorCode::InstanceTooLarge, "function domain too large");
  }
  std::vector<std::uint32_t> table(size);
  std::iota(table.begin(), table.end(), 0u);
  return TabularFunction(inputs, Alphabet{static_cast<std::uint32_t>(size), std::nullopt}, std::move(table));
}

TabularFunction parse_tabular(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<Alphabet> inputs;
  Alphabet output;
  bool have_header = false;
  std::vector<std::int64_t> table;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream tok(line);
    std::vector<std::string> words;
    for (std::string w; tok >> w;) words.push_back(w);
    if (words.empty()) continue;
    try {
      if (words[0] == "alphabets") {
        if (have_header) fail("duplicate header");
        std::size_t i = 1;
        for (; i < words.size() && words[i] != "/"; ++i) inputs.push_back(Alphabet{static_cast<std::uint32_t>(std::stoul(words[i])), std::nullopt});
        if (i + 3 != words.size() || words[i + 1] != "out" || inputs.empty()) fail("expected 'alphabets a1 ... as / out o'");
        output.size = static_cast<std::uint32_t>(std::stoul(words[i + 2]));
        std::uint64_t size = 1;
        for (const auto& a : inputs) {
          if (a.size < 1) fail("alphabet size must be at least 1");
          size *= a.size;
          if (size > kMaxDomain) throw Error(ErrorCode::InstanceTooLarge, "function domain too large");
        }
        table.assign(size, -1);
        have_header = true;
      } else if (words[0] == "zeros") {
        const bool with_output = words.size() == inputs.size() + 3 && words[inputs.size() + 1] == "/";
        if (!have_header || (words.size() != inputs.size() + 1 && !with_output)) {
          fail("expected 'zeros z1 ... zs [/ zo]' after the header");
        }
        for (std::size_t i = 0; i < inputs.size(); ++i) {
          if (words[i + 1] != "-") inputs[i].zero = static_cast<std::uint32_t>(std::stoul(words[i + 1]));
        }
        if (with_output && words.back() != "-") output.zero = static_cast<std::uint32_t>(std::stoul(words.back()));
      } else {
        if (!have_header) fail("missing 'alphabets' header");
        if (words.size() != inputs.size() + 2 || words[inputs.size()] != "->") fail("expected 'i1 ... is -> o'");
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
          const auto v = std::stoul(words[i]);
          if (v >= inputs[i].size) fail("input symbol outside its alphabet");
          idx = idx * inputs[i].size + v;
        }
        const auto o = std::stoul(words.back());
        if (o >= output.size) fail("output symbol outside the output alphabet");
        if (table[idx] >= 0) fail("duplicate input tuple");
        table[idx] = static_cast<std::int64_t>(o);
      }
    } catch (const std::logic_error&) {
      fail("malformed number");
    }
  }
  if (!have_header) throw Error(ErrorCode::Parse, "missing 'alphabets' header");
  std::vector<std::uint32_t> values(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] < 0) throw Error(ErrorCode::Parse, "table is not total over the product domain");
    values[i] = static_cast<std::uint32_t>(table[i]);
  }
  return TabularFunction(std::move(inputs), output, std::move(values));
}

TabularFunction read_tabular_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open table file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_tabular(buf.str());
}

std::string format_tabular(const TabularFunction& f) {
  std::ostringstream out;
  out << "alphabets";
  for (const auto& a : f.inputs()) out << ' ' << a.size;
  out << " / out " << f.output().size << '\n';
  bool any_zero = f.output().zero.has_value();
  for (const auto& a : f.inputs()) any_zero = any_zero || a.zero.has_value();
  if (any_zero) {
    out << "zeros";
    for (const auto& a : f.inputs()) {
      if (a.zero) out << ' ' << *a.zero; else out << " -";
    }
    if (f.output().zero) out << " / " << *f.output().zero;
    out << '\n';
  }
  for (std::uint64_t x = 0; x < f.domain_size(); ++x) {
    for (auto v : f.tuple_of(x)) out << v << ' ';
    out << "-> " << f.at(x) << '\n';
  }
  return out.str();
}

}  // namespace snfc
