#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blbc/bitset.hpp"
#include "blbc/geometry.hpp"
#include "blbc/line_map.hpp"
#include "blbc/point_set.hpp"

namespace blbc {

/// Undirected graph on vertices 1..n; an edge joins two mutually visible
/// points.
class VisibilityGraph {
 public:
  VisibilityGraph() = default;
  explicit VisibilityGraph(std::size_t n) : n_(n), adj_(n, detail::Bitset(n)) {}

  std::size_t vertex_count() const { return n_; }

  bool has_edge(Index i, Index j) const { return i != j && adj_[i - 1].test(j - 1); }

  void add_edge(Index i, Index j) {
    adj_[i - 1].set(j - 1);
    adj_[j - 1].set(i - 1);
  }
  void remove_edge(Index i, Index j) {
    adj_[i - 1].reset(j - 1);
    adj_[j - 1].reset(i - 1);
  }

  std::size_t degree(Index i) const { return adj_[i - 1].count(); }

  /// Neighbourhood of i over 0-based positions.
  const detail::Bitset& row(Index i) const { return adj_[i - 1]; }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& r : adj_) twice += r.count();
    return twice / 2;
  }

  /// Sorted lexicographically, i < j within each pair.
  std::vector<std::pair<Index, Index>> edges() const {
    std::vector<std::pair<Index, Index>> out;
    for (Index i = 1; i <= n_; ++i) {
      for (std::size_t k = adj_[i - 1].next(i); k != detail::Bitset::npos; k = adj_[i - 1].next(k + 1)) {
        out.emplace_back(i, static_cast<Index>(k + 1));
      }
    }
    return out;
  }

  friend bool operator==(const VisibilityGraph&, const VisibilityGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<detail::Bitset> adj_;
};

namespace detail {

inline void check_pair(const PointSet& ps, Index i, Index j) {
  ps.check_index(i);
  ps.check_index(j);
  if (i == j) throw ArgumentError("visibility query needs two distinct indices, got " + std::to_string(i) + " twice");
}

}  // namespace detail

/// Smallest index r whose point lies strictly inside segment (i, j).
inline std::optional<Index> find_blocker(const PointSet& ps, Index i, Index j) {
  detail::check_pair(ps, i, j);
  for (Index r = 1; r <= ps.size(); ++r) {
    if (r == i || r == j) continue;
    if (on_open_segment(ps[r], ps[i], ps[j])) return r;
  }
  return std::nullopt;
}

inline bool is_visible(const PointSet& ps, Index i, Index j) { return !find_blocker(ps, i, j); }

/// Reference construction: tests every point against every pair.
inline VisibilityGraph build_visibility_graph_sweep(const PointSet& ps) {
  ps.validate_distinct();
  const auto n = static_cast<Index>(ps.size());
  VisibilityGraph g(n);
  for (Index i = 1; i <= n; ++i) {
    for (Index j = i + 1; j <= n; ++j) {
      if (is_visible(ps, i, j)) g.add_edge(i, j);
    }
  }
  return g;
}

/// Points of one line, ordered along it.
inline std::vector<Index> order_along_line(const PointSet& ps, std::vector<Index> indices) {
  std::sort(indices.begin(), indices.end(), [&](Index a, Index b) { return ps[a] < ps[b]; });
  return indices;
}

/// Grouped construction: two points on a common line are blocked exactly
/// when they are not neighbours in the order along that line.
inline VisibilityGraph build_visibility_graph(const PointSet& ps, const LineIncidenceMap& lines) {
  const auto n = static_cast<Index>(ps.size());
  VisibilityGraph g(n);
  for (const auto& e : lines) {
    if (e.indices.size() == 2) {
      g.add_edge(e.indices[0], e.indices[1]);
      continue;
    }
    const auto along = order_along_line(ps, e.indices);
    for (std::size_t k = 1; k < along.size(); ++k) g.add_edge(along[k - 1], along[k]);
  }
  return g;
}

inline VisibilityGraph build_visibility_graph(const PointSet& ps) {
  ps.validate_distinct();
  return build_visibility_graph(ps, LineIncidenceMap::build(ps));
}

struct CollinearResult {
  std::size_t size = 0;
  std::vector<Index> witness;
};

/// Largest collinear subset; ties go to the lexicographically smallest
/// index list.
inline CollinearResult max_collinear(const PointSet& ps) {
  if (ps.size() < 2) {
    throw ArgumentError("max_collinear needs at least 2 points, got " + std::to_string(ps.size()));
  }
  ps.validate_distinct();
  CollinearResult best;
  for (const auto& e : LineIncidenceMap::build(ps)) {
    if (e.indices.size() > best.size || (e.indices.size() == best.size && e.indices < best.witness)) {
      best.size = e.indices.size();
      best.witness = e.indices;
    }
  }
  return best;
}

struct CliqueResult {
  std::size_t size = 0;
  std::vector<Index> witness;
  bool capped = false;  ///< search stopped early at the cap
};

namespace detail {

/// Branch-and-bound maximum clique over vertices relabelled by search
/// order (degree descending, index ascending). Bron-Kerbosch expansion with
/// a Tomita pivot; branches that cannot beat the incumbent are cut.
class CliqueSearch {
 public:
  CliqueSearch(const VisibilityGraph& g, std::optional<std::size_t> cap) : cap_(cap) {
    const auto n = g.vertex_count();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), Index{1});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Index a, Index b) { return g.degree(a) > g.degree(b); });
    std::vector<std::size_t> pos(n + 1);
    for (std::size_t k = 0; k < n; ++k) pos[order_[k]] = k;
    adj_.assign(n, Bitset(n));
    for (std::size_t k = 0; k < n; ++k) {
      const auto& row = g.row(order_[k]);
      for (std::size_t v = row.first(); v != Bitset::npos; v = row.next(v + 1)) adj_[k].set(pos[v + 1]);
    }
  }

  CliqueResult run() {
    const auto n = order_.size();
    Bitset candidates(n);
    for (std::size_t k = 0; k < n; ++k) candidates.set(k);
    std::vector<std::size_t> current;
    expand(current, candidates, Bitset(n));
    CliqueResult out;
    for (auto k : best_) out.witness.push_back(order_[k]);
    std::sort(out.witness.begin(), out.witness.end());
    if (cap_ && out.witness.size() >= *cap_) {
      out.witness.resize(*cap_);
      out.capped = true;
    }
    out.size = out.witness.size();
    return out;
  }

 private:
  bool done() const { return cap_ && best_.size() >= *cap_; }

  void expand(std::vector<std::size_t>& current, Bitset candidates, Bitset excluded) {
    if (candidates.none()) {
      if (current.size() > best_.size()) best_ = current;
      return;
    }
    if (current.size() + candidates.count() <= best_.size()) return;

    Bitset both = candidates;
    both |= excluded;
    std::size_t pivot = both.first();
    std::size_t pivot_hits = Bitset::intersection_count(candidates, adj_[pivot]);
    for (std::size_t u = both.next(pivot + 1); u != Bitset::npos; u = both.next(u + 1)) {
      const auto hits = Bitset::intersection_count(candidates, adj_[u]);
      if (hits > pivot_hits) {
        pivot = u;
        pivot_hits = hits;
      }
    }

    Bitset branch = candidates;
    branch.subtract(adj_[pivot]);
    for (std::size_t v = branch.first(); v != Bitset::npos; v = branch.next(v + 1)) {
      current.push_back(v);
      expand(current, candidates & adj_[v], excluded & adj_[v]);
      current.pop_back();
      if (done()) return;
      candidates.reset(v);
      excluded.set(v);
      if (current.size() + candidates.count() <= best_.size()) return;
    }
  }

  std::optional<std::size_t> cap_;
  std::vector<Index> order_;
  std::vector<Bitset> adj_;
  std::vector<std::size_t> best_;
};

}  // namespace detail

inline CliqueResult max_clique(const VisibilityGraph& g, std::optional<std::size_t> cap = std::nullopt) {
  if (cap && *cap == 0) throw ArgumentError("clique cap must be positive");
  return detail::CliqueSearch(g, cap).run();
}

/// Largest set of pairwise visible points. With a cap the search may stop
/// once a clique of that size is found and reports exactly cap indices.
inline CliqueResult max_visible_clique(const PointSet& ps, std::optional<std::size_t> cap = std::nullopt) {
  if (ps.empty()) throw ArgumentError("max_visible_clique needs at least 1 point");
  return max_clique(build_visibility_graph(ps), cap);
}

enum class BlbcOutcome { CollinearFound, CliqueFound, BothFound, NeitherFound };

inline const char* to_string(BlbcOutcome o) {
  switch (o) {
    case BlbcOutcome::CollinearFound: return "CollinearFound";
    case BlbcOutcome::CliqueFound: return "CliqueFound";
    case BlbcOutcome::BothFound: return "BothFound";
    case BlbcOutcome::NeitherFound: return "NeitherFound";
  }
  return "?";
}

struct BlbcVerdict {
  BlbcOutcome outcome = BlbcOutcome::NeitherFound;
  std::optional<std::vector<Index>> collinear_witness;
  std::optional<std::vector<Index>> clique_witness;
  std::size_t max_collinear = 0;
  std::size_t clique_size = 0;  ///< capped at k
};

/// Decides both clauses of the (k, l) instance: l collinear points, or k
/// pairwise visible points.
inline BlbcVerdict check_blbc_instance(const PointSet& ps, std::size_t k, std::size_t l) {
  if (k < 2 || l < 2) {
    throw ArgumentError("k and l must both be at least 2 (got k=" + std::to_string(k) + ", l=" + std::to_string(l) + ")");
  }
  ps.validate_distinct();
  BlbcVerdict v;
  if (ps.size() >= 2) {
    auto c = max_collinear(ps);
    v.max_collinear = c.size;
    if (c.size >= l) v.collinear_witness = std::move(c.witness);
  } else {
    v.max_collinear = ps.size();
  }
  if (!ps.empty()) {
    auto q = max_visible_clique(ps, k);
    v.clique_size = q.size;
    if (q.size >= k) v.clique_witness = std::move(q.witness);
  }
  const bool line = v.collinear_witness.has_value();
  const bool clique = v.clique_witness.has_value();
  v.outcome = line && clique ? BlbcOutcome::BothFound
            : line           ? BlbcOutcome::CollinearFound
            : clique         ? BlbcOutcome::CliqueFound
                             : BlbcOutcome::NeitherFound;
  return v;
}

}  // namespace blbc
