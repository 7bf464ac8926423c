#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <tuple>
#include <utility>
#include <vector>

#include "blbc/geometry.hpp"
#include "blbc/point_set.hpp"

namespace blbc {

/// Every line spanned by at least two points of a set, with the ascending
/// indices of the points it carries. Lines are kept in discovery order
/// (by their lexicographically smallest index pair) so iteration is
/// deterministic.
class LineIncidenceMap {
 public:
  struct Entry {
    CanonicalLine line;
    std::vector<Index> indices;
  };

  LineIncidenceMap() = default;

  /// Groups all C(n,2) pairs by their line.
  static LineIncidenceMap build(const PointSet& ps) {
    LineIncidenceMap map;
    const auto h = ps.homogeneous();
    if (std::all_of(h.begin(), h.end(), [](const IntegerPoint& p) { return detail::small(p); })) {
      map.build_keyed<detail::SmallLine>(
          h, [](const IntegerPoint& p, const IntegerPoint& q) { return detail::small_line_through(p, q); },
          [](const detail::SmallLine& l) { return l.widen(); });
    } else {
      map.build_keyed<CanonicalLine>(
          h, [](const IntegerPoint& p, const IntegerPoint& q) { return line_through(p, q); },
          [](const CanonicalLine& l) { return l; });
    }
    return map;
  }

  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  const std::vector<Index>* find(const CanonicalLine& line) const {
    const auto slot = probe(line);
    return slots_.empty() || slots_[slot] == 0 ? nullptr : &entries_[slots_[slot] - 1].indices;
  }

  /// Registers a new line; indices must be ascending and hold >= 2 entries.
  void add_line(CanonicalLine line, std::vector<Index> indices) {
    if ((entries_.size() + 1) * 2 > slots_.size()) rehash(std::max<std::size_t>(64, slots_.size() * 2));
    const auto slot = probe(line);
    slots_[slot] = static_cast<std::uint32_t>(entries_.size() + 1);
    entries_.push_back({std::move(line), std::move(indices)});
  }

  /// Appends an index larger than every index already on the line.
  void append(const CanonicalLine& line, Index idx) {
    const auto slot = probe(line);
    if (slots_.empty() || slots_[slot] == 0) throw ArgumentError("line " + line.str() + " is not stored");
    entries_[slots_[slot] - 1].indices.push_back(idx);
  }

  std::size_t max_line_size() const {
    std::size_t best = 0;
    for (const auto& e : entries_) best = std::max(best, e.indices.size());
    return best;
  }

  /// Pairs (i, j), i < j, whose line carries no third point; sorted by (j, i).
  std::vector<std::pair<Index, Index>> ordinary_pairs() const {
    std::vector<std::pair<Index, Index>> out;
    for (const auto& e : entries_) {
      if (e.indices.size() == 2) out.emplace_back(e.indices[0], e.indices[1]);
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
      return std::pair{l.second, l.first} < std::pair{r.second, r.first};
    });
    return out;
  }

 private:
  // Sort every pair by its line, then emit each line's group in order of
  // its smallest pair.
  template <typename Key, typename Through, typename Widen>
  void build_keyed(const std::vector<IntegerPoint>& h, Through through, Widen widen) {
    const auto n = static_cast<Index>(h.size());
    std::vector<std::tuple<Key, Index, Index>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2);
    for (Index i = 1; i <= n; ++i) {
      for (Index j = i + 1; j <= n; ++j) pairs.emplace_back(through(h[i - 1], h[j - 1]), i, j);
    }
    std::sort(pairs.begin(), pairs.end());

    struct Group {
      std::pair<Index, Index> first;
      std::size_t begin;
      std::size_t end;
    };
    std::vector<Group> groups;
    for (std::size_t k = 0; k < pairs.size();) {
      std::size_t e = k + 1;
      while (e < pairs.size() && std::get<0>(pairs[e]) == std::get<0>(pairs[k])) ++e;
      groups.push_back({{std::get<1>(pairs[k]), std::get<2>(pairs[k])}, k, e});
      k = e;
    }
    std::sort(groups.begin(), groups.end(), [](const Group& l, const Group& r) { return l.first < r.first; });

    rehash(std::max<std::size_t>(64, std::bit_ceil(groups.size() * 2 + 1)));
    entries_.reserve(groups.size());
    for (const auto& g : groups) {
      std::vector<Index> members;
      if (g.end - g.begin == 1) {
        members = {g.first.first, g.first.second};
      } else {
        // Pairs with the smallest index i0 name every point on the line.
        const Index i0 = g.first.first;
        members.push_back(i0);
        for (std::size_t k = g.begin; k < g.end; ++k) {
          if (std::get<1>(pairs[k]) == i0) members.push_back(std::get<2>(pairs[k]));
        }
        std::sort(members.begin(), members.end());
      }
      add_line(widen(std::get<0>(pairs[g.begin])), std::move(members));
    }
  }

  std::size_t probe(const CanonicalLine& line) const {
    if (slots_.empty()) return 0;
    const std::size_t mask = slots_.size() - 1;
    std::size_t slot = std::hash<CanonicalLine>{}(line) & mask;
    while (slots_[slot] != 0 && !(entries_[slots_[slot] - 1].line == line)) slot = (slot + 1) & mask;
    return slot;
  }

  void rehash(std::size_t capacity) {
    slots_.assign(capacity, 0);
    const std::size_t mask = capacity - 1;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      std::size_t slot = std::hash<CanonicalLine>{}(entries_[k].line) & mask;
      while (slots_[slot] != 0) slot = (slot + 1) & mask;
      slots_[slot] = static_cast<std::uint32_t>(k + 1);
    }
  }

  std::vector<Entry> entries_;
  std::vector<std::uint32_t> slots_;  // open addressing, entry index + 1, 0 = empty
};

namespace detail {

template <typename Key, typename Through>
std::vector<std::vector<Index>> group_around(const std::vector<IntegerPoint>& h, Index center, Index limit,
                                             Through through) {
  std::vector<std::pair<Key, Index>> keyed;
  keyed.reserve(limit);
  for (Index m = 1; m <= limit; ++m) {
    if (m != center) keyed.emplace_back(through(h[center - 1], h[m - 1]), m);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::vector<Index>> groups;
  for (std::size_t k = 0; k < keyed.size(); ++k) {
    if (k == 0 || !(keyed[k].first == keyed[k - 1].first)) groups.emplace_back();
    groups.back().push_back(keyed[k].second);
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

}  // namespace detail

/// Indices 1..limit other than `center`, grouped by the line each spans
/// with `center`. Groups are ascending and ordered by their first index.
inline std::vector<std::vector<Index>> lines_around(const std::vector<IntegerPoint>& h, Index center, Index limit) {
  const bool small = std::all_of(h.begin(), h.begin() + limit, [](const IntegerPoint& p) { return detail::small(p); }) &&
                     detail::small(h[center - 1]);
  if (small) {
    return detail::group_around<detail::SmallLine>(
        h, center, limit, [](const IntegerPoint& p, const IntegerPoint& q) { return detail::small_line_through(p, q); });
  }
  return detail::group_around<CanonicalLine>(
      h, center, limit, [](const IntegerPoint& p, const IntegerPoint& q) { return line_through(p, q); });
}

}  // namespace blbc
