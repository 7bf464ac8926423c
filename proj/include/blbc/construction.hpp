#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blbc/geometry.hpp"
#include "blbc/line_map.hpp"
#include "blbc/point_set.hpp"

namespace blbc {

class SeedError : public std::invalid_argument {
 public:
  SeedError(const std::string& what, std::vector<Index> indices)
      : std::invalid_argument(what), indices_(std::move(indices)) {}
  const std::vector<Index>& indices() const { return indices_; }

 private:
  std::vector<Index> indices_;
};

/// The requested insertion would put the new point on a second line.
class PlacementError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bookkeeping reached a state the construction can never produce.
class ImpossibleStateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Pair (i, j), i < j, spanning a line through exactly two points.
/// Ordered by (j, i).
struct OrdinaryPair {
  Index i = 0;
  Index j = 0;

  friend bool operator==(const OrdinaryPair&, const OrdinaryPair&) = default;
  friend std::strong_ordering operator<=>(const OrdinaryPair& l, const OrdinaryPair& r) {
    if (auto c = l.j <=> r.j; c != 0) return c;
    return l.i <=> r.i;
  }

  std::string str() const { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }
};

struct InsertionRecord {
  Index n = 0;
  OrdinaryPair pair;
  std::size_t excluded_count = 0;
  Rational t;
  Point point;

  friend bool operator==(const InsertionRecord&, const InsertionRecord&) = default;
};

using Trace = std::vector<InsertionRecord>;

struct SeedTriple {
  std::array<Point, 3> points;

  void validate() const {
    for (Index a = 0; a < 3; ++a) {
      for (Index b = a + 1; b < 3; ++b) {
        if (points[a] == points[b]) {
          throw SeedError("duplicate seed: points " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                              " coincide at " + points[a].str(),
                          {a + 1, b + 1});
        }
      }
    }
    if (orientation(points[0], points[1], points[2]) == Orientation::Collinear) {
      throw SeedError("collinear seed: points 1, 2, 3 lie on one line", {1, 2, 3});
    }
  }
};

inline SeedTriple default_seed() {
  return {{Point{0, 0}, Point{1, 0}, Point{0, 1}}};
}

/// C(m, 2), zero for m < 2.
inline std::size_t choose2(std::size_t m) { return m < 2 ? 0 : m * (m - 1) / 2; }

/// Upper bound on excluded locations when inserting point n.
inline std::size_t exclusion_bound(Index n) { return n < 3 ? 0 : choose2(n - 3); }

/// Parameters t in (0,1) where a + t (b - a) meets a line of `lines` other
/// than line(a, b). A line through a or b may only touch the segment at
/// that endpoint; a line through both of them other than line(a, b) means
/// the incidence data is corrupt.
inline std::set<Rational> segment_exclusions(const LineIncidenceMap& lines, const IntegerPoint& a,
                                             const IntegerPoint& b) {
  const CanonicalLine own = line_through(a, b);
  // Crossings with small numerator and denominator are kept as reduced
  // machine-word fractions; anything larger goes through GMP.
  std::vector<std::pair<long, long>> small_hits;
  std::vector<Rational> big_hits;
  const bool small_ends = detail::small(a) && detail::small(b);
  for (const auto& e : lines) {
    if (e.line == own) continue;
    const int sa = side(e.line, a);
    const int sb = side(e.line, b);
    if (sa == 0 && sb == 0) {
      throw ImpossibleStateError("line " + e.line.str() + " contains both endpoints of segment line " + own.str());
    }
    if (sa == 0 || sb == 0 || sa == sb) continue;
    Integer num = evaluate(e.line, a);
    Integer den = evaluate(e.line, b);
    // Affine values are fa/wa and fb/wb; the sign change is at
    // t = (fa/wa) / (fa/wa - fb/wb) = fa*wb / (fa*wb - fb*wa).
    num *= b.w;
    den *= a.w;
    den = num - den;
    if (small_ends && detail::small(num) && detail::small(den)) {
      long p = detail::as_long(num);
      long q = detail::as_long(den);
      if (q < 0) {
        p = -p;
        q = -q;
      }
      const long g = std::gcd(p, q);
      small_hits.emplace_back(p / g, q / g);
    } else {
      big_hits.emplace_back(num, den);
    }
  }
  std::sort(small_hits.begin(), small_hits.end(), [](const auto& l, const auto& r) {
    return static_cast<__int128>(l.first) * r.second < static_cast<__int128>(r.first) * l.second;
  });
  small_hits.erase(std::unique(small_hits.begin(), small_hits.end()), small_hits.end());
  std::set<Rational> out(big_hits.begin(), big_hits.end());
  for (const auto& [p, q] : small_hits) out.emplace_hint(out.end(), p, q);
  return out;
}

/// Finite prefix of the construction: points, every spanned line, the
/// ordinary pairs still awaiting a blocker, and the insertion history.
class ConstructionState {
 public:
  explicit ConstructionState(const SeedTriple& seed) {
    seed.validate();
    for (const auto& p : seed.points) push_point(p);
    for (Index j = 2; j <= 3; ++j) {
      for (Index i = 1; i < j; ++i) {
        lines_.add_line(line_through(homogeneous_[i - 1], homogeneous_[j - 1]), {i, j});
        pending_.insert({i, j});
      }
    }
  }

  const PointSet& points() const { return points_; }
  const LineIncidenceMap& lines() const { return lines_; }
  const std::set<OrdinaryPair>& pending() const { return pending_; }
  const Trace& trace() const { return trace_; }
  std::size_t size() const { return points_.size(); }

  /// The pending pair with the smallest (j, i).
  OrdinaryPair select_ordinary_pair() const {
    if (pending_.empty()) {
      throw ImpossibleStateError("no ordinary pair pending among " + std::to_string(size()) +
                                 " points; the state is corrupt");
    }
    return *pending_.begin();
  }

  /// Parameters t in (0,1) at which the point on segment (i, j) would meet
  /// another stored line.
  std::set<Rational> excluded_parameters(const OrdinaryPair& pair) const {
    require_pending(pair);
    return segment_exclusions(lines_, homogeneous_[pair.i - 1], homogeneous_[pair.j - 1]);
  }

  /// Places point n = size() + 1 at parameter t on the pending pair.
  /// Rejects t if the point would join a second collinear triple.
  void insert_point(const OrdinaryPair& pair, const Rational& t) {
    insert_point(pair, t, excluded_parameters(pair).size());
  }

  /// As above, with the exclusion count already known to the caller. The
  /// placement is still checked against every stored line.
  void insert_point(const OrdinaryPair& pair, const Rational& t, std::size_t excluded_count) {
    require_pending(pair);
    Point p = segment_param_point(points_[pair.i], points_[pair.j], t);
    const IntegerPoint hp = IntegerPoint::from(p);
    const CanonicalLine own = line_through(homogeneous_[pair.i - 1], homogeneous_[pair.j - 1]);
    for (const auto& e : lines_) {
      if (side(e.line, hp) == 0 && !(e.line == own)) {
        throw PlacementError("parameter " + t.str() + " on pair " + pair.str() + " puts the new point on line " +
                             e.line.str() + " and would form a second collinear triple");
      }
    }
    const auto n = static_cast<Index>(size() + 1);
    push_point(p);

    lines_.append(own, n);
    pending_.erase(pair);
    for (Index m = 1; m < n; ++m) {
      if (m == pair.i || m == pair.j) continue;
      lines_.add_line(line_through(homogeneous_[m - 1], homogeneous_[n - 1]), {m, n});
      pending_.insert({m, n});
    }
    trace_.push_back({n, pair, excluded_count, t, std::move(p)});
  }

 private:
  void require_pending(const OrdinaryPair& pair) const {
    if (!pending_.contains(pair)) throw ArgumentError("pair " + pair.str() + " is not a pending ordinary pair");
  }

  void push_point(const Point& p) {
    points_.push_back(p);
    homogeneous_.push_back(IntegerPoint::from(p));
  }

  PointSet points_;
  std::vector<IntegerPoint> homogeneous_;
  LineIncidenceMap lines_;
  std::set<OrdinaryPair> pending_;
  Trace trace_;
};

inline ConstructionState init_state(const SeedTriple& seed) { return ConstructionState(seed); }

inline OrdinaryPair select_ordinary_pair(const ConstructionState& s) { return s.select_ordinary_pair(); }

inline std::set<Rational> excluded_parameters(const ConstructionState& s, const OrdinaryPair& pair) {
  return s.excluded_parameters(pair);
}

/// First fraction of (0,1) not in excluded, enumerating by denominator
/// 2, 3, 4, ... and then numerator, reduced fractions only.
inline Rational choose_parameter(const std::set<Rational>& excluded) {
  for (long q = 2;; ++q) {
    for (long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      Rational t(p, q);
      if (!excluded.contains(t)) return t;
    }
  }
}

inline ConstructionState insert_point(ConstructionState s, const OrdinaryPair& pair, const Rational& t) {
  s.insert_point(pair, t);
  return s;
}

/// One full construction step: minimal ordinary pair, then the first free
/// parameter on it.
inline const InsertionRecord& advance(ConstructionState& s) {
  const OrdinaryPair pair = s.select_ordinary_pair();
  const auto excluded = s.excluded_parameters(pair);
  s.insert_point(pair, choose_parameter(excluded), excluded.size());
  return s.trace().back();
}

inline ConstructionState generate(const SeedTriple& seed, std::size_t count) {
  if (count < 3) throw ArgumentError("count must be at least 3, got " + std::to_string(count));
  ConstructionState s(seed);
  while (s.size() < count) advance(s);
  return s;
}

}  // namespace blbc
