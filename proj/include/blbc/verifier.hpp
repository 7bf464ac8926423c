#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blbc/bitset.hpp"
#include "blbc/construction.hpp"
#include "blbc/geometry.hpp"
#include "blbc/line_map.hpp"
#include "blbc/point_set.hpp"
#include "blbc/visibility.hpp"

// Independent checks of the finite-prefix invariants. Each check works from
// the raw points with exact predicates; construction bookkeeping (trace,
// pending set) only enters as the claim under test.

namespace blbc {

/// Trace and point set do not describe the same run.
class ConsistencyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Counterexample {
  std::vector<Index> indices;
  std::optional<CanonicalLine> line;
  std::string detail;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct VerificationReport {
  VerificationReport() = default;
  explicit VerificationReport(std::string name) : check(std::move(name)) {}

  std::string check;
  bool passed = true;
  std::optional<Counterexample> counterexample;
  std::map<std::string, std::uint64_t> stats;

  void fail(Counterexample c) {
    passed = false;
    counterexample = std::move(c);
  }
};

namespace check_names {
inline constexpr const char* no_k_collinear = "no4collinear";
inline constexpr const char* unique_triple = "unique_triple";
inline constexpr const char* visible_pair_lemma = "visible_pair_lemma";
inline constexpr const char* triangle_pending = "triangle_pending";
inline constexpr const char* exclusion_bound = "exclusion_bound";
inline constexpr const char* ordinary_oracle = "ordinary_oracle";
}  // namespace check_names

/// Passes iff no line carries k or more points.
inline VerificationReport verify_no_k_collinear(const PointSet& ps, std::size_t k = 4) {
  if (k < 3) throw ArgumentError("collinearity threshold k must be at least 3, got " + std::to_string(k));
  VerificationReport r{check_names::no_k_collinear};
  r.stats["points"] = ps.size();
  if (ps.size() < k) return r;
  const auto lines = LineIncidenceMap::build(ps);
  r.stats["lines"] = lines.size();
  std::optional<Counterexample> worst;
  std::size_t largest = 0;
  for (const auto& e : lines) {
    largest = std::max(largest, e.indices.size());
    if (e.indices.size() < k) continue;
    std::vector<Index> witness(e.indices.begin(), e.indices.begin() + static_cast<std::ptrdiff_t>(k));
    if (!worst || witness < worst->indices) {
      worst = Counterexample{witness, e.line,
                             std::to_string(e.indices.size()) + " points on line " + e.line.str()};
    }
  }
  r.stats["max_collinear"] = largest;
  if (worst) r.fail(std::move(*worst));
  return r;
}

/// Each inserted point n is collinear with exactly one pair of earlier
/// points, that pair is the recorded one, and n sits strictly between them.
inline VerificationReport verify_unique_triple_at_insertion(const Trace& trace, const PointSet& ps) {
  if (ps.size() < 3 || trace.size() != ps.size() - 3) {
    throw ConsistencyError("trace has " + std::to_string(trace.size()) + " records but the point set has " +
                           std::to_string(ps.size()) + " points (expected points - 3 records)");
  }
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const auto& rec = trace[k];
    if (rec.n != k + 4) {
      throw ConsistencyError("trace record " + std::to_string(k) + " has n=" + std::to_string(rec.n) +
                             ", expected " + std::to_string(k + 4));
    }
    if (!(rec.point == ps[rec.n])) {
      throw ConsistencyError("trace record n=" + std::to_string(rec.n) + " point " + rec.point.str() +
                             " differs from point " + std::to_string(rec.n) + " of the set " + ps[rec.n].str());
    }
  }

  VerificationReport r{check_names::unique_triple};
  const auto h = ps.homogeneous();
  std::uint64_t pairs_tested = 0;
  for (const auto& rec : trace) {
    const Index n = rec.n;
    for (Index m = 1; m < n; ++m) {
      if (ps[m] == ps[n]) {
        r.fail({{m, n}, std::nullopt, "point " + std::to_string(n) + " duplicates point " + std::to_string(m)});
        return r;
      }
    }
    pairs_tested += n - 1;
    std::vector<std::pair<Index, Index>> collinear_pairs;
    for (const auto& members : lines_around(h, n, n - 1)) {
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) collinear_pairs.emplace_back(members[a], members[b]);
      }
    }
    std::sort(collinear_pairs.begin(), collinear_pairs.end());
    const std::pair<Index, Index> claimed{rec.pair.i, rec.pair.j};
    std::string problem;
    if (collinear_pairs.size() != 1) {
      problem = "point " + std::to_string(n) + " is collinear with " + std::to_string(collinear_pairs.size()) +
                " pairs of earlier points, expected exactly 1";
    } else if (collinear_pairs.front() != claimed) {
      problem = "point " + std::to_string(n) + " is collinear with pair (" +
                std::to_string(collinear_pairs.front().first) + "," + std::to_string(collinear_pairs.front().second) +
                "), trace claims " + rec.pair.str();
    } else if (!on_open_segment(ps[n], ps[rec.pair.i], ps[rec.pair.j])) {
      problem = "point " + std::to_string(n) + " is not strictly inside segment " + rec.pair.str();
    }
    if (!problem.empty()) {
      std::vector<Index> witness{n};
      for (const auto& [a, b] : collinear_pairs) {
        witness.push_back(a);
        witness.push_back(b);
      }
      r.fail({std::move(witness), std::nullopt, std::move(problem)});
      break;
    }
  }
  r.stats["records"] = trace.size();
  r.stats["pairs_tested"] = pairs_tested;
  return r;
}

/// For every visible pair i < k whose line carries a third point: the
/// line carries exactly three points, the third index i' is below k, and
/// x_k lies strictly inside segment (x_i, x_i').
inline VerificationReport verify_visible_pair_lemma(const PointSet& ps) {
  VerificationReport r{check_names::visible_pair_lemma};
  const auto lines = LineIncidenceMap::build(ps);
  std::uint64_t examined = 0;
  std::optional<Counterexample> worst;
  auto report = [&](Counterexample c) {
    if (!worst || c.indices < worst->indices) worst = std::move(c);
  };
  for (const auto& e : lines) {
    const auto& on = e.indices;
    if (on.size() < 3) continue;
    for (std::size_t a = 0; a < on.size(); ++a) {
      for (std::size_t b = a + 1; b < on.size(); ++b) {
        const Index i = on[a];
        const Index k = on[b];
        bool blocked = false;
        for (Index m : on) {
          if (m != i && m != k && on_open_segment(ps[m], ps[i], ps[k])) {
            blocked = true;
            break;
          }
        }
        if (blocked) continue;
        ++examined;
        if (on.size() != 3) {
          report({{i, k}, e.line,
                  "visible pair (" + std::to_string(i) + "," + std::to_string(k) + ") lies on a line with " +
                      std::to_string(on.size()) + " points, expected exactly 3"});
          continue;
        }
        const Index third = on[0] != i && on[0] != k ? on[0] : on[1] != i && on[1] != k ? on[1] : on[2];
        if (third > k) {
          report({{i, k, third}, e.line,
                  "third point " + std::to_string(third) + " on visible pair (" + std::to_string(i) + "," +
                      std::to_string(k) + ") has a larger index than " + std::to_string(k)});
        } else if (!on_open_segment(ps[k], ps[i], ps[third])) {
          report({{i, k, third}, e.line,
                  "point " + std::to_string(k) + " is not strictly between points " + std::to_string(i) + " and " +
                      std::to_string(third)});
        }
      }
    }
  }
  r.stats["visible_pairs_on_rich_lines"] = examined;
  r.stats["lines"] = lines.size();
  if (worst) r.fail(std::move(*worst));
  return r;
}

/// Every triangle of the visibility graph has at least one side among the
/// pending ordinary pairs.
inline VerificationReport verify_triangle_pending(const PointSet& ps, const std::set<OrdinaryPair>& pending) {
  VerificationReport r{check_names::triangle_pending};
  const auto n = static_cast<Index>(ps.size());
  const VisibilityGraph g = build_visibility_graph(ps);
  VisibilityGraph settled = g;
  for (const auto& p : pending) {
    if (p.i >= 1 && p.j <= n && p.i < p.j) settled.remove_edge(p.i, p.j);
  }
  std::uint64_t triangles = 0;
  std::optional<Counterexample> found;
  for (Index i = 1; i <= n; ++i) {
    const auto& ri = g.row(i);
    for (std::size_t jb = ri.next(i); jb != detail::Bitset::npos; jb = ri.next(jb + 1)) {
      const auto j = static_cast<Index>(jb + 1);
      detail::Bitset common = ri & g.row(j);
      for (std::size_t kb = common.next(j); kb != detail::Bitset::npos; kb = common.next(kb + 1)) ++triangles;
      if (found || !settled.has_edge(i, j)) continue;
      detail::Bitset bad = settled.row(i) & settled.row(j);
      if (const auto kb = bad.next(j); kb != detail::Bitset::npos) {
        const auto k = static_cast<Index>(kb + 1);
        found = Counterexample{{i, j, k}, std::nullopt,
                               "points " + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) +
                                   " are pairwise visible and none of their sides is pending"};
      }
    }
  }
  r.stats["triangles"] = triangles;
  r.stats["pending"] = pending.size();
  r.stats["edges"] = g.edge_count();
  if (found) r.fail(std::move(*found));
  return r;
}

/// Every record keeps excluded_count <= C(n-3, 2).
inline VerificationReport verify_exclusion_bound(const Trace& trace) {
  VerificationReport r{check_names::exclusion_bound};
  std::uint64_t total = 0;
  std::uint64_t tight = 0;
  for (const auto& rec : trace) {
    const auto bound = exclusion_bound(rec.n);
    total += rec.excluded_count;
    if (rec.excluded_count == bound) ++tight;
    if (rec.excluded_count > bound) {
      r.fail({{rec.n}, std::nullopt,
              "record n=" + std::to_string(rec.n) + " excludes " + std::to_string(rec.excluded_count) +
                  " parameters, bound C(" + std::to_string(rec.n - 3) + ",2) = " + std::to_string(bound)});
      break;
    }
  }
  r.stats["records"] = trace.size();
  r.stats["excluded_total"] = total;
  r.stats["records_at_bound"] = tight;
  return r;
}

/// Exhaustive ordinary-pair scan in (j, i) order with full orientation
/// tests; the first ordinary pair met is the minimum. Returns nullopt if
/// no pair is ordinary.
inline std::optional<OrdinaryPair> minimal_ordinary_pair(const PointSet& ps, std::uint64_t* pairs_examined = nullptr,
                                                         std::uint64_t* orientation_tests = nullptr) {
  const auto h = ps.homogeneous();
  const auto n = static_cast<Index>(ps.size());
  std::uint64_t pairs = 0;
  std::uint64_t tests = 0;
  std::optional<OrdinaryPair> out;
  for (Index j = 2; j <= n && !out; ++j) {
    for (Index i = 1; i < j && !out; ++i) {
      ++pairs;
      bool ordinary = true;
      for (Index m = 1; m <= n; ++m) {
        if (m == i || m == j) continue;
        ++tests;
        if (orientation(h[i - 1], h[j - 1], h[m - 1]) == Orientation::Collinear) {
          ordinary = false;
          break;
        }
      }
      if (ordinary) out = OrdinaryPair{i, j};
    }
  }
  if (pairs_examined) *pairs_examined += pairs;
  if (orientation_tests) *orientation_tests += tests;
  return out;
}

/// The construction's selected pair is the (j, i)-minimal ordinary pair of
/// the points present before the insertion.
inline VerificationReport verify_ordinary_oracle(const PointSet& ps, const OrdinaryPair& selected) {
  VerificationReport r{check_names::ordinary_oracle};
  std::uint64_t pairs = 0;
  std::uint64_t tests = 0;
  const auto best = minimal_ordinary_pair(ps, &pairs, &tests);
  r.stats["pairs_examined"] = pairs;
  r.stats["orientation_tests"] = tests;
  if (!best) {
    std::vector<Index> all(ps.size());
    std::iota(all.begin(), all.end(), Index{1});
    r.fail({std::move(all), std::nullopt, "impossible state: no ordinary pair exists (all points collinear)"});
  } else if (!(*best == selected)) {
    r.fail({{best->i, best->j, selected.i, selected.j}, std::nullopt,
            "minimal ordinary pair is " + best->str() + ", selected was " + selected.str()});
  }
  return r;
}

/// Runs the ordinary-pair oracle on the prefix before every trace record.
inline VerificationReport verify_trace_selections(const Trace& trace, const PointSet& ps) {
  VerificationReport r{check_names::ordinary_oracle};
  std::uint64_t steps = 0;
  for (const auto& rec : trace) {
    if (rec.n < 4 || rec.n > ps.size()) {
      throw ConsistencyError("trace record n=" + std::to_string(rec.n) + " outside the point set");
    }
    auto step = verify_ordinary_oracle(ps.prefix(rec.n - 1), rec.pair);
    for (const auto& [key, value] : step.stats) r.stats[key] += value;
    ++steps;
    if (!step.passed) {
      auto c = std::move(*step.counterexample);
      c.detail = "before inserting point " + std::to_string(rec.n) + ": " + c.detail;
      r.fail(std::move(c));
      break;
    }
  }
  r.stats["steps"] = steps;
  return r;
}

}  // namespace blbc
