// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "blbc/blbc.hpp"
#include "oracles.hpp"

using namespace blbc;
namespace fs = std::filesystem;

namespace {

// Bytes of `blbc generate --count 6`, frozen.
const char* const kGolden6 = R"({
  "format_version": 1,
  "metadata": {
    "count": 6,
    "generator": "blbc 1.0.0",
    "seed": [
      {
        "x": "0",
        "y": "0"
      },
      {
        "x": "1",
        "y": "0"
      },
      {
        "x": "0",
        "y": "1"
      }
    ]
  },
  "points": [
    {
      "x": "0",
      "y": "0"
    },
    {
      "x": "1",
      "y": "0"
    },
    {
      "x": "0",
      "y": "1"
    },
    {
      "x": "1/2",
      "y": "0"
    },
    {
      "x": "0",
      "y": "1/2"
    },
    {
      "x": "1/2",
      "y": "1/2"
    }
  ]
}
)";

struct Outcome {
  bool passed = true;
  std::string note;

  void require(bool ok, const std::string& why) {
    if (!ok && passed) {
      passed = false;
      note = why;
    }
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args, const fs::path& out, const fs::path& err) {
  const std::string cmd = std::string(BLBC_CLI_PATH) + " " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Point P(long x, long y) { return {Rational(x), Rational(y)}; }
Point Q(long xn, long xd, long yn, long yd) { return {Rational(xn, xd), Rational(yn, yd)}; }

Outcome golden_prefix(const fs::path& dir) {
  Outcome o;
  const auto s = generate(default_seed(), 6);
  o.require(s.points() == PointSet{P(0, 0), P(1, 0), P(0, 1), Q(1, 2, 0, 1), Q(0, 1, 1, 2), Q(1, 2, 1, 2)},
            "points differ from (0,0),(1,0),(0,1),(1/2,0),(0,1/2),(1/2,1/2)");
  std::vector<OrdinaryPair> pairs;
  for (const auto& r : s.trace()) pairs.push_back(r.pair);
  o.require(pairs == std::vector<OrdinaryPair>{{1, 2}, {1, 3}, {2, 3}}, "chosen pairs differ from (1,2),(1,3),(2,3)");
  const auto seven = generate(default_seed(), 7);
  o.require(seven.trace().back().pair == OrdinaryPair{3, 4},
            "step n=7 selected " + seven.trace().back().pair.str() + ", expected (3,4)");
  const auto a = dir / "g6a.json", b = dir / "g6b.json";
  o.require(run_cli("generate --count 6 --out " + a.string(), dir / "o", dir / "e") == 0, "generate exited nonzero");
  o.require(run_cli("generate --count 6 --out " + b.string(), dir / "o", dir / "e") == 0, "generate exited nonzero");
  o.require(slurp(a) == slurp(b), "two runs differ");
  o.require(slurp(a) == kGolden6, "output bytes differ from the frozen golden file");
  if (o.passed) o.note = "6 points, pairs (1,2),(1,3),(2,3), n=7 on (3,4), bytes match golden";
  return o;
}

Outcome theorem_surrogates() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto s = generate(default_seed(), 300);
  for (std::size_t n = 3; n <= 300 && o.passed; ++n) {
    const auto ps = s.points().prefix(n);
    const Trace trace(s.trace().begin(), s.trace().begin() + static_cast<std::ptrdiff_t>(n - 3));
    std::set<OrdinaryPair> pending;
    for (const auto& [i, j] : LineIncidenceMap::build(ps).ordinary_pairs()) pending.insert({i, j});
    const std::string at = " fails at n=" + std::to_string(n);
    o.require(verify_no_k_collinear(ps, 4).passed, "no4collinear" + at);
    o.require(verify_unique_triple_at_insertion(trace, ps).passed, "unique_triple" + at);
    o.require(verify_visible_pair_lemma(ps).passed, "visible_pair_lemma" + at);
    o.require(verify_triangle_pending(ps, pending).passed, "triangle_pending" + at);
    o.require(verify_exclusion_bound(trace).passed, "exclusion_bound" + at);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 120.0, "took " + std::to_string(secs) + " s, limit 120 s");
  if (o.passed) {
    std::ostringstream note;
    note.precision(1);
    note << std::fixed << "5 checks on all 298 prefixes n=3..300 in " << secs << " s";
    o.note = note.str();
  }
  return o;
}

Outcome exclusion_bound_criterion() {
  Outcome o;
  const auto s = generate(default_seed(), 300);
  std::size_t tight = 0;
  for (const auto& r : s.trace()) {
    const auto bound = choose2(r.n - 3);
    o.require(r.excluded_count <= bound, "n=" + std::to_string(r.n) + " excludes " + std::to_string(r.excluded_count) +
                                             " > " + std::to_string(bound));
    tight += r.excluded_count == bound;
  }
  o.require(s.trace().front().n == 4 && s.trace().front().excluded_count == 0, "n=4 record is not 0");
  if (o.passed) {
    o.note = std::to_string(s.trace().size()) + " records within bound, " + std::to_string(tight) +
             " at equality, n=4 excludes 0";
  }
  return o;
}

Outcome ordinary_cross_validation() {
  Outcome o;
  auto s = init_state(default_seed());
  std::size_t steps = 0;
  while (s.size() < 40 && o.passed) {
    const auto chosen = select_ordinary_pair(s);
    const auto all = oracle::ordinary_pairs(s.points());
    o.require(!all.empty(), "no ordinary pair at n=" + std::to_string(s.size()));
    if (!o.passed) break;
    const auto best = *std::min_element(all.begin(), all.end(), [](const auto& l, const auto& r) {
      return std::pair{l.second, l.first} < std::pair{r.second, r.first};
    });
    o.require(chosen == OrdinaryPair{best.first, best.second},
              "step n=" + std::to_string(s.size() + 1) + " selected " + chosen.str());
    o.require(verify_ordinary_oracle(s.points(), chosen).passed, "library oracle disagrees");
    advance(s);
    ++steps;
  }
  if (o.passed) o.note = std::to_string(steps) + " steps n=4..40 agree";
  return o;
}

Outcome analyzer_oracles() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::size_t disagreements = 0;
  for (int k = 0; k < 200; ++k) {
    const auto n = std::uniform_int_distribution<std::size_t>(2, 10)(rng);
    const auto ps = oracle::random_set(rng, n);
    disagreements += max_visible_clique(ps).size != oracle::max_clique_exhaustive(ps);
    disagreements += max_collinear(ps).size != oracle::max_collinear_pairs(ps);
  }
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  if (o.passed) o.note = "200 random sets, 0 disagreements";
  return o;
}

Outcome blocking_monotonicity() {
  Outcome o;
  std::mt19937_64 rng(77);
  const auto s = generate(default_seed(), 80);
  for (int k = 0; k < 100 && o.passed; ++k) {
    const auto n = std::uniform_int_distribution<std::size_t>(3, 80)(rng);
    const auto ps = s.points().prefix(n);
    const auto edges = build_visibility_graph(ps).edges();
    const auto [i, j] = edges[std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng)];
    const long q = std::uniform_int_distribution<long>(2, 12)(rng);
    const long p = std::uniform_int_distribution<long>(1, q - 1)(rng);
    PointSet grown = ps;
    grown.push_back(segment_param_point(ps[i], ps[j], Rational(p, q)));
    const auto g = build_visibility_graph(grown);
    const std::string where = "edge (" + std::to_string(i) + "," + std::to_string(j) + ") at n=" + std::to_string(n);
    o.require(!g.has_edge(i, j) && !oracle::visible(grown, i, j), where + " still visible");
    const auto m = static_cast<Index>(n + 1);
    for (Index r = 1; r <= n; ++r) {
      o.require(g.has_edge(r, m) == oracle::visible(grown, r, m), where + ": new point edge to " + std::to_string(r));
    }
  }
  if (o.passed) o.note = "100 random visible edges blocked";
  return o;
}

Outcome instance_sanity() {
  Outcome o;
  o.require(check_blbc_instance(PointSet{P(0, 0), P(1, 0), P(0, 1)}, 3, 3).outcome == BlbcOutcome::CliqueFound,
            "triangle is not CliqueFound");
  o.require(check_blbc_instance(PointSet{P(0, 0), P(1, 0), P(2, 0)}, 3, 3).outcome == BlbcOutcome::CollinearFound,
            "collinear triple is not CollinearFound");
  o.require(check_blbc_instance(PointSet{Q(1, 3, 1, 7), P(5, 1), Q(-2, 1, -2, 7)}, 3, 3).outcome ==
                BlbcOutcome::CollinearFound,
            "rational collinear triple is not CollinearFound");
  const auto grid = oracle::grid3();
  const bool line = oracle::max_collinear_pairs(grid) >= 4;
  const bool clique = oracle::max_clique_exhaustive(grid) >= 4;
  const auto expected = line && clique ? BlbcOutcome::BothFound
                        : line         ? BlbcOutcome::CollinearFound
                        : clique       ? BlbcOutcome::CliqueFound
                                       : BlbcOutcome::NeitherFound;
  const auto v = check_blbc_instance(grid, 4, 4);
  o.require(v.outcome == expected, std::string("grid verdict ") + to_string(v.outcome) + ", oracles say " +
                                       to_string(expected));
  if (o.passed) {
    o.note = std::string("3x3 grid k=4 l=4: ") + to_string(v.outcome) + " (max clique " +
             std::to_string(oracle::max_clique_exhaustive(grid)) + ", max line " +
             std::to_string(oracle::max_collinear_pairs(grid)) + ")";
  }
  return o;
}

Outcome format_round_trip(const fs::path& dir) {
  Outcome o;
  std::mt19937_64 rng(8);
  for (int k = 0; k < 1000 && o.passed; ++k) {
    const auto n = std::uniform_int_distribution<std::size_t>(0, 15)(rng);
    std::vector<Point> pts;
    for (std::size_t m = 0; m < n; ++m) pts.push_back(oracle::any_point(rng, k % 2 ? (1L << 40) : 12));
    io::PointFile f{io::kFormatVersion, PointSet(std::move(pts)), std::nullopt};
    if (k % 4 == 0) f.metadata = io::Json{{"k", k}};
    const std::string once = io::serialize(f);
    o.require(io::serialize(io::parse_point_file(once)) == once, "file " + std::to_string(k) + " changed");
  }
  for (const std::string bad : {"2/4", "1/-3", "1/0"}) {
    const auto file = dir / "bad.json";
    std::ofstream(file) << R"({"format_version": 1, "points": [{"x": "0", "y": "0"}, {"x": "1", "y": ")" << bad
                        << "\"}]}";
    const int code = run_cli("verify " + file.string(), dir / "o", dir / "e");
    o.require(code == 2, "'" + bad + "' exit " + std::to_string(code));
    o.require(slurp(dir / "e").find("points[1].y") != std::string::npos, "'" + bad + "' diagnostic lacks field");
  }
  if (o.passed) o.note = "1000 files byte-identical, 2/4 1/-3 1/0 rejected with exit 2 at points[1].y";
  return o;
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / "blbc_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"golden prefix", [&] { return golden_prefix(dir); }},
      {"theorem surrogate suite", theorem_surrogates},
      {"exclusion bound", exclusion_bound_criterion},
      {"ordinary-line cross-validation", ordinary_cross_validation},
      {"analyzer oracle equivalence", analyzer_oracles},
      {"blocking monotonicity", blocking_monotonicity},
      {"conjecture-instance sanity", instance_sanity},
      {"format round-trip", [&] { return format_round_trip(dir); }},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.passed;
    std::cout << (o.passed ? "PASS" : "FAIL") << "  " << k + 1 << ". " << criteria[k].first << ": " << o.note
              << std::endl;
  }
  fs::remove_all(dir);
  return failures == 0 ? 0 : 1;
}
