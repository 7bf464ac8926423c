// Command-line front end: generate, verify, analyze, render.
//
// Exit codes: 0 success or verdict delivered, 1 verification failure,
// 2 input or usage error, 3 I/O error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blbc/blbc.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;
constexpr int kIoError = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input tagged with the file it came from.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "'");
}

template <typename F>
auto parse_input(const std::string& path, F&& parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const blbc::io::FormatError& e) {
    throw InputError(path + ": " + e.what());
  }
}

blbc::PointSet load_points(const std::string& path) {
  auto f = parse_input(path, [](const std::string& t) { return blbc::io::parse_point_file(t); });
  try {
    f.points.validate_distinct();
  } catch (const blbc::ValidationError& e) {
    throw InputError(path + ": " + e.what());
  }
  return f.points;
}

struct GenerateArgs {
  std::size_t count = 0;
  std::string seed;
  std::string out;
  std::string trace;
};

int cmd_generate(const GenerateArgs& a) {
  blbc::SeedTriple seed = blbc::default_seed();
  if (!a.seed.empty()) {
    seed = parse_input(a.seed, [](const std::string& t) { return blbc::io::parse_seed_file(t); });
  }
  blbc::ConstructionState state = [&] {
    try {
      return blbc::generate(seed, a.count);
    } catch (const blbc::SeedError& e) {
      throw InputError((a.seed.empty() ? std::string("seed") : a.seed) + ": " + e.what());
    }
  }();
  const std::string points = blbc::io::serialize(blbc::io::make_point_file(state, seed));
  if (a.out.empty()) {
    std::cout << points;
  } else {
    write_file(a.out, points);
  }
  if (!a.trace.empty()) write_file(a.trace, blbc::io::serialize(blbc::io::TraceFile{1, state.trace()}));
  return kOk;
}

struct VerifyArgs {
  std::string points;
  std::string trace;
  std::vector<std::string> checks;
};

int cmd_verify(const VerifyArgs& a) {
  namespace names = blbc::check_names;
  const std::vector<std::string> all = {names::no_k_collinear, names::unique_triple, names::visible_pair_lemma,
                                        names::triangle_pending, names::exclusion_bound, names::ordinary_oracle};
  const std::set<std::string> needs_trace = {names::unique_triple, names::exclusion_bound, names::ordinary_oracle};

  std::vector<std::string> selected;
  if (a.checks.empty()) {
    for (const auto& c : all) {
      if (!a.trace.empty() || !needs_trace.contains(c)) selected.push_back(c);
    }
  } else {
    for (const auto& c : a.checks) {
      if (std::find(all.begin(), all.end(), c) == all.end()) {
        throw InputError("--checks: unknown check '" + c + "'");
      }
      if (needs_trace.contains(c) && a.trace.empty()) {
        throw InputError("--checks: check '" + c + "' needs --trace");
      }
      if (std::find(selected.begin(), selected.end(), c) == selected.end()) selected.push_back(c);
    }
  }

  const blbc::PointSet ps = load_points(a.points);
  std::optional<blbc::Trace> trace;
  if (!a.trace.empty()) {
    trace = parse_input(a.trace, [](const std::string& t) { return blbc::io::parse_trace_file(t); }).records;
  }

  std::vector<blbc::VerificationReport> reports;
  try {
    for (const auto& c : selected) {
      if (c == names::no_k_collinear) {
        reports.push_back(blbc::verify_no_k_collinear(ps, 4));
      } else if (c == names::unique_triple) {
        reports.push_back(blbc::verify_unique_triple_at_insertion(*trace, ps));
      } else if (c == names::visible_pair_lemma) {
        reports.push_back(blbc::verify_visible_pair_lemma(ps));
      } else if (c == names::triangle_pending) {
        std::set<blbc::OrdinaryPair> pending;
        for (const auto& [i, j] : blbc::LineIncidenceMap::build(ps).ordinary_pairs()) pending.insert({i, j});
        reports.push_back(blbc::verify_triangle_pending(ps, pending));
      } else if (c == names::exclusion_bound) {
        reports.push_back(blbc::verify_exclusion_bound(*trace));
      } else if (c == names::ordinary_oracle) {
        reports.push_back(blbc::verify_trace_selections(*trace, ps));
      }
    }
  } catch (const blbc::ConsistencyError& e) {
    throw InputError(a.trace + ": " + e.what());
  }

  const auto doc = blbc::io::verification_document(reports);
  std::cout << blbc::io::dump(doc);
  return doc["passed"].get<bool>() ? kOk : kFailed;
}

struct AnalyzeArgs {
  std::string points;
  long k = 0;
  long l = 0;
};

int cmd_analyze(const AnalyzeArgs& a) {
  if (a.k < 2 || a.l < 2) {
    throw InputError("--k and --l must both be at least 2 (got k=" + std::to_string(a.k) +
                     ", l=" + std::to_string(a.l) + ")");
  }
  const blbc::PointSet ps = load_points(a.points);
  const auto k = static_cast<std::size_t>(a.k);
  const auto l = static_cast<std::size_t>(a.l);
  std::cout << blbc::io::dump(blbc::io::to_json(blbc::check_blbc_instance(ps, k, l), k, l));
  return kOk;
}

struct RenderArgs {
  std::string points;
  std::string out;
  std::string edges = "none";
};

int cmd_render(const RenderArgs& a) {
  const auto layer = blbc::svg::parse_edge_layer(a.edges);
  const blbc::PointSet ps = load_points(a.points);
  if (ps.empty()) throw InputError(a.points + ": points: at least one point is required");
  write_file(a.out, blbc::svg::render(ps, layer));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact construction, verification and analysis of point sets without 4 collinear or 3 "
               "pairwise visible points"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a prefix of the construction");
  generate->add_option("--count", gen.count, "Number of points (>= 3)")->required()->check(CLI::Range(std::size_t{3}, std::size_t{1000000}));
  generate->add_option("--seed", gen.seed, "Point file with exactly 3 seed points");
  generate->add_option("--out", gen.out, "Output point file (default: standard output)");
  generate->add_option("--trace", gen.trace, "Output trace file");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Check the construction invariants on a point file");
  verify->add_option("points", ver.points, "Point file")->required();
  verify->add_option("--trace", ver.trace, "Trace file from the same generate run");
  verify->add_option("--checks", ver.checks,
                     "Comma-separated checks: no4collinear, unique_triple, visible_pair_lemma, triangle_pending, "
                     "exclusion_bound, ordinary_oracle")
      ->delimiter(',');

  AnalyzeArgs ana;
  auto* analyze = app.add_subcommand("analyze", "Decide the (k, l) instance: l collinear or k pairwise visible points");
  analyze->add_option("points", ana.points, "Point file")->required();
  analyze->add_option("--k", ana.k, "Clique size k (>= 2)")->required();
  analyze->add_option("--l", ana.l, "Collinear size l (>= 2)")->required();

  RenderArgs ren;
  auto* render = app.add_subcommand("render", "Draw a point file as SVG");
  render->add_option("points", ren.points, "Point file")->required();
  render->add_option("--out", ren.out, "Output SVG file")->required();
  render->add_option("--edges", ren.edges, "Edge layer: visibility, collinear or none");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (verify->parsed()) return cmd_verify(ver);
    if (analyze->parsed()) return cmd_analyze(ana);
    if (render->parsed()) return cmd_render(ren);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
