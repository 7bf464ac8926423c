#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "blbc/construction.hpp"
#include "blbc/geometry.hpp"
#include "blbc/point_set.hpp"
#include "blbc/verifier.hpp"
#include "blbc/visibility.hpp"

// JSON point files, trace files, and report documents. All rationals are
// written as canonical strings; documents are serialized with sorted keys
// and two-space indentation so equal data gives equal bytes.

namespace blbc::io {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kGeneratorVersion = "blbc 1.0.0";

/// Malformed input document. The message starts with the offending field
/// path (e.g. "points[3].x") or the JSON syntax location.
class FormatError : public std::invalid_argument {
 public:
  FormatError(std::string field, const std::string& message)
      : std::invalid_argument(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct PointFile {
  int format_version = kFormatVersion;
  PointSet points;
  std::optional<Json> metadata;

  friend bool operator==(const PointFile&, const PointFile&) = default;
};

struct TraceFile {
  int format_version = kFormatVersion;
  Trace records;
};

// ---------------------------------------------------------------------------
// Encoding

inline Json to_json(const Point& p) { return Json{{"x", p.x.str()}, {"y", p.y.str()}}; }

inline Json to_json(const InsertionRecord& r) {
  return Json{{"n", r.n},
              {"i", r.pair.i},
              {"j", r.pair.j},
              {"excluded_count", r.excluded_count},
              {"t", r.t.str()},
              {"point", to_json(r.point)}};
}

inline Json to_json(const PointFile& f) {
  Json points = Json::array();
  for (const auto& p : f.points.points()) points.push_back(to_json(p));
  Json doc{{"format_version", f.format_version}, {"points", std::move(points)}};
  if (f.metadata) doc["metadata"] = *f.metadata;
  return doc;
}

inline Json to_json(const TraceFile& f) {
  Json records = Json::array();
  for (const auto& r : f.records) records.push_back(to_json(r));
  return Json{{"format_version", f.format_version}, {"records", std::move(records)}};
}

inline Json to_json(const CanonicalLine& l) {
  return Json{{"a", l.a.get_str()}, {"b", l.b.get_str()}, {"c", l.c.get_str()}};
}

inline Json to_json(const VerificationReport& r) {
  Json doc{{"check", r.check}, {"passed", r.passed}, {"stats", r.stats}};
  if (r.counterexample) {
    Json c{{"indices", r.counterexample->indices}, {"detail", r.counterexample->detail}};
    if (r.counterexample->line) c["line"] = to_json(*r.counterexample->line);
    doc["counterexample"] = std::move(c);
  }
  return doc;
}

inline Json to_json(const BlbcVerdict& v, std::size_t k, std::size_t l) {
  Json doc{{"outcome", to_string(v.outcome)},
           {"k", k},
           {"l", l},
           {"max_collinear", v.max_collinear},
           {"clique_size_capped", v.clique_size}};
  if (v.collinear_witness) doc["collinear_witness"] = *v.collinear_witness;
  if (v.clique_witness) doc["clique_witness"] = *v.clique_witness;
  return doc;
}

/// Canonical document text: sorted keys, two-space indent, trailing newline.
inline std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

inline std::string serialize(const PointFile& f) { return dump(to_json(f)); }
inline std::string serialize(const TraceFile& f) { return dump(to_json(f)); }

// ---------------------------------------------------------------------------
// Decoding

namespace detail {

inline Json parse_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError("", std::string("invalid JSON: ") + e.what());
  }
}

inline const Json& require(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

inline void reject_unknown(const Json& obj, std::initializer_list<std::string_view> known, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (auto k : known) ok = ok || it.key() == k;
    if (!ok) throw FormatError(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
  }
}

inline std::string field(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

inline Rational parse_rational(const Json& v, const std::string& path) {
  if (!v.is_string()) throw FormatError(path, "expected a rational string such as \"3/4\"");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const RationalFormatError& e) {
    throw FormatError(path, e.what());
  }
}

inline std::uint64_t parse_unsigned(const Json& v, const std::string& path) {
  if (!v.is_number_unsigned()) throw FormatError(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

inline int parse_version(const Json& doc) {
  const Json& v = require(doc, "format_version", "");
  if (!v.is_number_integer() || v.get<long long>() != kFormatVersion) {
    throw FormatError("format_version", "unsupported format version " + v.dump() + ", expected 1");
  }
  return kFormatVersion;
}

inline Point parse_point(const Json& v, const std::string& path) {
  if (!v.is_object()) throw FormatError(path, "expected an object with string fields x and y");
  reject_unknown(v, {"x", "y"}, path);
  return {parse_rational(require(v, "x", path), field(path, "x")),
          parse_rational(require(v, "y", path), field(path, "y"))};
}

}  // namespace detail

inline PointFile parse_point_file(std::string_view text) {
  const Json doc = detail::parse_document(text);
  if (!doc.is_object()) throw FormatError("", "point file must be a JSON object");
  detail::reject_unknown(doc, {"format_version", "points", "metadata"}, "");
  PointFile f;
  f.format_version = detail::parse_version(doc);
  const Json& points = detail::require(doc, "points", "");
  if (!points.is_array()) throw FormatError("points", "expected an array");
  std::vector<Point> out;
  out.reserve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    out.push_back(detail::parse_point(points[k], "points[" + std::to_string(k) + "]"));
  }
  f.points = PointSet(std::move(out));
  if (auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) throw FormatError("metadata", "expected an object");
    f.metadata = *it;
  }
  return f;
}

inline TraceFile parse_trace_file(std::string_view text) {
  const Json doc = detail::parse_document(text);
  if (!doc.is_object()) throw FormatError("", "trace file must be a JSON object");
  detail::reject_unknown(doc, {"format_version", "records"}, "");
  TraceFile f;
  f.format_version = detail::parse_version(doc);
  const Json& records = detail::require(doc, "records", "");
  if (!records.is_array()) throw FormatError("records", "expected an array");
  for (std::size_t k = 0; k < records.size(); ++k) {
    const std::string path = "records[" + std::to_string(k) + "]";
    const Json& r = records[k];
    if (!r.is_object()) throw FormatError(path, "expected an object");
    detail::reject_unknown(r, {"n", "i", "j", "excluded_count", "t", "point"}, path);
    InsertionRecord rec;
    rec.n = static_cast<Index>(detail::parse_unsigned(detail::require(r, "n", path), path + ".n"));
    if (rec.n != k + 4) {
      throw FormatError(path + ".n", "record numbers must be consecutive from 4, expected " + std::to_string(k + 4));
    }
    rec.pair.i = static_cast<Index>(detail::parse_unsigned(detail::require(r, "i", path), path + ".i"));
    rec.pair.j = static_cast<Index>(detail::parse_unsigned(detail::require(r, "j", path), path + ".j"));
    if (rec.pair.i < 1 || rec.pair.i >= rec.pair.j || rec.pair.j >= rec.n) {
      throw FormatError(path, "pair indices must satisfy 1 <= i < j < n");
    }
    rec.excluded_count = detail::parse_unsigned(detail::require(r, "excluded_count", path), path + ".excluded_count");
    rec.t = detail::parse_rational(detail::require(r, "t", path), path + ".t");
    rec.point = detail::parse_point(detail::require(r, "point", path), path + ".point");
    f.records.push_back(std::move(rec));
  }
  return f;
}

/// Seed files are point files holding exactly three points.
inline SeedTriple parse_seed_file(std::string_view text) {
  const PointFile f = parse_point_file(text);
  if (f.points.size() != 3) {
    throw FormatError("points", "seed file must hold exactly 3 points, found " + std::to_string(f.points.size()));
  }
  return {{f.points[1], f.points[2], f.points[3]}};
}

inline PointFile make_point_file(const ConstructionState& s, const SeedTriple& seed) {
  Json seed_desc = Json::array();
  for (const auto& p : seed.points) seed_desc.push_back(to_json(p));
  return {kFormatVersion, s.points(),
          Json{{"generator", kGeneratorVersion}, {"seed", std::move(seed_desc)}, {"count", s.size()}}};
}

/// Verification document: one report per check and an overall flag.
inline Json verification_document(const std::vector<VerificationReport>& reports) {
  Json checks = Json::array();
  bool all = true;
  for (const auto& r : reports) {
    checks.push_back(to_json(r));
    all = all && r.passed;
  }
  return Json{{"passed", all}, {"checks", std::move(checks)}};
}

}  // namespace blbc::io
