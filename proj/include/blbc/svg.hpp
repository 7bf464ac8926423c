#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <string_view>

#include "blbc/line_map.hpp"
#include "blbc/point_set.hpp"
#include "blbc/rational.hpp"
#include "blbc/visibility.hpp"

namespace blbc::svg {

/// Decimal text of r with at most `digits` significant digits, rounded
/// half-to-even, in plain (non-exponent) notation with trailing zeros
/// removed.
inline std::string to_decimal(const Rational& r, int digits = 12) {
  if (r.is_zero()) return "0";
  Integer a = abs(r.numerator());
  const Integer& b = r.denominator();

  auto pow10 = [](long e) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return p;
  };
  // a/b >= 10^e ?
  auto at_least = [&](long e) { return e >= 0 ? a >= b * pow10(e) : a * pow10(-e) >= b; };

  long e = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 10)) - static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 10));
  while (!at_least(e)) --e;
  while (at_least(e + 1)) ++e;

  long scale = digits - 1 - e;
  Integer num = scale >= 0 ? a * pow10(scale) : a;
  Integer den = scale >= 0 ? b : b * pow10(-scale);
  Integer q;
  Integer rem;
  mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  const int half = cmp(Integer(rem * 2), den);
  if (half > 0 || (half == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  if (q == pow10(digits)) {
    q /= 10;
    --scale;
  }

  std::string s = q.get_str();
  if (scale <= 0) {
    s.append(static_cast<std::size_t>(-scale), '0');
  } else {
    if (s.size() <= static_cast<std::size_t>(scale)) s.insert(0, static_cast<std::size_t>(scale) - s.size() + 1, '0');
    s.insert(s.size() - static_cast<std::size_t>(scale), ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return r.sign() < 0 ? "-" + s : s;
}

enum class EdgeLayer { None, Visibility, Collinear };

inline EdgeLayer parse_edge_layer(std::string_view name) {
  if (name == "visibility") return EdgeLayer::Visibility;
  if (name == "collinear") return EdgeLayer::Collinear;
  if (name == "none") return EdgeLayer::None;
  throw ArgumentError("unknown edge layer '" + std::string(name) + "' (expected visibility, collinear or none)");
}

/// Points as labelled circles over an optional edge layer. The y axis is
/// flipped so that larger y is drawn higher. Decimal text is for display
/// only.
inline std::string render(const PointSet& ps, EdgeLayer edges) {
  if (ps.empty()) throw ArgumentError("cannot render an empty point set");
  Rational min_x = ps[1].x, max_x = ps[1].x, min_y = ps[1].y, max_y = ps[1].y;
  for (const auto& p : ps.points()) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  Rational span = std::max(max_x - min_x, max_y - min_y);
  if (span.is_zero()) span = Rational(1);
  const Rational margin = span / Rational(20);
  const Rational left = min_x - margin;
  const Rational top = -max_y - margin;
  const Rational width = max_x - min_x + margin * Rational(2);
  const Rational height = max_y - min_y + margin * Rational(2);
  const Rational radius = span / Rational(100);
  const Rational font = span / Rational(30);
  const Rational stroke = span / Rational(400);

  auto d = [](const Rational& v) { return to_decimal(v); };
  auto sx = [&](const Point& p) { return d(p.x); };
  auto sy = [&](const Point& p) { return d(-p.y); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << d(left) << ' ' << d(top) << ' ' << d(width) << ' '
      << d(height) << "\">\n";

  auto segment = [&](const Point& a, const Point& b) {
    out << "    <line x1=\"" << sx(a) << "\" y1=\"" << sy(a) << "\" x2=\"" << sx(b) << "\" y2=\"" << sy(b) << "\"/>\n";
  };
  if (edges != EdgeLayer::None) {
    out << "  <g id=\"edges\" stroke=\"#4a7ab5\" stroke-width=\"" << d(stroke) << "\">\n";
    if (edges == EdgeLayer::Visibility) {
      for (const auto& [i, j] : build_visibility_graph(ps).edges()) segment(ps[i], ps[j]);
    } else {
      ps.validate_distinct();
      for (const auto& e : LineIncidenceMap::build(ps)) {
        if (e.indices.size() < 3) continue;
        const auto along = order_along_line(ps, e.indices);
        segment(ps[along.front()], ps[along.back()]);
      }
    }
    out << "  </g>\n";
  }
  out << "  <g id=\"points\" fill=\"#202020\" font-family=\"sans-serif\" font-size=\"" << d(font) << "\">\n";
  for (Index i = 1; i <= ps.size(); ++i) {
    const Point& p = ps[i];
    out << "    <circle cx=\"" << sx(p) << "\" cy=\"" << sy(p) << "\" r=\"" << d(radius) << "\"/>\n";
    out << "    <text x=\"" << d(p.x + radius) << "\" y=\"" << d(-p.y - radius) << "\">" << i << "</text>\n";
  }
  out << "  </g>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace blbc::svg
