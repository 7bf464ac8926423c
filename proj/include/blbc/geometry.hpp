#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "blbc/rational.hpp"

namespace blbc {

/// Raised for degenerate primitive input (coincident segment endpoints,
/// parameters outside the open unit interval).
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;

  std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }
};

inline Point operator+(const Point& p, const Point& v) { return {p.x + v.x, p.y + v.y}; }
inline Point operator-(const Point& p, const Point& q) { return {p.x - q.x, p.y - q.y}; }

enum class Orientation { Clockwise = -1, Collinear = 0, CounterClockwise = 1 };

inline Orientation reversed(Orientation o) { return static_cast<Orientation>(-static_cast<int>(o)); }

/// Sign of (b - a) x (c - a). Coincident inputs are Collinear.
inline Orientation orientation(const Point& a, const Point& b, const Point& c) {
  const mpq_class lhs = (b.x.mpq() - a.x.mpq()) * (c.y.mpq() - a.y.mpq());
  const mpq_class rhs = (b.y.mpq() - a.y.mpq()) * (c.x.mpq() - a.x.mpq());
  const int s = cmp(lhs, rhs);
  return s > 0 ? Orientation::CounterClockwise : s < 0 ? Orientation::Clockwise : Orientation::Collinear;
}

/// True iff p lies strictly inside the segment ab.
inline bool on_open_segment(const Point& p, const Point& a, const Point& b) {
  if (a == b) throw GeometryError("degenerate segment: endpoints coincide at " + a.str());
  if (orientation(a, b, p) != Orientation::Collinear) return false;
  // Betweenness along the axis where a and b differ most.
  const Rational dx = abs(b.x - a.x);
  const Rational dy = abs(b.y - a.y);
  const bool use_x = dx >= dy;
  const Rational& pa = use_x ? a.x : a.y;
  const Rational& pb = use_x ? b.x : b.y;
  const Rational& pp = use_x ? p.x : p.y;
  return (pa < pp && pp < pb) || (pb < pp && pp < pa);
}

/// Line a*x + b*y = c with coprime integer coefficients, normalized so
/// that a > 0, or a == 0 and b > 0.
struct CanonicalLine {
  Integer a;
  Integer b;
  Integer c;

  friend bool operator==(const CanonicalLine& l, const CanonicalLine& r) {
    return l.a == r.a && l.b == r.b && l.c == r.c;
  }
  friend std::strong_ordering operator<=>(const CanonicalLine& l, const CanonicalLine& r) {
    for (auto [x, y] : {std::pair{&l.a, &r.a}, std::pair{&l.b, &r.b}, std::pair{&l.c, &r.c}}) {
      const int s = cmp(*x, *y);
      if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  bool contains(const Point& p) const {
    return mpq_class(a) * p.x.mpq() + mpq_class(b) * p.y.mpq() == mpq_class(c);
  }

  std::string str() const { return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")"; }
};

/// A point in integer homogeneous form (x/w, y/w) with w > 0. Used by
/// bulk incidence computations.
struct IntegerPoint {
  Integer x;
  Integer y;
  Integer w;

  static IntegerPoint from(const Point& p) {
    IntegerPoint h;
    mpz_lcm(h.w.get_mpz_t(), p.x.denominator().get_mpz_t(), p.y.denominator().get_mpz_t());
    h.x = p.x.numerator() * (h.w / p.x.denominator());
    h.y = p.y.numerator() * (h.w / p.y.denominator());
    return h;
  }
};

namespace detail {

// Values below 2^31 in magnitude: products of two fit in 63 bits and sums of
// three such products fit in __int128, so the small path is exact.
inline bool small(const Integer& v) { return mpz_sizeinbase(v.get_mpz_t(), 2) <= 31; }
inline bool small(const IntegerPoint& p) { return small(p.x) && small(p.y) && small(p.w); }
inline long as_long(const Integer& v) { return mpz_get_si(v.get_mpz_t()); }

inline int sign128(__int128 v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

}  // namespace detail

/// Sign-correct evaluation of a*x + b*y - c at p, scaled by p.w > 0.
inline Integer evaluate(const CanonicalLine& l, const IntegerPoint& p) {
  Integer v;
  mpz_mul(v.get_mpz_t(), l.a.get_mpz_t(), p.x.get_mpz_t());
  mpz_addmul(v.get_mpz_t(), l.b.get_mpz_t(), p.y.get_mpz_t());
  mpz_submul(v.get_mpz_t(), l.c.get_mpz_t(), p.w.get_mpz_t());
  return v;
}

/// Sign of evaluate(l, p).
inline int side(const CanonicalLine& l, const IntegerPoint& p) {
  if (detail::small(l.a) && detail::small(l.b) && detail::small(l.c) && detail::small(p)) {
    using detail::as_long;
    const __int128 v = static_cast<__int128>(as_long(l.a)) * as_long(p.x) +
                       static_cast<__int128>(as_long(l.b)) * as_long(p.y) -
                       static_cast<__int128>(as_long(l.c)) * as_long(p.w);
    return detail::sign128(v);
  }
  return sgn(evaluate(l, p));
}

/// Orientation from homogeneous coordinates; w > 0 keeps the sign of the
/// 3x3 determinant equal to the affine orientation.
inline Orientation orientation(const IntegerPoint& a, const IntegerPoint& b, const IntegerPoint& c) {
  int s = 0;
  if (detail::small(a) && detail::small(b) && detail::small(c)) {
    using detail::as_long;
    using I = __int128;
    // Translate to a as origin: (b - a) x (c - a) scaled by the weights.
    const I bx = I(as_long(b.x)) * as_long(a.w) - I(as_long(a.x)) * as_long(b.w);
    const I by = I(as_long(b.y)) * as_long(a.w) - I(as_long(a.y)) * as_long(b.w);
    const I cx = I(as_long(c.x)) * as_long(a.w) - I(as_long(a.x)) * as_long(c.w);
    const I cy = I(as_long(c.y)) * as_long(a.w) - I(as_long(a.y)) * as_long(c.w);
    // The dropped common factor a.w^2 * b.w * c.w is positive.
    const I lhs = bx * cy;
    const I rhs = by * cx;
    s = lhs > rhs ? 1 : lhs < rhs ? -1 : 0;
  } else {
    Integer det = a.x * (b.y * c.w - c.y * b.w);
    det -= a.y * (b.x * c.w - c.x * b.w);
    det += a.w * (b.x * c.y - c.x * b.y);
    s = sgn(det);
  }
  return s > 0 ? Orientation::CounterClockwise : s < 0 ? Orientation::Clockwise : Orientation::Collinear;
}

namespace detail {

inline CanonicalLine normalize_line(Integer a, Integer b, Integer c) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g != 1) {
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  if (sgn(a) < 0 || (sgn(a) == 0 && sgn(b) < 0)) {
    a = -a;
    b = -b;
    c = -c;
  }
  return {std::move(a), std::move(b), std::move(c)};
}

}  // namespace detail

namespace detail {

/// Normalized line coefficients in machine words.
struct SmallLine {
  long a;
  long b;
  long c;

  friend bool operator==(const SmallLine&, const SmallLine&) = default;
  friend auto operator<=>(const SmallLine&, const SmallLine&) = default;
  CanonicalLine widen() const { return {Integer(a), Integer(b), Integer(c)}; }
};

struct SmallLineHash {
  std::size_t operator()(const SmallLine& l) const noexcept {
    std::size_t h = static_cast<std::size_t>(l.a) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::size_t>(l.b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(l.c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// Requires small(p) and small(q); every intermediate then fits in a long.
inline SmallLine small_line_through(const IntegerPoint& p, const IntegerPoint& q) {
  const long px = as_long(p.x), py = as_long(p.y), pw = as_long(p.w);
  const long qx = as_long(q.x), qy = as_long(q.y), qw = as_long(q.w);
  long a = py * qw - qy * pw;
  long b = qx * pw - px * qw;
  long c = qx * py - px * qy;
  if (a == 0 && b == 0) throw GeometryError("degenerate line: points coincide");
  const long g = std::gcd(std::gcd(a, b), c);
  a /= g;
  b /= g;
  c /= g;
  if (a < 0 || (a == 0 && b < 0)) {
    a = -a;
    b = -b;
    c = -c;
  }
  return {a, b, c};
}

}  // namespace detail

/// Line through two distinct homogeneous points.
inline CanonicalLine line_through(const IntegerPoint& p, const IntegerPoint& q) {
  if (detail::small(p) && detail::small(q)) return detail::small_line_through(p, q).widen();
  Integer a = p.y * q.w - q.y * p.w;
  Integer b = q.x * p.w - p.x * q.w;
  Integer c = q.x * p.y - p.x * q.y;
  if (sgn(a) == 0 && sgn(b) == 0) throw GeometryError("degenerate line: points coincide");
  return detail::normalize_line(std::move(a), std::move(b), std::move(c));
}

inline CanonicalLine line_through(const Point& p, const Point& q) {
  if (p == q) throw GeometryError("degenerate line: points coincide at " + p.str());
  return line_through(IntegerPoint::from(p), IntegerPoint::from(q));
}

enum class IntersectionKind { Point, Parallel, Identical };

struct Intersection {
  IntersectionKind kind;
  std::optional<Point> point;

  explicit operator bool() const { return point.has_value(); }
};

inline Intersection intersect(const CanonicalLine& l1, const CanonicalLine& l2) {
  const Integer det = l1.a * l2.b - l2.a * l1.b;
  if (det == 0) {
    return {l1 == l2 ? IntersectionKind::Identical : IntersectionKind::Parallel, std::nullopt};
  }
  // Cramer's rule.
  Rational x(l1.c * l2.b - l2.c * l1.b, det);
  Rational y(l1.a * l2.c - l2.a * l1.c, det);
  return {IntersectionKind::Point, Point{std::move(x), std::move(y)}};
}

/// a + t (b - a) for t strictly inside (0, 1).
inline Point segment_param_point(const Point& a, const Point& b, const Rational& t) {
  if (a == b) throw GeometryError("degenerate segment: endpoints coincide at " + a.str());
  if (t.sign() <= 0 || t >= Rational(1)) {
    throw GeometryError("segment parameter " + t.str() + " outside the open interval (0,1)");
  }
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

}  // namespace blbc

template <>
struct std::hash<blbc::CanonicalLine> {
  std::size_t operator()(const blbc::CanonicalLine& l) const noexcept {
    using blbc::detail::hash_integer;
    std::size_t h = hash_integer(l.a);
    h = h * 1000003u ^ hash_integer(l.b);
    h = h * 1000003u ^ hash_integer(l.c);
    return h;
  }
};
