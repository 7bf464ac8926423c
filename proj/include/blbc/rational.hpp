#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace blbc {

using Integer = mpz_class;

/// Thrown when rational text is not in canonical "p/q" or "p" form.
class RationalFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact rational number. Always stored reduced with a positive
/// denominator; zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }
  Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

  static Rational from_mpq(mpq_class q) {
    q.canonicalize();
    Rational r;
    r.value_ = std::move(q);
    return r;
  }

  const Integer& numerator() const { return value_.get_num(); }
  const Integer& denominator() const { return value_.get_den(); }
  const mpq_class& mpq() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return denominator() == 1; }

  Rational operator-() const { return from_mpq(-value_); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  /// Canonical text: "p" for integers, "p/q" otherwise.
  std::string str() const {
    if (is_integer()) return numerator().get_str();
    return numerator().get_str() + "/" + denominator().get_str();
  }

  /// Parses "p" or "p/q". Rejects anything that is not already reduced
  /// with a positive denominator, and non-canonical digit strings.
  static Rational parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  mpq_class value_{0};
};

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

inline std::size_t hash_integer(const Integer& z) {
  const mpz_srcptr p = z.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(p->_mp_size) * 0x9e3779b97f4a7c15ULL;
  const int limbs = p->_mp_size < 0 ? -p->_mp_size : p->_mp_size;
  for (int k = 0; k < limbs; ++k) {
    h ^= static_cast<std::size_t>(p->_mp_d[k]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace detail

inline Rational Rational::parse(std::string_view text) {
  const std::string shown{text};
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);

  std::string_view num_digits = num;
  if (!num_digits.empty() && num_digits.front() == '-') num_digits.remove_prefix(1);
  if (!detail::all_digits(num_digits)) {
    throw RationalFormatError("malformed rational '" + shown + "': numerator is not an integer");
  }
  if (num_digits.size() > 1 && num_digits.front() == '0') {
    throw RationalFormatError("malformed rational '" + shown + "': leading zero in numerator");
  }
  if (num == "-0") throw RationalFormatError("malformed rational '" + shown + "': negative zero");

  if (slash == std::string_view::npos) return Rational(Integer(std::string(num)));

  if (!den.empty() && den.front() == '-' && detail::all_digits(den.substr(1))) {
    throw RationalFormatError("malformed rational '" + shown + "': denominator must be positive");
  }
  if (!detail::all_digits(den)) {
    throw RationalFormatError("malformed rational '" + shown + "': denominator is not a positive integer");
  }
  if (den.size() > 1 && den.front() == '0') {
    throw RationalFormatError("malformed rational '" + shown + "': leading zero in denominator");
  }
  const Integer n{std::string(num)};
  const Integer d{std::string(den)};
  if (d == 0) throw RationalFormatError("malformed rational '" + shown + "': zero denominator");
  Integer g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (g != 1) throw RationalFormatError("malformed rational '" + shown + "': not in lowest terms");
  return Rational(n, d);
}

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace blbc

template <>
struct std::hash<blbc::Rational> {
  std::size_t operator()(const blbc::Rational& r) const noexcept {
    return blbc::detail::hash_integer(r.numerator()) * 31 ^
           blbc::detail::hash_integer(r.denominator());
  }
};
