#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ghv {

/// Thrown when two scalars from different quadratic fields meet.
class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Arbitrary-precision rational, reduced with positive denominator.
///
/// Values whose numerator and denominator fit in 63 bits are stored inline;
/// anything larger lives in an immutable shared GMP rational. Results are
/// demoted back to the inline form whenever they fit, so equality is
/// structural in either representation.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : num_(value) {  // NOLINT(google-explicit-constructor)
    if (value == INT64_MIN) *this = Rational(mpq_class(value));
  }
  explicit Rational(const mpq_class& value);

  /// Parses "p", "-p" or "p/q".
  static Rational parse(std::string_view text);

  int sign() const;
  bool is_zero() const { return !big_ && num_ == 0; }
  mpq_class to_mpq() const;
  /// "p/q" or "p".
  std::string str() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x, const Rational& y);
  friend Rational operator*(const Rational& x, const Rational& y);
  friend Rational operator/(const Rational& x, const Rational& y);
  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }
  Rational& operator/=(const Rational& y) { return *this = *this / y; }

  friend bool operator==(const Rational& x, const Rational& y);
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

/// An element a + b*sqrt(d) of an exact ordered field.
///
/// d == 0 denotes the rational context (b is then always zero). A value
/// carrying d == 0 embeds into every Q(sqrt d); two values with different
/// nonzero radicands cannot be combined.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(Rational value) : a_(std::move(value)) {}
  explicit Scalar(const mpq_class& value) : a_(value) {}

  /// a + b*sqrt(d); d must be a square-free integer > 1.
  static Scalar quadratic(Rational a, Rational b, long d);

  /// Parses "p", "-p" or "p/q" into a rational scalar.
  static Scalar parse_rational(std::string_view text) { return Scalar(Rational::parse(text)); }

  const Rational& rational_part() const { return a_; }
  const Rational& irrational_part() const { return b_; }
  long radicand() const { return d_; }
  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  /// Exact sign of the real number a + b*sqrt(d).
  int sign() const;

  Scalar conjugate() const;
  /// Field norm a^2 - d*b^2.
  Rational norm() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

  friend bool operator==(const Scalar& x, const Scalar& y);
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y);

  /// "p/q" for rationals, "a + b*sqrt(d)" otherwise (display only).
  std::string to_string() const;

 private:
  static long common_radicand(const Scalar& x, const Scalar& y);

  Rational a_;
  Rational b_;
  long d_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Rational& x);
std::ostream& operator<<(std::ostream& os, const Scalar& x);

bool is_square_free(long d);

}  // namespace ghv
