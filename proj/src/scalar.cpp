#include "ghv/scalar.hpp"

#include <ostream>
#include <sstream>

namespace ghv {

namespace {

constexpr __int128 kSmallMax = INT64_MAX;

unsigned __int128 wide_gcd(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

unsigned __int128 wide_abs(__int128 x) {
  return x < 0 ? static_cast<unsigned __int128>(-(x + 1)) + 1 : static_cast<unsigned __int128>(x);
}

mpz_class wide_to_mpz(__int128 x) {
  const bool negative = x < 0;
  unsigned __int128 m = wide_abs(x);
  mpz_class hi(static_cast<unsigned long>(m >> 64));
  mpz_class lo(static_cast<unsigned long>(m & ~std::uint64_t{0}));
  mpz_class z = (hi << 64) + lo;
  return negative ? mpz_class(-z) : z;
}

bool fits_small(const mpz_class& z) {
  return mpz_sizeinbase(z.get_mpz_t(), 2) <= 63;
}

}  // namespace

Rational::Rational(const mpq_class& value) {
  mpq_class q(value);
  q.canonicalize();
  if (fits_small(q.get_num()) && fits_small(q.get_den())) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
  } else {
    big_ = std::make_shared<const mpq_class>(std::move(q));
  }
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const unsigned __int128 g = wide_gcd(wide_abs(num), static_cast<unsigned __int128>(den));
  if (g > 1) {
    num /= static_cast<__int128>(g);
    den /= static_cast<__int128>(g);
  }
  if (num <= kSmallMax && num >= -kSmallMax && den <= kSmallMax) {
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }
  return Rational(mpq_class(wide_to_mpz(num), wide_to_mpz(den)));
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto valid_digits = [](std::string_view part) {
    if (part.empty()) return false;
    for (char c : part) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  auto slash = s.find('/');
  std::string_view num = std::string_view(s).substr(0, slash);
  std::string_view den = slash == std::string::npos ? std::string_view("1") : std::string_view(s).substr(slash + 1);
  std::string_view num_digits = num;
  if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+')) num_digits.remove_prefix(1);
  if (!valid_digits(num_digits) || !valid_digits(den)) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class nz(n, 10);
  mpz_class dz(std::string(den), 10);
  if (sgn(dz) == 0) throw DivisionByZero("zero denominator in '" + s + "'");
  return Rational(mpq_class(nz, dz));
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

std::string Rational::str() const {
  if (big_) return big_->get_str(10);
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  Rational r = *this;
  r.num_ = -num_;
  return r;
}

Rational operator+(const Rational& x, const Rational& y) {
  if (!x.big_ && !y.big_) {
    if (x.den_ == 1 && y.den_ == 1) {
      return Rational::from_wide(static_cast<__int128>(x.num_) + y.num_, 1);
    }
    const __int128 num = static_cast<__int128>(x.num_) * y.den_ + static_cast<__int128>(y.num_) * x.den_;
    const __int128 den = static_cast<__int128>(x.den_) * y.den_;
    return Rational::from_wide(num, den);
  }
  return Rational(mpq_class(x.to_mpq() + y.to_mpq()));
}

Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }

Rational operator*(const Rational& x, const Rational& y) {
  if (!x.big_ && !y.big_) {
    if (x.num_ == 0 || y.num_ == 0) return Rational();
    return Rational::from_wide(static_cast<__int128>(x.num_) * y.num_, static_cast<__int128>(x.den_) * y.den_);
  }
  return Rational(mpq_class(x.to_mpq() * y.to_mpq()));
}

Rational operator/(const Rational& x, const Rational& y) {
  if (y.is_zero()) throw DivisionByZero("rational division by zero");
  if (!x.big_ && !y.big_) {
    return Rational::from_wide(static_cast<__int128>(x.num_) * y.den_, static_cast<__int128>(x.den_) * y.num_);
  }
  return Rational(mpq_class(x.to_mpq() / y.to_mpq()));
}

bool operator==(const Rational& x, const Rational& y) {
  if (!x.big_ && !y.big_) return x.num_ == y.num_ && x.den_ == y.den_;
  if (x.big_ && y.big_) return *x.big_ == *y.big_;
  return false;  // canonical: a value that fits is never stored big
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
  if (!x.big_ && !y.big_) {
    const __int128 l = static_cast<__int128>(x.num_) * y.den_;
    const __int128 r = static_cast<__int128>(y.num_) * x.den_;
    return l <=> r;
  }
  const int c = cmp(x.to_mpq(), y.to_mpq());
  return c <=> 0;
}

Scalar Scalar::quadratic(Rational a, Rational b, long d) {
  if (d <= 1 || !is_square_free(d)) {
    throw std::invalid_argument("radicand must be a square-free integer > 1, got " + std::to_string(d));
  }
  Scalar s;
  s.a_ = std::move(a);
  s.b_ = std::move(b);
  s.d_ = d;
  return s;
}

int Scalar::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with d*b^2; equality is impossible for square-free d
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * Rational(d_);
  return lhs > rhs ? sa : sb;
}

Scalar Scalar::conjugate() const {
  Scalar c = *this;
  c.b_ = -c.b_;
  return c;
}

Rational Scalar::norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }

long Scalar::common_radicand(const Scalar& x, const Scalar& y) {
  if (x.d_ == 0) return y.d_;
  if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
  throw FieldMismatch("cannot combine Q(sqrt " + std::to_string(x.d_) + ") with Q(sqrt " + std::to_string(y.d_) +
                      ")");
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.a_ = -r.a_;
  if (!r.b_.is_zero()) r.b_ = -r.b_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  d_ = common_radicand(*this, other);
  a_ += other.a_;
  if (!other.b_.is_zero()) b_ += other.b_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  d_ = common_radicand(*this, other);
  a_ -= other.a_;
  if (!other.b_.is_zero()) b_ -= other.b_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  d_ = common_radicand(*this, other);
  if (b_.is_zero() && other.b_.is_zero()) {
    a_ *= other.a_;
    return *this;
  }
  Rational a = a_ * other.a_ + b_ * other.b_ * Rational(d_);
  Rational b = a_ * other.b_ + b_ * other.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  if (other.is_zero()) throw DivisionByZero("scalar division by zero");
  d_ = common_radicand(*this, other);
  if (other.b_.is_zero()) {
    a_ /= other.a_;
    if (!b_.is_zero()) b_ /= other.a_;
    return *this;
  }
  const Rational n = other.norm();
  Scalar num = *this * other.conjugate();
  a_ = num.a_ / n;
  b_ = num.b_ / n;
  return *this;
}

bool operator==(const Scalar& x, const Scalar& y) {
  Scalar::common_radicand(x, y);
  return x.a_ == y.a_ && x.b_ == y.b_;
}

std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
  const int s = (x - y).sign();
  return s <=> 0;
}

std::string Scalar::to_string() const {
  if (is_rational()) return a_.str();
  std::ostringstream os;
  os << a_.str() << (b_.sign() < 0 ? " - " : " + ") << (b_.sign() < 0 ? (-b_).str() : b_.str()) << "*sqrt(" << d_
     << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }
std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.to_string(); }

bool is_square_free(long d) {
  if (d < 1) return false;
  for (long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

}  // namespace ghv
