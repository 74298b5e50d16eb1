#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "ghv/fan.hpp"
#include "ghv/polytope.hpp"

namespace ghv {

/// Integer polynomial, coefficient i belongs to x^i. Trailing zeros are trimmed,
/// so the zero polynomial has no coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  IntPolynomial(std::initializer_list<std::int64_t> c) : c_(c) { trim(); }
  explicit IntPolynomial(std::vector<std::int64_t> c) : c_(std::move(c)) { trim(); }

  static IntPolynomial monomial(int degree, std::int64_t coeff = 1);
  /// (1 + x)^n.
  static IntPolynomial one_plus_x_pow(int n);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::int64_t operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  const std::vector<std::int64_t>& coefficients() const { return c_; }
  /// Coefficients 0..n, padded with zeros.
  std::vector<std::int64_t> padded(int n) const;

  /// p(x^k).
  IntPolynomial substitute_power(int k) const;
  IntPolynomial pow(int e) const;

  friend IntPolynomial operator+(const IntPolynomial& p, const IntPolynomial& q);
  friend IntPolynomial operator-(const IntPolynomial& p, const IntPolynomial& q);
  friend IntPolynomial operator*(const IntPolynomial& p, const IntPolynomial& q);
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  std::string str() const;

 private:
  void trim();
  std::vector<std::int64_t> c_;
};

/// tau_{<r}: keeps the coefficients of degree < r.
IntPolynomial truncate_below(const IntPolynomial& p, int r);

/// g_sigma of a cone of the fan, computed from its face poset. Simplicial
/// cones give 1; otherwise g = tau_{<ceil(d/2)}((1-x) h_Lambda) where h_Lambda
/// runs over the proper faces of sigma. Results are shared across fans through
/// a cache keyed by the isomorphism class of the face poset.
IntPolynomial g_polynomial(const Fan& fan, int cone_id);

/// h_Delta = sum over cones of (x-1)^(dim Delta - dim sigma) g_sigma. Throws
/// InvalidFan if the fan is not complete.
IntPolynomial h_polynomial(const Fan& fan);
IntPolynomial h_polynomial(const Polytope& p);

/// Same sum with every g set to 1; throws InvalidFan on a non-simplicial cone.
IntPolynomial h_simplicial(const Fan& fan);

/// Same as g_polynomial but evaluated on the geometric quotient fan, without
/// the cache. Used to cross-check the combinatorial recursion.
IntPolynomial g_via_quotient_fan(const Fan& fan, int cone_id);

bool is_palindromic(const IntPolynomial& p, int n);
bool is_unimodal(const IntPolynomial& p);

struct GCacheStats {
  std::size_t classes = 0;
  std::size_t hits = 0;
  std::size_t isomorphism_tests = 0;
};
GCacheStats g_cache_stats();
void clear_g_cache();

struct BoundsReport {
  int n = 0;
  IntPolynomial h;
  IntPolynomial difference;  // h - (1+x)^n
  bool palindromic = false;
  bool unimodal = false;
  bool nonnegative_even_difference = false;
  bool difference_palindromic = false;
  bool difference_unimodal = false;
  /// h_j - h_{j-1} >= C(n,j) - C(n,j-1) for 1 <= j <= n/2.
  bool increment_bounds = false;
  bool is_minimum = false;
  bool is_cross_polytope = false;

  /// Every inequality holds and minimum <=> cross-polytope.
  bool all_hold() const;
  /// Name of the first failing check, empty when all hold.
  std::string first_failure() const;
};

/// Flags computed from an h-polynomial of a CS n-polytope.
BoundsReport bounds_from_h(const IntPolynomial& h, int n, bool cross_polytope);

/// Throws InvalidPolytope unless P = -P.
BoundsReport check_cs_bounds(const Polytope& p);

std::int64_t binomial(int n, int k);

}  // namespace ghv
