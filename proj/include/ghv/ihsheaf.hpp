#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ghv/fan.hpp"
#include "ghv/hvector.hpp"

namespace ghv {

class DegreeCapTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense homogeneous monomials in k variables, degree-lexicographic with the
/// first variable highest.
class MonomialTable {
 public:
  MonomialTable(std::size_t vars, int max_degree);
  std::size_t vars() const { return vars_; }
  std::size_t count(int degree) const;
  const std::vector<int>& exponents(int degree, std::size_t index) const { return lists_.at(degree)[index]; }
  std::size_t index(const std::vector<int>& exponents) const;
  /// Entry i*count(b)+j is the index of monomial i (degree a) times monomial j (degree b).
  const std::vector<std::size_t>& products(int a, int b) const { return products_.at({a, b}); }

 private:
  std::size_t vars_;
  std::vector<std::vector<std::vector<int>>> lists_;
  std::map<std::vector<int>, std::size_t> index_;
  std::map<std::pair<int, int>, std::vector<std::size_t>> products_;
};

/// Z[G] coefficients with G = {1, chi}, chi^2 = 1: plus + minus*chi.
struct RefinedPolynomial {
  IntPolynomial plus;
  IntPolynomial minus;

  friend RefinedPolynomial operator*(const RefinedPolynomial& a, const RefinedPolynomial& b);
  friend bool operator==(const RefinedPolynomial&, const RefinedPolynomial&) = default;
};

RefinedPolynomial truncate_below(const RefinedPolynomial& p, int r);

/// A graded vector space of sections over a subfan: element coordinates are
/// the concatenated stalk coordinates over `cones`.
struct GradedSections {
  std::vector<int> cones;                         // maximal cones of the subfan
  std::vector<std::vector<std::size_t>> offsets;  // [j][cone index] start of block
  std::vector<std::vector<Vector>> basis;         // [j] basis, j = q/2
  std::size_t dim(int q) const { return q % 2 ? 0 : basis.at(q / 2).size(); }
};

struct LefschetzRow {
  int q = 0;  // source degree
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::size_t rank = 0;
  bool injective_required = false;
  bool surjective_required = false;
  bool ok() const {
    return (!injective_required || rank == source_dim) && (!surjective_required || rank == target_dim);
  }
};

struct PhiDimensions {
  RefinedPolynomial v;  // eigenspace dims of E_Delta
  RefinedPolynomial u;  // eigenspace dims of the quotient by m*E_Delta
  friend bool operator==(const PhiDimensions&, const PhiDimensions&) = default;
};

/// Minimal extension sheaf on a fan, built degreewise up to a cap.
///
/// Degree convention: a polynomial of degree j sits in degree q = 2j. For each
/// cone sigma, E_sigma is free over A_sigma with generators of the recorded
/// degrees, written in the coordinates of a basis of V_sigma (pivot rays; for
/// centrally symmetric fans the antipode -sigma uses the negated basis so that
/// phi = -id acts as the identity on coordinates).
class MinimalExtensionSheaf {
 public:
  /// Which cone of each pair {sigma, -sigma} gets freshly chosen generators;
  /// the other one receives them by transport along phi.
  enum class Representative { smaller_id, larger_id };

  /// degree_cap < 0 selects 2*(n+1). The cap must be even and >= 2n.
  static MinimalExtensionSheaf build(const Fan& fan, int degree_cap = -1,
                                     Representative representative = Representative::smaller_id);

  const Fan& fan() const { return fan_; }
  int degree_cap() const { return 2 * max_j_; }
  /// True when the fan is centrally symmetric and the sheaf was transported along phi.
  bool equivariant() const { return equivariant_; }

  /// Generator degrees q of E_sigma.
  std::vector<int> generator_degrees(int cone) const;
  std::size_t stalk_dim(int cone, int q) const;
  /// dim K_sigma^q for q = 0, 2, ..., cap (index q/2).
  const std::vector<std::size_t>& kernel_dimensions(int cone) const { return cones_.at(cone).kernel_dims; }
  /// Restriction E_sigma^q -> E_nu^q for a face nu of sigma.
  const Matrix& restriction(int sigma, int nu, int q) const;

  /// Per cone: restriction to the boundary is surjective, and reduction mod m
  /// is an isomorphism onto the boundary quotient, in every degree.
  bool flabby() const { return flabby_ok_; }
  bool axiom3_holds() const { return axiom3_ok_; }
  /// Restriction matrices of -sigma -> -nu equal those of sigma -> nu.
  bool phi_commutes_with_restrictions() const;
  /// Empty when every per-cone check passed, otherwise a description.
  const std::vector<std::string>& failures() const { return failures_; }

  GradedSections sections(const Subfan& subfan) const;
  const GradedSections& global_sections() const { return global_; }

  /// Coefficient q is the dimension in degree q (odd coefficients vanish).
  IntPolynomial poincare_v() const;
  IntPolynomial poincare_u() const;

  PhiDimensions phi_eigenspaces() const;
  /// Ranks of multiplication by s on the quotient, source degrees 0..min(2n, cap-2).
  std::vector<LefschetzRow> lefschetz_maps(const ConewiseLinear& s) const;
  /// Same, restricted to the phi = -1 eigenspaces.
  std::vector<LefschetzRow> lefschetz_maps_minus(const ConewiseLinear& s) const;

 private:
  struct ConeData {
    std::vector<Vector> basis;  // of V_sigma
    std::vector<int> degrees;   // generator degrees j
    std::map<int, std::vector<Vector>> images;  // proper face -> generator images
    std::vector<std::size_t> kernel_dims;
  };

  MinimalExtensionSheaf(const Fan& fan, int max_j);
  std::size_t dim_j(int cone, int j) const;
  std::size_t block_offset(int cone, int j, std::size_t gen) const;
  /// Product of a degree-a polynomial on V_sigma with an element of E_sigma^b.
  Vector multiply(int cone, const Vector& poly, int a, const Vector& element, int b) const;
  Vector linear_form(int cone, const Vector& functional) const;
  const Matrix& restriction_j(int sigma, int nu, int j) const;
  void build_restrictions(int sigma);
  /// Builds E_sigma; source >= 0 transports the generators of source = -sigma.
  void process_cone(int sigma, int source);
  GradedSections sections_over(const std::vector<int>& maximal, bool ridges_only) const;
  std::vector<std::vector<Vector>> m_span(const GradedSections& s) const;
  Vector times_linear(const GradedSections& s, int j, const Vector& e, const std::vector<Vector>& forms) const;
  Vector apply_phi(const GradedSections& s, int j, const Vector& e) const;
  std::vector<LefschetzRow> lefschetz_impl(const ConewiseLinear& s, bool minus) const;

  Fan fan_;
  int max_j_;
  bool equivariant_ = false;
  bool flabby_ok_ = true;
  bool axiom3_ok_ = true;
  std::vector<int> antipode_;
  std::vector<MonomialTable> monomials_;  // index = number of variables
  std::vector<ConeData> cones_;
  std::map<std::tuple<int, int, int>, Matrix> restrictions_;
  std::vector<std::string> failures_;
  GradedSections global_;
  std::vector<std::vector<Vector>> global_m_;  // spanning rows of m*E per j
};

struct HauptsatzViaSheaf {
  bool minus_dims_match = false;      // dim (E-bar^q)^- = (u_q - binom)/2
  bool minus_lefschetz_ok = false;
  bool difference_unimodal = false;
  bool agrees_with_bounds = false;    // minus dims agree with (h - (1+x)^n)(t^2)/2
  bool ok() const { return minus_dims_match && minus_lefschetz_ok && difference_unimodal && agrees_with_bounds; }
};

struct IHReport {
  int n = 0;
  int degree_cap = 0;
  IntPolynomial h;
  IntPolynomial u;
  IntPolynomial v;
  std::optional<PhiDimensions> phi;
  std::vector<LefschetzRow> lefschetz;
  std::vector<LefschetzRow> lefschetz_minus;
  bool axioms_ok = false;
  bool eq1_ok = false;
  // only for centrally symmetric fans
  std::optional<bool> eq2_ok;
  std::optional<bool> eq4_ok;
  std::optional<bool> proposition_ok;
  bool bettizahlen_ok = false;
  bool lefschetz_ok = false;
  std::optional<HauptsatzViaSheaf> hauptsatz;

  /// First failing identity, empty if none.
  std::string first_failure() const;
};

/// v * (1 - t^2)^n = u up to the cap.
bool check_free_series(const IntPolynomial& v, const IntPolynomial& u, int n, int cap);
/// v^phi * (1 - chi t^2)^n = u^phi up to the cap.
bool check_refined_series(const PhiDimensions& phi, int n, int cap);
/// v^phi - 1 = (1 + chi)(v - 1)/2: positive degrees split evenly between the eigenspaces of E.
bool check_eigenspace_split(const PhiDimensions& phi, const IntPolynomial& v, int cap);
/// u^phi = (u + (1+t^2)^n)/2 + chi (u - (1+t^2)^n)/2.
bool check_refined_u(const PhiDimensions& phi, const IntPolynomial& u, int n);

/// u(t) = h(t^2).
bool verify_betti_equals_h(const MinimalExtensionSheaf& sheaf);
HauptsatzViaSheaf verify_hauptsatz_via_sheaf(const MinimalExtensionSheaf& sheaf, const ConewiseLinear& s);

/// Full pipeline on the face fan of P (origin interior).
IHReport analyse_ih(const Polytope& p, int degree_cap = -1);

}  // namespace ghv
