#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ghv/linalg.hpp"
#include "ghv/polytope.hpp"

namespace ghv {

class InvalidFan : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A cone of a fan: sorted indices into the fan's ray list.
struct Cone {
  std::vector<int> rays;
  int dim = 0;
};

/// Cone ids of a subfan of some Fan (sorted).
using Subfan = std::vector<int>;

/// A fan of strictly convex cones with exact ray generators.
///
/// Cones are sorted by (dim, ray set); id 0 is always the zero cone. Faces of a
/// cone are exactly the member cones whose ray set is contained in its own.
class Fan {
 public:
  /// Builds the fan generated by the given cones (ray index sets) together with
  /// all of their faces, which are computed geometrically. Checks strict
  /// convexity, that listed rays are extreme, and that two cones meet in a
  /// common face without one containing a foreign ray of the other.
  static Fan from_cones(std::size_t ambient_dim, std::vector<Vector> rays,
                        const std::vector<std::vector<int>>& cones);

  /// Trusted constructor for a face-closed cone list with known dimensions.
  static Fan from_face_poset(std::size_t ambient_dim, std::vector<Vector> rays, std::vector<Cone> cones);

  std::size_t ambient_dim() const { return ambient_dim_; }
  int dim() const { return dim_; }
  std::size_t size() const { return cones_.size(); }
  const std::vector<Vector>& rays() const { return rays_; }
  const std::vector<Cone>& cones() const { return cones_; }
  const Cone& cone(int id) const { return cones_.at(id); }
  std::vector<Vector> ray_vectors(int id) const;

  std::optional<int> find(const std::vector<int>& rays) const;
  /// All faces of a cone, including the zero cone and the cone itself.
  const std::vector<int>& faces_of(int id) const { return faces_.at(id); }
  std::vector<int> facets_of(int id) const;
  std::vector<int> maximal_cones() const;
  std::vector<int> cones_of_dim(int d) const;
  /// Id of the common face of two cones.
  int meet(int a, int b) const;

 private:
  Fan() = default;
  void index();

  std::size_t ambient_dim_ = 0;
  int dim_ = 0;
  std::vector<Vector> rays_;
  std::vector<Cone> cones_;
  std::map<std::vector<int>, int> lookup_;
  std::vector<std::vector<int>> faces_;
};

/// Per maximal cone, a linear functional on the ambient space.
struct ConewiseLinear {
  std::map<int, Vector> pieces;
  const Vector& on(int cone_id) const { return pieces.at(cone_id); }
};

/// Delta_P: cones over the proper faces of P (ray i is vertex i) plus the zero cone.
Fan face_fan(const Polytope& p);

/// The support function s_P on face_fan(P): on cone(F) it is <s_F, .>. Throws
/// InvalidFan if the pieces fail the strict concavity test.
ConewiseLinear support_function(const Polytope& p);

/// True iff the pieces agree on every common face (a section of conewise linear functions).
bool is_conewise_linear(const Fan& fan, const ConewiseLinear& s);

/// Strict concavity on adjacent maximal cones: each piece is strictly larger
/// than its neighbour's piece on the neighbour's rays outside the shared ridge.
bool is_strictly_concave(const Fan& fan, const ConewiseLinear& s);

bool is_complete(const Fan& fan);
Subfan boundary_fan(const Fan& fan, int cone_id);
Subfan cone_fan(const Fan& fan, int cone_id);

/// Lambda_sigma in V_sigma / L with L spanned by the sum of sigma's rays. Ray i
/// of the result is the image of the i-th ray of sigma; cone ids differ from
/// the parent fan.
Fan quotient_fan(const Fan& fan, int cone_id);

bool is_centrally_symmetric(const Fan& fan);
/// Ray involution r -> -r (up to positive scaling); throws InvalidFan if absent.
std::vector<int> antipodal_rays(const Fan& fan);
/// Cone involution sigma -> -sigma; throws InvalidFan if the fan is not symmetric.
std::vector<int> antipode_map(const Fan& fan);

bool is_simplicial(const Cone& cone);
bool is_simplicial(const Fan& fan);

/// Pivot rays of a cone (first linearly independent rays, as fan ray ids);
/// they form a basis of its linear span.
std::vector<int> span_basis(const Fan& fan, int cone_id);

}  // namespace ghv
