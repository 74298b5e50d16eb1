#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ghv/linalg.hpp"

namespace ghv {

class InvalidPolytope : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Supporting inequality normal . x + offset >= 0, tight exactly on `vertices`.
struct Facet {
  std::vector<int> vertices;
  Vector normal;
  Scalar offset;
};

/// A full-dimensional convex polytope given by its (exact) vertex list.
class Polytope {
 public:
  /// Validates full dimension and that every listed point is a vertex.
  static Polytope from_vertices(std::vector<Vector> vertices);
  /// Convex hull of arbitrary points; duplicates and non-extreme points are dropped.
  static Polytope convex_hull(std::vector<Vector> points);

  std::size_t dim() const { return dim_; }
  const std::vector<Vector>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  /// Common radicand of the coordinates (0 for rational polytopes).
  long radicand() const;

  bool origin_in_interior() const;
  Vector centroid() const;
  Polytope translated(const Vector& shift) const;
  /// Image under an invertible linear map.
  Polytope linear_image(const Matrix& map) const;

 private:
  Polytope(std::size_t dim, std::vector<Vector> vertices, std::vector<Facet> facets)
      : dim_(dim), vertices_(std::move(vertices)), facets_(std::move(facets)) {}

  std::size_t dim_ = 0;
  std::vector<Vector> vertices_;
  std::vector<Facet> facets_;
};

struct Face {
  std::vector<int> vertices;
  int dim = -1;
};

/// All faces of a polytope, from the empty face (dim -1) to P itself (dim n),
/// sorted by (dim, vertex set).
class FaceLattice {
 public:
  explicit FaceLattice(const Polytope& p);

  std::size_t dim() const { return dim_; }
  const std::vector<Face>& faces() const { return faces_; }
  /// Faces covering face i (one dimension up, containing it).
  const std::vector<int>& covers(int i) const { return up_[i]; }
  std::optional<int> find(const std::vector<int>& vertices) const;
  /// f_0 .. f_{n-1}.
  std::vector<std::size_t> f_vector() const;
  std::vector<int> proper_faces() const;

 private:
  std::size_t dim_;
  std::vector<Face> faces_;
  std::vector<std::vector<int>> up_;
};

FaceLattice face_lattice(const Polytope& p);

/// Polar with the "<u, v> >= -1" convention: vertex i is s_F for facet i, so
/// <s_F, v> = -1 on F.
Polytope dual_polytope(const Polytope& p);
/// s_F for every facet, in facet order.
std::vector<Vector> dual_vertices(const Polytope& p);

bool is_centrally_symmetric(const Polytope& p);
bool is_cross_polytope(const Polytope& p);

/// P itself when the origin is interior, otherwise P - centroid together with
/// the applied translation.
std::pair<Polytope, std::optional<Vector>> centered(const Polytope& p);

// Generators.
Polytope simplex(std::size_t n);
Polytope cube(std::size_t n);
Polytope cross_polytope(std::size_t n);
Polytope product(const Polytope& p, const Polytope& q);
Polytope free_sum(const Polytope& p, const Polytope& q);
/// conv(+-p_1, ..., +-p_k) with integer coordinates in [-10, 10], or
/// a + b*sqrt(radicand) coordinates when radicand > 0. Deterministic per seed.
Polytope random_cs(std::size_t n, std::size_t pairs, std::uint64_t seed, long radicand = 0);

}  // namespace ghv
