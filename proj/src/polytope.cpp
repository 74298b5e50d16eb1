#include "ghv/polytope.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "ghv/cone_geometry.hpp"

namespace ghv {

namespace {

std::vector<Vector> homogenize(const std::vector<Vector>& points) {
  std::vector<Vector> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    Vector h(p);
    h.emplace_back(1);
    out.push_back(std::move(h));
  }
  return out;
}

std::size_t check_points(const std::vector<Vector>& points) {
  if (points.empty()) throw InvalidPolytope("polytope needs at least one point");
  const std::size_t n = points.front().size();
  if (n == 0) throw InvalidPolytope("ambient dimension must be at least 1");
  for (const auto& p : points) {
    if (p.size() != n) throw InvalidPolytope("points have inconsistent dimensions");
  }
  return n;
}

// Facets of conv(points) (points assumed pairwise distinct).
std::vector<Facet> hull_facets(const std::vector<Vector>& points, std::size_t n) {
  const auto homog = homogenize(points);
  if (rank_of(homog) != n + 1) throw InvalidPolytope("points are not full-dimensional");
  std::vector<Facet> facets;
  for (auto& cf : cone_facets(homog)) {
    Vector normal(cf.normal.begin(), cf.normal.begin() + static_cast<long>(n));
    facets.push_back({std::move(cf.rays), std::move(normal), cf.normal[n]});
  }
  return facets;
}

// A point is a vertex iff the normals of the facets through it have rank n.
bool is_vertex(int index, const std::vector<Facet>& facets, std::size_t n) {
  std::vector<Vector> normals;
  for (const auto& f : facets) {
    if (std::binary_search(f.vertices.begin(), f.vertices.end(), index)) normals.push_back(f.normal);
  }
  return rank_of(normals) == n;
}

}  // namespace

Polytope Polytope::from_vertices(std::vector<Vector> vertices) {
  const std::size_t n = check_points(vertices);
  {
    std::set<Vector> distinct(vertices.begin(), vertices.end());
    if (distinct.size() != vertices.size()) throw InvalidPolytope("vertices are not pairwise distinct");
  }
  if (vertices.size() < n + 1) throw InvalidPolytope("fewer than n+1 vertices");
  auto facets = hull_facets(vertices, n);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!is_vertex(static_cast<int>(i), facets, n)) {
      throw InvalidPolytope("point " + std::to_string(i) + " is not a vertex");
    }
  }
  return Polytope(n, std::move(vertices), std::move(facets));
}

Polytope Polytope::convex_hull(std::vector<Vector> points) {
  const std::size_t n = check_points(points);
  std::vector<Vector> distinct;
  {
    std::set<Vector> seen;
    for (auto& p : points) {
      if (seen.insert(p).second) distinct.push_back(std::move(p));
    }
  }
  if (distinct.size() < n + 1) throw InvalidPolytope("fewer than n+1 distinct points");
  const auto facets = hull_facets(distinct, n);
  std::vector<Vector> kept;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    if (is_vertex(static_cast<int>(i), facets, n)) kept.push_back(distinct[i]);
  }
  return from_vertices(std::move(kept));
}

long Polytope::radicand() const {
  long d = 0;
  for (const auto& v : vertices_) {
    for (const auto& x : v) {
      if (x.radicand() != 0) d = x.radicand();
    }
  }
  return d;
}

bool Polytope::origin_in_interior() const {
  return std::all_of(facets_.begin(), facets_.end(), [](const Facet& f) { return f.offset.sign() > 0; });
}

Vector Polytope::centroid() const {
  Vector c(dim_);
  for (const auto& v : vertices_) c = c + v;
  const Scalar inv = Scalar(1) / Scalar(static_cast<long>(vertices_.size()));
  return inv * c;
}

Polytope Polytope::translated(const Vector& shift) const {
  std::vector<Vector> moved;
  for (const auto& v : vertices_) moved.push_back(v + shift);
  return from_vertices(std::move(moved));
}

Polytope Polytope::linear_image(const Matrix& map) const {
  if (map.rows() != dim_ || map.cols() != dim_) throw InvalidPolytope("linear map has wrong shape");
  if (rank(map) != dim_) throw InvalidPolytope("linear map is not invertible");
  std::vector<Vector> image;
  for (const auto& v : vertices_) image.push_back(map * v);
  return from_vertices(std::move(image));
}

FaceLattice::FaceLattice(const Polytope& p) : dim_(p.dim()) {
  std::vector<ConeFacet> facets;
  for (const auto& f : p.facets()) facets.push_back({f.vertices, {}});
  const auto sets = faces_from_facets(static_cast<int>(p.vertices().size()), facets);
  for (const auto& s : sets) {
    std::vector<Vector> pts;
    for (int v : s) pts.push_back(p.vertices()[v]);
    const int d = static_cast<int>(rank_of(homogenize(pts))) - 1;
    faces_.push_back({s, d});
  }
  std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
  });
  up_.resize(faces_.size());
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    for (std::size_t j = 0; j < faces_.size(); ++j) {
      if (faces_[j].dim == faces_[i].dim + 1 && is_subset(faces_[i].vertices, faces_[j].vertices)) {
        up_[i].push_back(static_cast<int>(j));
      }
    }
  }
}

std::optional<int> FaceLattice::find(const std::vector<int>& vertices) const {
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    if (faces_[i].vertices == vertices) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::vector<std::size_t> FaceLattice::f_vector() const {
  std::vector<std::size_t> f(dim_, 0);
  for (const auto& face : faces_) {
    if (face.dim >= 0 && face.dim < static_cast<int>(dim_)) ++f[face.dim];
  }
  return f;
}

std::vector<int> FaceLattice::proper_faces() const {
  std::vector<int> ids;
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    if (faces_[i].dim >= 0 && faces_[i].dim < static_cast<int>(dim_)) ids.push_back(static_cast<int>(i));
  }
  return ids;
}

FaceLattice face_lattice(const Polytope& p) { return FaceLattice(p); }

std::vector<Vector> dual_vertices(const Polytope& p) {
  if (!p.origin_in_interior()) throw InvalidPolytope("dual polytope needs the origin in the interior");
  std::vector<Vector> duals;
  for (const auto& f : p.facets()) duals.push_back((Scalar(1) / f.offset) * f.normal);
  return duals;
}

Polytope dual_polytope(const Polytope& p) { return Polytope::from_vertices(dual_vertices(p)); }

bool is_centrally_symmetric(const Polytope& p) {
  std::set<Vector> verts(p.vertices().begin(), p.vertices().end());
  return std::all_of(p.vertices().begin(), p.vertices().end(),
                     [&](const Vector& v) { return verts.count(-v) > 0; });
}

bool is_cross_polytope(const Polytope& p) {
  const std::size_t n = p.dim();
  if (p.vertices().size() != 2 * n) return false;
  const Vector c = p.centroid();
  std::vector<Vector> rel;
  for (const auto& v : p.vertices()) rel.push_back(v - c);
  std::set<Vector> verts(rel.begin(), rel.end());
  std::vector<Vector> half;
  std::set<Vector> used;
  for (const auto& v : rel) {
    if (verts.count(-v) == 0) return false;
    if (used.count(v)) continue;
    used.insert(v);
    used.insert(-v);
    half.push_back(v);
  }
  return half.size() == n && rank_of(half) == n;
}

std::pair<Polytope, std::optional<Vector>> centered(const Polytope& p) {
  if (p.origin_in_interior()) return {p, std::nullopt};
  Vector shift = -p.centroid();
  return {p.translated(shift), shift};
}

Polytope simplex(std::size_t n) {
  if (n == 0) throw InvalidPolytope("simplex dimension must be >= 1");
  std::vector<Vector> verts;
  for (std::size_t i = 0; i < n; ++i) verts.push_back(unit_vector(n, i));
  verts.emplace_back(n, Scalar(-1));
  return Polytope::from_vertices(std::move(verts));
}

Polytope cube(std::size_t n) {
  if (n == 0) throw InvalidPolytope("cube dimension must be >= 1");
  std::vector<Vector> verts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = Scalar((mask >> (n - 1 - i)) & 1U ? 1 : -1);
    verts.push_back(std::move(v));
  }
  return Polytope::from_vertices(std::move(verts));
}

Polytope cross_polytope(std::size_t n) {
  if (n == 0) throw InvalidPolytope("cross-polytope dimension must be >= 1");
  std::vector<Vector> verts;
  for (std::size_t i = 0; i < n; ++i) {
    verts.push_back(unit_vector(n, i));
    verts.push_back(-unit_vector(n, i));
  }
  return Polytope::from_vertices(std::move(verts));
}

Polytope product(const Polytope& p, const Polytope& q) {
  std::vector<Vector> verts;
  for (const auto& a : p.vertices()) {
    for (const auto& b : q.vertices()) {
      Vector v(a);
      v.insert(v.end(), b.begin(), b.end());
      verts.push_back(std::move(v));
    }
  }
  return Polytope::from_vertices(std::move(verts));
}

Polytope free_sum(const Polytope& p, const Polytope& q) {
  if (!p.origin_in_interior() || !q.origin_in_interior()) {
    throw InvalidPolytope("free sum needs the origin in the interior of both summands");
  }
  std::vector<Vector> verts;
  for (const auto& a : p.vertices()) {
    Vector v(a);
    v.resize(p.dim() + q.dim());
    verts.push_back(std::move(v));
  }
  for (const auto& b : q.vertices()) {
    Vector v(p.dim());
    v.insert(v.end(), b.begin(), b.end());
    verts.push_back(std::move(v));
  }
  return Polytope::from_vertices(std::move(verts));
}

Polytope random_cs(std::size_t n, std::size_t pairs, std::uint64_t seed, long radicand) {
  if (n == 0 || pairs == 0) throw InvalidPolytope("random_cs needs n >= 1 and at least one pair");
  std::mt19937_64 engine(seed);
  // raw engine output keeps the sequence identical across standard libraries
  auto draw = [&engine](long range) {
    return static_cast<long>(engine() % static_cast<std::uint64_t>(2 * range + 1)) - range;
  };
  std::vector<Vector> points;
  for (std::size_t k = 0; k < pairs; ++k) {
    Vector p(n);
    for (auto& x : p) {
      if (radicand > 0) {
        const long a = draw(5);
        const long b = draw(5);
        x = Scalar::quadratic(Rational(a), Rational(b), radicand);
      } else {
        x = Scalar(draw(10));
      }
    }
    if (is_zero(p)) continue;
    points.push_back(-p);
    points.push_back(std::move(p));
  }
  try {
    return Polytope::convex_hull(std::move(points));
  } catch (const InvalidPolytope& e) {
    throw InvalidPolytope(std::string("random_cs produced a degenerate polytope: ") + e.what());
  }
}

}  // namespace ghv
