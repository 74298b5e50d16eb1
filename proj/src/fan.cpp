#include "ghv/fan.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ghv/cone_geometry.hpp"

namespace ghv {

namespace {

struct LocalCone {
  std::vector<int> rays;  // global ids
  Matrix coords;          // k x m coordinates of the rays in the pivot basis
  std::vector<ConeFacet> facets;
};

// Geometry of one cone inside its own linear span.
LocalCone analyse_cone(const std::vector<Vector>& all_rays, const std::vector<int>& rays) {
  LocalCone lc;
  lc.rays = rays;
  std::vector<Vector> vecs;
  for (int r : rays) vecs.push_back(all_rays.at(r));
  const auto pivots = independent_subset(vecs);
  std::vector<Vector> basis;
  for (int p : pivots) basis.push_back(vecs[p]);
  lc.coords = coordinates_in_basis(basis, vecs);
  if (!basis.empty()) {
    std::vector<Vector> local;
    for (std::size_t j = 0; j < vecs.size(); ++j) local.push_back(lc.coords.column(j));
    lc.facets = cone_facets(local);
  }
  return lc;
}

bool contains_point(const LocalCone& lc, const std::vector<Vector>& all_rays, const Vector& x) {
  if (lc.rays.empty()) return is_zero(x);
  std::vector<Vector> basis;
  std::vector<Vector> vecs;
  for (int r : lc.rays) vecs.push_back(all_rays[r]);
  for (int p : independent_subset(vecs)) basis.push_back(vecs[p]);
  const Matrix b = Matrix::from_columns(basis, x.size());
  auto c = solve(b, x);
  if (!c) return false;
  return std::all_of(lc.facets.begin(), lc.facets.end(),
                     [&](const ConeFacet& f) { return dot(f.normal, *c).sign() >= 0; });
}

}  // namespace

Fan Fan::from_cones(std::size_t ambient_dim, std::vector<Vector> rays, const std::vector<std::vector<int>>& cones) {
  for (const auto& r : rays) {
    if (r.size() != ambient_dim) throw InvalidFan("ray has wrong dimension");
    if (is_zero(r)) throw InvalidFan("zero vector given as ray");
  }
  std::map<std::vector<int>, int> all;  // ray set -> dim
  all[{}] = 0;
  std::vector<LocalCone> listed;
  for (auto c : cones) {
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw InvalidFan("repeated ray in cone");
    for (int r : c) {
      if (r < 0 || static_cast<std::size_t>(r) >= rays.size()) throw InvalidFan("ray index out of range");
    }
    LocalCone lc = analyse_cone(rays, c);
    if (!c.empty()) {
      const auto local_faces = faces_from_facets(static_cast<int>(c.size()), lc.facets);
      if (local_faces.empty() || !local_faces.front().empty()) throw InvalidFan("cone is not strictly convex");
      std::set<std::vector<int>> face_set(local_faces.begin(), local_faces.end());
      for (int i = 0; i < static_cast<int>(c.size()); ++i) {
        if (!face_set.count({i})) throw InvalidFan("cone generator is not an extreme ray");
      }
      for (const auto& lf : local_faces) {
        std::vector<int> global;
        std::vector<Vector> vecs;
        for (int i : lf) {
          global.push_back(c[i]);
          vecs.push_back(rays[c[i]]);
        }
        all[global] = static_cast<int>(rank_of(vecs));
      }
    }
    listed.push_back(std::move(lc));
  }
  for (std::size_t i = 0; i < listed.size(); ++i) {
    for (std::size_t j = 0; j < listed.size(); ++j) {
      if (i == j) continue;
      const auto common = intersect(listed[i].rays, listed[j].rays);
      for (int r : listed[j].rays) {
        if (std::binary_search(common.begin(), common.end(), r)) continue;
        if (contains_point(listed[i], rays, rays[r])) throw InvalidFan("cones overlap outside a common face");
      }
    }
  }
  std::vector<Cone> list;
  for (auto& [set, d] : all) list.push_back({set, d});
  return from_face_poset(ambient_dim, std::move(rays), std::move(list));
}

Fan Fan::from_face_poset(std::size_t ambient_dim, std::vector<Vector> rays, std::vector<Cone> cones) {
  Fan f;
  f.ambient_dim_ = ambient_dim;
  f.rays_ = std::move(rays);
  f.cones_ = std::move(cones);
  f.index();
  return f;
}

void Fan::index() {
  for (auto& c : cones_) std::sort(c.rays.begin(), c.rays.end());
  std::sort(cones_.begin(), cones_.end(), [](const Cone& a, const Cone& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.rays < b.rays;
  });
  cones_.erase(std::unique(cones_.begin(), cones_.end(),
                           [](const Cone& a, const Cone& b) { return a.rays == b.rays; }),
               cones_.end());
  if (cones_.empty() || !cones_.front().rays.empty()) throw InvalidFan("fan lacks the zero cone");
  dim_ = 0;
  lookup_.clear();
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    lookup_[cones_[i].rays] = static_cast<int>(i);
    dim_ = std::max(dim_, cones_[i].dim);
  }
  faces_.assign(cones_.size(), {});
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (cones_[j].dim <= cones_[i].dim && is_subset(cones_[j].rays, cones_[i].rays)) {
        faces_[i].push_back(static_cast<int>(j));
      }
    }
    // face-closed: every face found geometrically must already be a member
    for (int r : cones_[i].rays) {
      if (!lookup_.count({r})) throw InvalidFan("fan is not closed under faces");
    }
  }
}

std::vector<Vector> Fan::ray_vectors(int id) const {
  std::vector<Vector> out;
  for (int r : cone(id).rays) out.push_back(rays_[r]);
  return out;
}

std::optional<int> Fan::find(const std::vector<int>& rays) const {
  auto it = lookup_.find(rays);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> Fan::facets_of(int id) const {
  std::vector<int> out;
  for (int f : faces_of(id)) {
    if (cones_[f].dim == cones_[id].dim - 1) out.push_back(f);
  }
  return out;
}

std::vector<int> Fan::maximal_cones() const {
  std::vector<bool> covered(cones_.size(), false);
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    for (int f : faces_[i]) {
      if (f != static_cast<int>(i)) covered[f] = true;
    }
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    if (!covered[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> Fan::cones_of_dim(int d) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    if (cones_[i].dim == d) out.push_back(static_cast<int>(i));
  }
  return out;
}

int Fan::meet(int a, int b) const {
  auto id = find(intersect(cone(a).rays, cone(b).rays));
  if (!id) throw InvalidFan("cones do not meet in a common face");
  return *id;
}

Fan face_fan(const Polytope& p) {
  if (!p.origin_in_interior()) throw InvalidPolytope("face fan needs the origin in the interior");
  const FaceLattice lattice(p);
  std::vector<Cone> cones{{{}, 0}};
  for (int id : lattice.proper_faces()) {
    const auto& face = lattice.faces()[id];
    cones.push_back({face.vertices, face.dim + 1});
  }
  return Fan::from_face_poset(p.dim(), p.vertices(), std::move(cones));
}

bool is_conewise_linear(const Fan& fan, const ConewiseLinear& s) {
  std::vector<std::optional<Scalar>> value(fan.rays().size());
  for (int m : fan.maximal_cones()) {
    auto it = s.pieces.find(m);
    if (it == s.pieces.end() || it->second.size() != fan.ambient_dim()) return false;
    for (int r : fan.cone(m).rays) {
      Scalar v = dot(it->second, fan.rays()[r]);
      if (value[r] && *value[r] != v) return false;
      value[r] = std::move(v);
    }
  }
  return true;
}

bool is_strictly_concave(const Fan& fan, const ConewiseLinear& s) {
  const int n = static_cast<int>(fan.ambient_dim());
  const auto maximal = fan.cones_of_dim(n);
  for (int ridge : fan.cones_of_dim(n - 1)) {
    std::vector<int> sides;
    for (int m : maximal) {
      if (is_subset(fan.cone(ridge).rays, fan.cone(m).rays)) sides.push_back(m);
    }
    if (sides.size() != 2) continue;
    for (int k = 0; k < 2; ++k) {
      const int own = sides[k];
      const int other = sides[1 - k];
      for (int r : fan.cone(other).rays) {
        if (std::binary_search(fan.cone(own).rays.begin(), fan.cone(own).rays.end(), r)) continue;
        if (dot(s.on(own), fan.rays()[r]) <= dot(s.on(other), fan.rays()[r])) return false;
      }
    }
  }
  return true;
}

ConewiseLinear support_function(const Polytope& p) {
  const Fan fan = face_fan(p);
  const auto duals = dual_vertices(p);
  ConewiseLinear s;
  for (int m : fan.cones_of_dim(static_cast<int>(p.dim()))) {
    const auto& rays = fan.cone(m).rays;
    auto it = std::find_if(p.facets().begin(), p.facets().end(),
                           [&](const Facet& f) { return f.vertices == rays; });
    if (it == p.facets().end()) throw InvalidFan("maximal cone without a matching facet");
    s.pieces[m] = duals[static_cast<std::size_t>(it - p.facets().begin())];
  }
  if (!is_conewise_linear(fan, s) || !is_strictly_concave(fan, s)) {
    throw InvalidFan("support function fails the strict concavity check");
  }
  return s;
}

bool is_complete(const Fan& fan) {
  const int n = static_cast<int>(fan.ambient_dim());
  const auto maximal = fan.maximal_cones();
  for (int m : maximal) {
    if (fan.cone(m).dim != n) return false;
  }
  if (n == 0) return true;
  // adjacency through codimension-one cones
  std::vector<int> parent(fan.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int ridge : fan.cones_of_dim(n - 1)) {
    std::vector<int> sides;
    for (int m : maximal) {
      if (is_subset(fan.cone(ridge).rays, fan.cone(m).rays)) sides.push_back(m);
    }
    if (sides.size() != 2) return false;
    parent[root(sides[0])] = root(sides[1]);
  }
  for (int m : maximal) {
    if (root(m) != root(maximal.front())) return false;
  }
  return !maximal.empty();
}

Subfan boundary_fan(const Fan& fan, int cone_id) {
  Subfan out;
  for (int f : fan.faces_of(cone_id)) {
    if (f != cone_id) out.push_back(f);
  }
  return out;
}

Subfan cone_fan(const Fan& fan, int cone_id) { return fan.faces_of(cone_id); }

Fan quotient_fan(const Fan& fan, int cone_id) {
  const Cone& sigma = fan.cone(cone_id);
  if (sigma.dim < 1) throw InvalidFan("quotient fan needs a cone of dimension >= 1");
  const auto vecs = fan.ray_vectors(cone_id);
  std::vector<Vector> basis;
  for (int p : independent_subset(vecs)) basis.push_back(vecs[p]);
  const Matrix coords = coordinates_in_basis(basis, vecs);
  const std::size_t k = basis.size();
  Vector interior(k);
  for (std::size_t j = 0; j < vecs.size(); ++j) interior = interior + coords.column(j);
  const Matrix proj = quotient_projection(interior, k);

  std::vector<Cone> cones;
  for (int f : fan.faces_of(cone_id)) {
    if (f == cone_id) continue;
    Cone c;
    c.dim = fan.cone(f).dim;
    for (int r : fan.cone(f).rays) {
      auto pos = std::lower_bound(sigma.rays.begin(), sigma.rays.end(), r) - sigma.rays.begin();
      c.rays.push_back(static_cast<int>(pos));
    }
    cones.push_back(std::move(c));
  }
  std::vector<Vector> rays;
  if (sigma.dim >= 2) {
    for (std::size_t j = 0; j < vecs.size(); ++j) rays.push_back(proj * coords.column(j));
  }
  return Fan::from_face_poset(k - 1, std::move(rays), std::move(cones));
}

std::vector<int> antipodal_rays(const Fan& fan) {
  const auto& rays = fan.rays();
  std::vector<int> anti(rays.size(), -1);
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = 0; j < rays.size(); ++j) {
      if (i == j) continue;
      if (rank_of({rays[i], rays[j]}) == 1 && dot(rays[i], rays[j]).sign() < 0) {
        anti[i] = static_cast<int>(j);
        break;
      }
    }
    if (anti[i] < 0) throw InvalidFan("fan is not centrally symmetric: ray without antipode");
  }
  return anti;
}

std::vector<int> antipode_map(const Fan& fan) {
  const auto anti = antipodal_rays(fan);
  std::vector<int> map(fan.size());
  for (std::size_t i = 0; i < fan.size(); ++i) {
    std::vector<int> image;
    for (int r : fan.cone(static_cast<int>(i)).rays) image.push_back(anti[r]);
    std::sort(image.begin(), image.end());
    auto id = fan.find(image);
    if (!id) throw InvalidFan("fan is not centrally symmetric: cone without antipode");
    map[i] = *id;
  }
  return map;
}

bool is_centrally_symmetric(const Fan& fan) {
  try {
    antipode_map(fan);
    return true;
  } catch (const InvalidFan&) {
    return false;
  }
}

bool is_simplicial(const Cone& cone) { return static_cast<int>(cone.rays.size()) == cone.dim; }

bool is_simplicial(const Fan& fan) {
  return std::all_of(fan.cones().begin(), fan.cones().end(), [](const Cone& c) { return is_simplicial(c); });
}

std::vector<int> span_basis(const Fan& fan, int cone_id) {
  const auto vecs = fan.ray_vectors(cone_id);
  std::vector<int> out;
  for (int p : independent_subset(vecs)) out.push_back(fan.cone(cone_id).rays[p]);
  return out;
}

}  // namespace ghv
