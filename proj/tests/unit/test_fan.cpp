#include <doctest.h>

#include "ghv/fan.hpp"
#include "ghv/polytope.hpp"

using ghv::Fan;
using ghv::Polytope;
using ghv::Scalar;
using ghv::Vector;

namespace {

Vector vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::size_t count_dim(const Fan& f, int d) { return f.cones_of_dim(d).size(); }

Polytope capped_cube_sqrt2() {
  std::vector<Vector> verts = ghv::cube(3).vertices();
  verts.push_back({Scalar(0), Scalar(0), Scalar::quadratic(0, 1, 2)});
  verts.push_back({Scalar(0), Scalar(0), Scalar::quadratic(0, -1, 2)});
  return Polytope::from_vertices(std::move(verts));
}

std::vector<Polytope> corpus() {
  std::vector<Polytope> out{ghv::cube(2),  ghv::cube(3),          ghv::cross_polytope(2), ghv::cross_polytope(3),
                            ghv::simplex(3), ghv::cross_polytope(4), capped_cube_sqrt2(),
                            ghv::product(ghv::cube(2), ghv::cross_polytope(1)),
                            ghv::free_sum(ghv::cube(2), ghv::cube(1))};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) out.push_back(ghv::random_cs(3, 6, seed));
  out.push_back(ghv::random_cs(3, 4, 2, 2));
  return out;
}

// Fan of a square pyramid apex cone: rays (+-1, +-1, 1).
Fan square_cone_fan() {
  return Fan::from_cones(3, {vec({1, 1, 1}), vec({1, -1, 1}), vec({-1, -1, 1}), vec({-1, 1, 1})}, {{0, 1, 2, 3}});
}

}  // namespace

TEST_SUITE("fan") {
  TEST_CASE("face fans of the square and the cube") {
    const Fan f = ghv::face_fan(ghv::cross_polytope(2));
    CHECK(f.rays().size() == 4);
    CHECK(count_dim(f, 2) == 4);
    CHECK(ghv::is_complete(f));
    const Fan c = ghv::face_fan(ghv::cube(3));
    CHECK(c.rays().size() == 8);
    CHECK(count_dim(c, 2) == 12);
    CHECK(count_dim(c, 3) == 6);
    CHECK(c.cone(0).rays.empty());
    CHECK(c.dim() == 3);
  }

  TEST_CASE("nonrational face fan is complete") {
    const Fan f = ghv::face_fan(capped_cube_sqrt2());
    CHECK(ghv::is_complete(f));
    CHECK(ghv::is_centrally_symmetric(f));
    CHECK_FALSE(ghv::is_simplicial(f));
  }

  TEST_CASE("face fans need the origin inside") {
    CHECK_THROWS(ghv::face_fan(ghv::cube(2).translated(vec({1, 0}))));
  }

  TEST_CASE("support function") {
    for (const auto& p0 : corpus()) {
      const Polytope p = ghv::centered(p0).first;
      const Fan f = ghv::face_fan(p);
      const auto s = ghv::support_function(p);
      CHECK(s.pieces.size() == count_dim(f, static_cast<int>(p.dim())));
      CHECK(ghv::is_conewise_linear(f, s));
      CHECK(ghv::is_strictly_concave(f, s));
      for (const auto& [id, u] : s.pieces) {
        for (const auto& r : f.ray_vectors(id)) CHECK(ghv::dot(u, r) == Scalar(-1));
      }
    }
  }

  TEST_CASE("support function of 2P is half that of P") {
    for (const auto& p0 : corpus()) {
      const Polytope p = ghv::centered(p0).first;
      std::vector<Vector> doubled;
      for (const auto& v : p.vertices()) doubled.push_back(Scalar(2) * v);
      const Polytope q = Polytope::from_vertices(doubled);
      const auto sp = ghv::support_function(p);
      const auto sq = ghv::support_function(q);
      const Fan fp = ghv::face_fan(p);
      const Fan fq = ghv::face_fan(q);
      REQUIRE(fp.size() == fq.size());
      for (const auto& [id, u] : sp.pieces) {
        // same vertex indices, so the same cone ids
        CHECK(fq.cone(id).rays == fp.cone(id).rays);
        CHECK(sq.on(id) == Scalar(1) / Scalar(2) * u);
      }
    }
  }

  TEST_CASE("conewise linear and concavity predicates reject bad data") {
    const Polytope p = ghv::cube(2);
    const Fan f = ghv::face_fan(p);
    auto s = ghv::support_function(p);
    auto flat = s;
    for (auto& [id, u] : flat.pieces) u = vec({0, 0});
    CHECK(ghv::is_conewise_linear(f, flat));
    CHECK_FALSE(ghv::is_strictly_concave(f, flat));
    auto broken = s;
    broken.pieces.begin()->second = vec({5, 7});
    CHECK_FALSE(ghv::is_conewise_linear(f, broken));
    auto convex = s;
    for (auto& [id, u] : convex.pieces) u = Scalar(-1) * u;
    CHECK(ghv::is_conewise_linear(f, convex));
    CHECK_FALSE(ghv::is_strictly_concave(f, convex));
  }

  TEST_CASE("completeness") {
    for (const auto& p : corpus()) CHECK(ghv::is_complete(ghv::face_fan(ghv::centered(p).first)));
    const Fan single = Fan::from_cones(2, {vec({1, 0}), vec({0, 1})}, {{0, 1}});
    CHECK_FALSE(ghv::is_complete(single));
    CHECK_FALSE(ghv::is_complete(square_cone_fan()));
    // square fan with one quadrant missing
    const Fan three = Fan::from_cones(2, {vec({1, 0}), vec({0, 1}), vec({-1, 0}), vec({0, -1})}, {{0, 1}, {1, 2}, {2, 3}});
    CHECK_FALSE(ghv::is_complete(three));
    const Fan four =
        Fan::from_cones(2, {vec({1, 0}), vec({0, 1}), vec({-1, 0}), vec({0, -1})}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    CHECK(ghv::is_complete(four));
    CHECK(ghv::is_complete(Fan::from_cones(1, {vec({1}), vec({-1})}, {{0}, {1}})));
  }

  TEST_CASE("fan validation") {
    // not pointed: a line
    CHECK_THROWS_AS(Fan::from_cones(2, {vec({1, 0}), vec({-1, 0}), vec({0, 1})}, {{0, 1, 2}}), ghv::InvalidFan);
    // (1,1) is not extreme in cone((1,0),(0,1),(1,1))
    CHECK_THROWS_AS(Fan::from_cones(2, {vec({1, 0}), vec({0, 1}), vec({1, 1})}, {{0, 1, 2}}), ghv::InvalidFan);
    // overlapping cones
    CHECK_THROWS_AS(Fan::from_cones(2, {vec({1, 0}), vec({0, 1}), vec({1, 1}), vec({1, -1})}, {{0, 1}, {2, 3}}),
                    ghv::InvalidFan);
    CHECK_THROWS_AS(Fan::from_cones(2, {vec({0, 0})}, {{0}}), ghv::InvalidFan);
    CHECK_THROWS_AS(Fan::from_cones(2, {vec({1, 0, 0})}, {{0}}), ghv::InvalidFan);
  }

  TEST_CASE("boundary and cone fans") {
    const Fan two = Fan::from_cones(2, {vec({1, 0}), vec({1, 1})}, {{0, 1}});
    const int sigma = *two.find({0, 1});
    const auto boundary = ghv::boundary_fan(two, sigma);
    CHECK(boundary.size() == 3);
    CHECK(std::count_if(boundary.begin(), boundary.end(), [&](int c) { return two.cone(c).dim == 1; }) == 2);
    const int ray = *two.find({0});
    CHECK(ghv::cone_fan(two, ray) == ghv::Subfan{0, ray});
    const Fan sq = square_cone_fan();
    const int top = *sq.find({0, 1, 2, 3});
    const auto b = ghv::boundary_fan(sq, top);
    CHECK(std::count_if(b.begin(), b.end(), [&](int c) { return sq.cone(c).dim == 1; }) == 4);
    CHECK(std::count_if(b.begin(), b.end(), [&](int c) { return sq.cone(c).dim == 2; }) == 4);
    CHECK(std::find(b.begin(), b.end(), top) == b.end());
    CHECK(ghv::cone_fan(sq, top).size() == 10);
  }

  TEST_CASE("quotient fans") {
    const Fan two = Fan::from_cones(2, {vec({1, 0}), vec({1, 1})}, {{0, 1}});
    const Fan q2 = ghv::quotient_fan(two, *two.find({0, 1}));
    CHECK(q2.ambient_dim() == 1);
    CHECK(q2.size() == 3);
    CHECK(ghv::is_complete(q2));
    CHECK(q2.rays()[0][0].sign() == -q2.rays()[1][0].sign());
    const Fan sq = square_cone_fan();
    const Fan q3 = ghv::quotient_fan(sq, *sq.find({0, 1, 2, 3}));
    CHECK(q3.ambient_dim() == 2);
    CHECK(q3.rays().size() == 4);
    CHECK(count_dim(q3, 2) == 4);
    CHECK(ghv::is_complete(q3));
    const Fan q1 = ghv::quotient_fan(two, *two.find({0}));
    CHECK(q1.ambient_dim() == 0);
    CHECK(q1.size() == 1);
  }

  TEST_CASE("quotient fans of every corpus cone are complete") {
    for (const auto& p : corpus()) {
      const Fan f = ghv::face_fan(ghv::centered(p).first);
      for (int id = 1; id < static_cast<int>(f.size()); ++id) {
        const Fan q = ghv::quotient_fan(f, id);
        CHECK(q.ambient_dim() == static_cast<std::size_t>(f.cone(id).dim - 1));
        if (f.cone(id).dim > 1) CHECK(ghv::is_complete(q));
        // the face poset of the quotient is the boundary of the cone
        CHECK(q.size() == ghv::boundary_fan(f, id).size());
      }
    }
  }

  TEST_CASE("central symmetry and the antipode map") {
    for (std::size_t n = 2; n <= 4; ++n) {
      const Fan f = ghv::face_fan(ghv::cube(n));
      REQUIRE(ghv::is_centrally_symmetric(f));
      const auto anti = ghv::antipode_map(f);
      for (int id = 0; id < static_cast<int>(f.size()); ++id) {
        CHECK(anti[anti[id]] == id);
        CHECK(f.cone(anti[id]).dim == f.cone(id).dim);
        if (id != 0) CHECK(anti[id] != id);
        const auto rs = f.ray_vectors(id);
        const auto ra = f.ray_vectors(anti[id]);
        for (const auto& r : rs) CHECK(std::find(ra.begin(), ra.end(), -r) != ra.end());
      }
      CHECK(anti[0] == 0);
    }
    for (std::size_t n = 2; n <= 4; ++n) {
      const Fan f = ghv::face_fan(ghv::simplex(n));
      CHECK_FALSE(ghv::is_centrally_symmetric(f));
      CHECK_THROWS_AS(ghv::antipode_map(f), ghv::InvalidFan);
    }
    for (const auto& p : corpus()) {
      const Fan f = ghv::face_fan(ghv::centered(p).first);
      if (!ghv::is_centrally_symmetric(f)) continue;
      const auto anti = ghv::antipode_map(f);
      for (int id = 1; id < static_cast<int>(f.size()); ++id) CHECK(anti[id] != id);
    }
  }

  TEST_CASE("antipodal rays allow positive rescaling") {
    const Fan f = Fan::from_cones(1, {vec({2}), vec({-3})}, {{0}, {1}});
    CHECK(ghv::antipodal_rays(f) == std::vector<int>{1, 0});
    CHECK(ghv::is_centrally_symmetric(f));
  }

  TEST_CASE("simplicial cones") {
    const Fan oct = ghv::face_fan(ghv::cross_polytope(3));
    const Fan cub = ghv::face_fan(ghv::cube(3));
    for (int id : oct.cones_of_dim(3)) CHECK(ghv::is_simplicial(oct.cone(id)));
    for (int id : cub.cones_of_dim(3)) CHECK_FALSE(ghv::is_simplicial(cub.cone(id)));
    CHECK(ghv::is_simplicial(cub.cone(0)));
    CHECK(ghv::is_simplicial(oct));
    CHECK_FALSE(ghv::is_simplicial(cub));
  }

  TEST_CASE("cone ordering, faces and meets") {
    const Fan f = ghv::face_fan(ghv::cube(3));
    for (int id = 1; id < static_cast<int>(f.size()); ++id) {
      CHECK(f.cone(id - 1).dim <= f.cone(id).dim);
      const auto& faces = f.faces_of(id);
      CHECK(faces.front() == 0);
      CHECK(faces.back() == id);
      for (int face : faces) {
        CHECK(std::includes(f.cone(id).rays.begin(), f.cone(id).rays.end(), f.cone(face).rays.begin(),
                            f.cone(face).rays.end()));
      }
      CHECK(f.facets_of(id).size() == (f.cone(id).dim == 1 ? 1U : f.cone(id).dim == 2 ? 2U : 4U));
      CHECK(ghv::span_basis(f, id).size() == static_cast<std::size_t>(f.cone(id).dim));
    }
    const auto maximal = f.cones_of_dim(3);
    CHECK(f.maximal_cones() == maximal);
    for (int a : maximal) {
      for (int b : maximal) {
        const int m = f.meet(a, b);
        CHECK(f.cone(m).rays ==
              [&] {
                std::vector<int> both;
                std::set_intersection(f.cone(a).rays.begin(), f.cone(a).rays.end(), f.cone(b).rays.begin(),
                                      f.cone(b).rays.end(), std::back_inserter(both));
                return both;
              }());
      }
    }
  }
}
