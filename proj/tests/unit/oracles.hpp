#pragma once
// Reference computations written independently of the library algorithms.
// They are slow and only meant for small inputs.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "ghv/linalg.hpp"
#include "ghv/polytope.hpp"

namespace oracle {

using ghv::Matrix;
using ghv::Scalar;
using ghv::Vector;

inline Scalar det(const std::vector<Vector>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) return Scalar(1);
  Scalar total(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (rows[0][j].is_zero()) continue;
    std::vector<Vector> minor;
    for (std::size_t a = 1; a < n; ++a) {
      Vector r;
      for (std::size_t b = 0; b < n; ++b) {
        if (b != j) r.push_back(rows[a][b]);
      }
      minor.push_back(std::move(r));
    }
    const Scalar term = rows[0][j] * det(minor);
    total = j % 2 ? total - term : total + term;
  }
  return total;
}

/// Generalized cross product of n vectors in R^{n+1}: the cofactor vector,
/// orthogonal to all of them and zero iff they are dependent.
inline Vector cofactor_normal(const std::vector<Vector>& vs) {
  const std::size_t m = vs.size() + 1;
  Vector out(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Vector> minor;
    for (const auto& v : vs) {
      Vector r;
      for (std::size_t b = 0; b < m; ++b) {
        if (b != j) r.push_back(v[b]);
      }
      minor.push_back(std::move(r));
    }
    out[j] = j % 2 ? -det(minor) : det(minor);
  }
  return out;
}

struct OracleFace {
  std::vector<int> vertices;
  int dim;
  friend bool operator<(const OracleFace& a, const OracleFace& b) {
    return std::tie(a.dim, a.vertices) < std::tie(b.dim, b.vertices);
  }
  friend bool operator==(const OracleFace&, const OracleFace&) = default;
};

/// Nonempty proper faces. Facet candidates come from every n-subset of
/// vertices: the hyperplane through them supports P when all other vertices
/// lie weakly on one side. Faces are intersections of facets.
inline std::vector<OracleFace> brute_force_faces(const std::vector<Vector>& vertices) {
  const std::size_t n = vertices.front().size();
  const std::size_t m = vertices.size();
  std::vector<Vector> homog;
  for (const auto& v : vertices) {
    Vector h(v);
    h.emplace_back(1);
    homog.push_back(std::move(h));
  }
  std::set<std::vector<int>> facets;
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(n), true);
  do {
    std::vector<Vector> chosen;
    for (std::size_t i = 0; i < m; ++i) {
      if (pick[i]) chosen.push_back(homog[i]);
    }
    const Vector normal = cofactor_normal(chosen);
    if (ghv::is_zero(normal)) continue;
    bool pos = false, neg = false;
    std::vector<int> on;
    for (std::size_t i = 0; i < m; ++i) {
      const int s = ghv::dot(normal, homog[i]).sign();
      pos |= s > 0;
      neg |= s < 0;
      if (s == 0) on.push_back(static_cast<int>(i));
    }
    if (!(pos && neg)) facets.insert(on);
  } while (std::prev_permutation(pick.begin(), pick.end()));

  std::set<std::vector<int>> faces(facets.begin(), facets.end());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::vector<int>> current(faces.begin(), faces.end());
    for (const auto& a : current) {
      for (const auto& f : facets) {
        std::vector<int> both;
        std::set_intersection(a.begin(), a.end(), f.begin(), f.end(), std::back_inserter(both));
        if (!both.empty() && faces.insert(both).second) grew = true;
      }
    }
  }
  std::vector<OracleFace> out;
  for (const auto& f : faces) {
    std::vector<Vector> pts;
    for (int i : f) pts.push_back(homog[i]);
    out.push_back({f, static_cast<int>(ghv::rank(Matrix::from_rows(pts, n + 1))) - 1});
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::int64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Classical h-vector of a simplicial n-polytope from f_{-1} = 1, f_0, ..., f_{n-1}:
/// h_k = sum_i (-1)^(k-i) C(n-i, k-i) f_{i-1}.
inline std::vector<std::int64_t> classical_h(const std::vector<std::int64_t>& f_with_empty, int n) {
  std::vector<std::int64_t> h(n + 1, 0);
  for (int k = 0; k <= n; ++k) {
    for (int i = 0; i <= k; ++i) {
      const std::int64_t term = choose(n - i, k - i) * f_with_empty[i];
      h[k] += (k - i) % 2 ? -term : term;
    }
  }
  return h;
}

/// Integer matrix with entries in [-3, 3] and nonzero determinant.
inline Matrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> entry(-3, 3);
  for (;;) {
    std::vector<Vector> rows(n, Vector(n));
    for (auto& r : rows) {
      for (auto& x : r) x = Scalar(entry(rng));
    }
    if (!det(rows).is_zero()) return Matrix::from_rows(rows, n);
  }
}

}  // namespace oracle
