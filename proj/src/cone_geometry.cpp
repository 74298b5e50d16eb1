#include "ghv/cone_geometry.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ghv {

namespace {

struct FacetSearch {
  const std::vector<Vector>& rays;
  std::size_t k;
  std::vector<std::vector<bool>> found_members;
  std::set<std::vector<int>> found_sets;
  std::vector<ConeFacet> facets;
  std::vector<int> chosen;

  bool inside_known_facet() const {
    for (const auto& members : found_members) {
      bool all = true;
      for (int c : chosen) {
        if (!members[c]) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
    return false;
  }

  void record(Vector normal) {
    int orientation = 0;
    std::vector<int> on_plane;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      const int s = dot(normal, rays[r]).sign();
      if (s == 0) {
        on_plane.push_back(static_cast<int>(r));
      } else if (orientation == 0) {
        orientation = s;
      } else if (orientation != s) {
        return;
      }
    }
    if (orientation == 0) throw std::invalid_argument("cone generators are not full-dimensional");
    if (orientation < 0) normal = -normal;
    if (!found_sets.insert(on_plane).second) return;
    std::vector<bool> members(rays.size(), false);
    for (int r : on_plane) members[r] = true;
    found_members.push_back(std::move(members));
    facets.push_back({std::move(on_plane), std::move(normal)});
  }

  // The k-2 chosen generators leave a 2-dimensional orthogonal complement
  // span(u, w). Completing with generator r gives the hyperplane normal
  // (u.r) w - (w.r) u, whose value on x is (u.r)(w.x) - (w.r)(u.x).
  void last_level(std::size_t start, const RowSpace& span) {
    std::vector<bool> pivot(k, false);
    std::vector<std::size_t> pivot_of_row;
    for (const auto& row : span.rows()) {
      std::size_t p = 0;
      while (row[p].is_zero()) ++p;
      pivot[p] = true;
      pivot_of_row.push_back(p);
    }
    std::vector<Vector> kernel;
    for (std::size_t f = 0; f < k; ++f) {
      if (pivot[f]) continue;
      Vector v(k);
      v[f] = Scalar(1);
      for (std::size_t i = 0; i < span.rows().size(); ++i) {
        const auto& row = span.rows()[i];
        if (!row[f].is_zero()) v[pivot_of_row[i]] = -row[f];
      }
      kernel.push_back(std::move(v));
    }
    const Vector& u = kernel[0];
    const Vector& w = kernel[1];
    std::vector<Scalar> ux(rays.size()), wx(rays.size());
    for (std::size_t x = 0; x < rays.size(); ++x) {
      ux[x] = dot(u, rays[x]);
      wx[x] = dot(w, rays[x]);
    }
    for (std::size_t r = start; r < rays.size(); ++r) {
      if (ux[r].is_zero() && wx[r].is_zero()) continue;
      chosen.push_back(static_cast<int>(r));
      if (!inside_known_facet()) {
        int orientation = 0;
        bool mixed = false;
        for (std::size_t x = 0; x < rays.size(); ++x) {
          const int s = (ux[r] * wx[x] - wx[r] * ux[x]).sign();
          if (s == 0) continue;
          if (orientation == 0) {
            orientation = s;
          } else if (orientation != s) {
            mixed = true;
            break;
          }
        }
        if (!mixed) record(ux[r] * w - wx[r] * u);
      }
      chosen.pop_back();
    }
  }

  void dfs(std::size_t start, const RowSpace& span) {
    if (chosen.size() + 2 == k) {
      last_level(start, span);
      return;
    }
    const std::size_t need = k - 1 - chosen.size();
    for (std::size_t i = start; i + need <= rays.size(); ++i) {
      RowSpace next = span;
      if (!next.add(rays[i])) continue;
      chosen.push_back(static_cast<int>(i));
      dfs(i + 1, next);
      chosen.pop_back();
    }
  }
};

}  // namespace

std::vector<ConeFacet> cone_facets(const std::vector<Vector>& rays) {
  if (rays.empty()) throw std::invalid_argument("cone_facets: no generators");
  const std::size_t k = rays.front().size();
  for (const auto& r : rays) {
    if (r.size() != k) throw std::invalid_argument("cone_facets: ragged generators");
  }
  if (k == 0) return {};
  if (rank_of(rays) != k) throw std::invalid_argument("cone_facets: generators are not full-dimensional");
  FacetSearch search{rays, k, {}, {}, {}, {}};
  if (k == 1) {
    search.record(Vector{Scalar(1)});
  } else {
    search.dfs(0, RowSpace(k));
  }
  std::sort(search.facets.begin(), search.facets.end(),
            [](const ConeFacet& a, const ConeFacet& b) { return a.rays < b.rays; });
  return std::move(search.facets);
}

std::vector<std::vector<int>> faces_from_facets(int num_rays, const std::vector<ConeFacet>& facets) {
  std::vector<int> all(num_rays);
  for (int i = 0; i < num_rays; ++i) all[i] = i;
  std::set<std::vector<int>> seen{all};
  std::vector<std::vector<int>> queue{all};
  for (const auto& f : facets) {
    if (seen.insert(f.rays).second) queue.push_back(f.rays);
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& f : facets) {
      auto meet = intersect(queue[i], f.rays);
      if (seen.insert(meet).second) queue.push_back(std::move(meet));
    }
  }
  std::sort(queue.begin(), queue.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return queue;
}

std::vector<int> independent_subset(const std::vector<Vector>& vectors) {
  std::vector<int> picked;
  if (vectors.empty()) return picked;
  RowSpace span(vectors.front().size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (span.add(vectors[i])) picked.push_back(static_cast<int>(i));
  }
  return picked;
}

std::size_t rank_of(const std::vector<Vector>& vectors) { return independent_subset(vectors).size(); }

bool is_subset(const std::vector<int>& sub, const std::vector<int>& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace ghv
