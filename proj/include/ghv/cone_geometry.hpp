#pragma once

#include <vector>

#include "ghv/linalg.hpp"

namespace ghv {

/// A facet of a full-dimensional polyhedral cone: normal . r >= 0 for every
/// generator, with equality exactly on `rays`.
struct ConeFacet {
  std::vector<int> rays;
  Vector normal;
};

/// Facets of the cone generated by `rays` in R^k (k = ray length), found by
/// brute force over (k-1)-subsets of linearly independent generators. The cone
/// must be full-dimensional. Output is sorted by ray set.
std::vector<ConeFacet> cone_facets(const std::vector<Vector>& rays);

/// All faces obtained as intersections of facets, plus the full generator set.
/// Each face is a sorted generator index list; the result is sorted by
/// (size, lexicographic).
std::vector<std::vector<int>> faces_from_facets(int num_rays, const std::vector<ConeFacet>& facets);

/// Indices of the first linearly independent vectors (pivot order).
std::vector<int> independent_subset(const std::vector<Vector>& vectors);

std::size_t rank_of(const std::vector<Vector>& vectors);

/// True when every element of `sub` occurs in `super` (both sorted).
bool is_subset(const std::vector<int>& sub, const std::vector<int>& super);

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace ghv
