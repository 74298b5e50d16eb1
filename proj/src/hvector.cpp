#include "ghv/hvector.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "ghv/cone_geometry.hpp"

namespace ghv {

IntPolynomial IntPolynomial::monomial(int degree, std::int64_t coeff) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1, 0);
  c.back() = coeff;
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::one_plus_x_pow(int n) { return IntPolynomial{1, 1}.pow(n); }

std::vector<std::int64_t> IntPolynomial::padded(int n) const {
  std::vector<std::int64_t> out(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i <= n; ++i) out[i] = (*this)[i];
  return out;
}

IntPolynomial IntPolynomial::substitute_power(int k) const {
  if (c_.empty()) return {};
  std::vector<std::int64_t> out(static_cast<std::size_t>(degree() * k) + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) out[i * k] = c_[i];
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::pow(int e) const {
  IntPolynomial r{1};
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

IntPolynomial operator+(const IntPolynomial& p, const IntPolynomial& q) {
  std::vector<std::int64_t> c(std::max(p.c_.size(), q.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = p[static_cast<int>(i)] + q[static_cast<int>(i)];
  return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& p, const IntPolynomial& q) {
  std::vector<std::int64_t> c(std::max(p.c_.size(), q.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = p[static_cast<int>(i)] - q[static_cast<int>(i)];
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& p, const IntPolynomial& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<std::int64_t> c(p.c_.size() + q.c_.size() - 1, 0);
  for (std::size_t i = 0; i < p.c_.size(); ++i) {
    for (std::size_t j = 0; j < q.c_.size(); ++j) c[i + j] += p.c_[i] * q.c_[j];
  }
  return IntPolynomial(std::move(c));
}

std::string IntPolynomial::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  if (c_.empty()) os << 0;
  os << ')';
  return os.str();
}

void IntPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolynomial truncate_below(const IntPolynomial& p, int r) {
  if (r <= 0) return {};
  std::vector<std::int64_t> c;
  for (int i = 0; i < r && i <= p.degree(); ++i) c.push_back(p[i]);
  return IntPolynomial(std::move(c));
}

namespace {

const IntPolynomial kXMinusOne{-1, 1};
const IntPolynomial kOneMinusX{1, -1};

IntPolynomial g_from_boundary(int dim, const IntPolynomial& h_boundary) {
  return truncate_below(kOneMinusX * h_boundary, (dim + 1) / 2);
}

// Face poset of a cone, recorded as the ray/facet incidence (which determines
// the whole lattice).
struct ConePoset {
  int dim = 0;
  int num_rays = 0;
  std::vector<std::vector<int>> facets;  // sorted local ray indices, sorted list
};

ConePoset poset_of(const Fan& fan, int id) {
  const Cone& c = fan.cone(id);
  ConePoset p;
  p.dim = c.dim;
  p.num_rays = static_cast<int>(c.rays.size());
  for (int f : fan.facets_of(id)) {
    std::vector<int> local;
    for (int r : fan.cone(f).rays) {
      local.push_back(static_cast<int>(std::lower_bound(c.rays.begin(), c.rays.end(), r) - c.rays.begin()));
    }
    p.facets.push_back(std::move(local));
  }
  std::sort(p.facets.begin(), p.facets.end());
  return p;
}

std::vector<int> ray_degrees(const ConePoset& p) {
  std::vector<int> deg(p.num_rays, 0);
  for (const auto& f : p.facets) {
    for (int r : f) ++deg[r];
  }
  return deg;
}

std::vector<int> certificate(const ConePoset& p) {
  std::vector<int> cert{p.dim, p.num_rays, static_cast<int>(p.facets.size())};
  std::vector<int> sizes;
  for (const auto& f : p.facets) sizes.push_back(static_cast<int>(f.size()));
  std::sort(sizes.begin(), sizes.end());
  auto deg = ray_degrees(p);
  std::sort(deg.begin(), deg.end());
  cert.insert(cert.end(), sizes.begin(), sizes.end());
  cert.push_back(-1);
  cert.insert(cert.end(), deg.begin(), deg.end());
  return cert;
}

// Backtracking search for a ray bijection a -> b carrying facets onto facets.
// Pairs of rays must keep their number of shared facets.
class IsomorphismSearch {
 public:
  IsomorphismSearch(const ConePoset& a, const ConePoset& b) : a_(a), b_(b) {
    shared_a_ = shared(a);
    shared_b_ = shared(b);
    deg_a_ = ray_degrees(a);
    deg_b_ = ray_degrees(b);
  }

  // false also when the node budget runs out
  bool run() {
    map_.assign(a_.num_rays, -1);
    used_.assign(b_.num_rays, false);
    return extend(0);
  }

 private:
  static std::vector<std::vector<int>> shared(const ConePoset& p) {
    std::vector<std::vector<int>> s(p.num_rays, std::vector<int>(p.num_rays, 0));
    for (const auto& f : p.facets) {
      for (int x : f) {
        for (int y : f) ++s[x][y];
      }
    }
    return s;
  }

  bool extend(int i) {
    if (++nodes_ > kNodeLimit) return false;
    if (i == a_.num_rays) return facets_match();
    for (int j = 0; j < b_.num_rays; ++j) {
      if (used_[j] || deg_a_[i] != deg_b_[j]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) ok = shared_a_[i][k] == shared_b_[j][map_[k]];
      if (!ok) continue;
      map_[i] = j;
      used_[j] = true;
      if (extend(i + 1)) return true;
      used_[j] = false;
    }
    map_[i] = -1;
    return false;
  }

  bool facets_match() const {
    std::vector<std::vector<int>> image;
    for (const auto& f : a_.facets) {
      std::vector<int> g;
      for (int r : f) g.push_back(map_[r]);
      std::sort(g.begin(), g.end());
      image.push_back(std::move(g));
    }
    std::sort(image.begin(), image.end());
    return image == b_.facets;
  }

  static constexpr long kNodeLimit = 200000;
  const ConePoset& a_;
  const ConePoset& b_;
  std::vector<std::vector<int>> shared_a_, shared_b_;
  std::vector<int> deg_a_, deg_b_;
  std::vector<int> map_;
  std::vector<bool> used_;
  long nodes_ = 0;
};

class GCache {
 public:
  std::optional<IntPolynomial> lookup(const ConePoset& p) {
    const auto cert = certificate(p);
    std::lock_guard lock(mutex_);
    auto it = table_.find(cert);
    if (it == table_.end()) return std::nullopt;
    for (const auto& [rep, g] : it->second) {
      ++stats_.isomorphism_tests;
      if (rep.facets == p.facets || IsomorphismSearch(rep, p).run()) {
        ++stats_.hits;
        return g;
      }
    }
    return std::nullopt;
  }

  void insert(ConePoset p, IntPolynomial g) {
    auto cert = certificate(p);
    std::lock_guard lock(mutex_);
    table_[std::move(cert)].emplace_back(std::move(p), std::move(g));
    ++stats_.classes;
  }

  GCacheStats stats() {
    std::lock_guard lock(mutex_);
    return stats_;
  }

  void clear() {
    std::lock_guard lock(mutex_);
    table_.clear();
    stats_ = {};
  }

 private:
  std::mutex mutex_;
  std::map<std::vector<int>, std::vector<std::pair<ConePoset, IntPolynomial>>> table_;
  GCacheStats stats_;
};

GCache& cache() {
  static GCache instance;
  return instance;
}

// g for every cone in `ids`, which must be closed under faces and sorted by
// dimension (cone ids of a fan already are).
std::map<int, IntPolynomial> g_table(const Fan& fan, const std::vector<int>& ids) {
  std::map<int, IntPolynomial> g;
  for (int id : ids) {
    const Cone& c = fan.cone(id);
    if (is_simplicial(c)) {
      g[id] = IntPolynomial{1};
      continue;
    }
    ConePoset poset = poset_of(fan, id);
    if (auto hit = cache().lookup(poset)) {
      g[id] = *hit;
      continue;
    }
    IntPolynomial h_boundary;
    for (int f : fan.faces_of(id)) {
      if (f == id) continue;
      h_boundary = h_boundary + kXMinusOne.pow(c.dim - 1 - fan.cone(f).dim) * g.at(f);
    }
    g[id] = g_from_boundary(c.dim, h_boundary);
    cache().insert(std::move(poset), g[id]);
  }
  return g;
}

std::vector<int> all_ids(const Fan& fan) {
  std::vector<int> ids(fan.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  return ids;
}

}  // namespace

IntPolynomial g_polynomial(const Fan& fan, int cone_id) { return g_table(fan, fan.faces_of(cone_id)).at(cone_id); }

IntPolynomial h_polynomial(const Fan& fan) {
  if (!is_complete(fan)) throw InvalidFan("h-polynomial needs a complete fan");
  const auto g = g_table(fan, all_ids(fan));
  IntPolynomial h;
  for (const auto& [id, gs] : g) h = h + kXMinusOne.pow(fan.dim() - fan.cone(id).dim) * gs;
  return h;
}

IntPolynomial h_polynomial(const Polytope& p) { return h_polynomial(face_fan(p)); }

IntPolynomial h_simplicial(const Fan& fan) {
  if (!is_complete(fan)) throw InvalidFan("h-polynomial needs a complete fan");
  IntPolynomial h;
  for (const Cone& c : fan.cones()) {
    if (!is_simplicial(c)) throw InvalidFan("fan has a non-simplicial cone");
    h = h + kXMinusOne.pow(fan.dim() - c.dim);
  }
  return h;
}

IntPolynomial g_via_quotient_fan(const Fan& fan, int cone_id) {
  const Cone& c = fan.cone(cone_id);
  if (c.dim == 0) return IntPolynomial{1};
  const Fan lambda = quotient_fan(fan, cone_id);
  IntPolynomial h;
  for (std::size_t id = 0; id < lambda.size(); ++id) {
    h = h + kXMinusOne.pow(lambda.dim() - lambda.cone(static_cast<int>(id)).dim) *
                g_via_quotient_fan(lambda, static_cast<int>(id));
  }
  return g_from_boundary(c.dim, h);
}

bool is_palindromic(const IntPolynomial& p, int n) {
  if (p.degree() > n) return false;
  for (int j = 0; j <= n; ++j) {
    if (p[j] != p[n - j]) return false;
  }
  return true;
}

bool is_unimodal(const IntPolynomial& p) {
  const auto& c = p.coefficients();
  std::size_t i = 1;
  while (i < c.size() && c[i] >= c[i - 1]) ++i;
  while (i < c.size() && c[i] <= c[i - 1]) ++i;
  return i >= c.size();
}

GCacheStats g_cache_stats() { return cache().stats(); }
void clear_g_cache() { cache().clear(); }

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool BoundsReport::all_hold() const { return first_failure().empty(); }

std::string BoundsReport::first_failure() const {
  if (!palindromic) return "palindromic";
  if (!unimodal) return "unimodal";
  if (!nonnegative_even_difference) return "nonnegative_even_difference";
  if (!difference_palindromic) return "difference_palindromic";
  if (!difference_unimodal) return "difference_unimodal";
  if (!increment_bounds) return "increment_bounds";
  if (is_minimum != is_cross_polytope) return "minimum_iff_cross_polytope";
  return {};
}

BoundsReport bounds_from_h(const IntPolynomial& h, int n, bool cross_polytope) {
  BoundsReport r;
  r.n = n;
  r.h = h;
  r.difference = h - IntPolynomial::one_plus_x_pow(n);
  r.palindromic = is_palindromic(h, n);
  r.unimodal = is_unimodal(h);
  r.nonnegative_even_difference = std::all_of(r.difference.coefficients().begin(), r.difference.coefficients().end(),
                                              [](std::int64_t c) { return c >= 0 && c % 2 == 0; });
  r.difference_palindromic = is_palindromic(r.difference, n);
  r.difference_unimodal = is_unimodal(r.difference);
  r.increment_bounds = true;
  for (int j = 1; 2 * j <= n; ++j) {
    if (h[j] - h[j - 1] < binomial(n, j) - binomial(n, j - 1)) r.increment_bounds = false;
  }
  r.is_minimum = r.difference.is_zero();
  r.is_cross_polytope = cross_polytope;
  return r;
}

BoundsReport check_cs_bounds(const Polytope& p) {
  if (!is_centrally_symmetric(p)) throw InvalidPolytope("polytope is not centrally symmetric");
  return bounds_from_h(h_polynomial(p), static_cast<int>(p.dim()), is_cross_polytope(p));
}

}  // namespace ghv
