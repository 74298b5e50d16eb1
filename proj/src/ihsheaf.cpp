#include "ghv/ihsheaf.hpp"

#include <algorithm>
#include <functional>

#include "ghv/cone_geometry.hpp"

namespace ghv {

MonomialTable::MonomialTable(std::size_t vars, int max_degree) : vars_(vars) {
  lists_.resize(static_cast<std::size_t>(max_degree) + 1);
  for (int d = 0; d <= max_degree; ++d) {
    auto& list = lists_[d];
    if (vars == 0) {
      if (d == 0) list.emplace_back();
      continue;
    }
    std::vector<int> e(vars, 0);
    std::function<void(std::size_t, int)> fill = [&](std::size_t pos, int remaining) {
      if (pos + 1 == vars) {
        e[pos] = remaining;
        list.push_back(e);
        return;
      }
      for (int x = remaining; x >= 0; --x) {
        e[pos] = x;
        fill(pos + 1, remaining - x);
      }
    };
    fill(0, d);
  }
  for (const auto& list : lists_) {
    for (std::size_t i = 0; i < list.size(); ++i) index_[list[i]] = i;
  }
  for (int a = 0; a <= max_degree; ++a) {
    for (int b = 0; a + b <= max_degree; ++b) {
      auto& table = products_[{a, b}];
      for (const auto& x : lists_[a]) {
        for (const auto& y : lists_[b]) {
          std::vector<int> z(vars);
          for (std::size_t v = 0; v < vars; ++v) z[v] = x[v] + y[v];
          table.push_back(index_.at(z));
        }
      }
    }
  }
}

std::size_t MonomialTable::count(int degree) const {
  if (degree < 0) return 0;
  return lists_.at(degree).size();
}

std::size_t MonomialTable::index(const std::vector<int>& exponents) const { return index_.at(exponents); }

RefinedPolynomial operator*(const RefinedPolynomial& a, const RefinedPolynomial& b) {
  return {a.plus * b.plus + a.minus * b.minus, a.plus * b.minus + a.minus * b.plus};
}

RefinedPolynomial truncate_below(const RefinedPolynomial& p, int r) {
  return {truncate_below(p.plus, r), truncate_below(p.minus, r)};
}

namespace {

Vector poly_mul(const MonomialTable& t, const Vector& p, int a, const Vector& q, int b) {
  Vector out(t.count(a + b));
  const auto& prod = t.products(a, b);
  const std::size_t nb = q.size();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].is_zero()) continue;
    for (std::size_t j = 0; j < nb; ++j) {
      if (q[j].is_zero()) continue;
      out[prod[i * nb + j]] += p[i] * q[j];
    }
  }
  return out;
}

std::size_t span_rank(const std::vector<Vector>& vectors, std::size_t dim) {
  RowSpace rs(dim);
  for (const auto& v : vectors) rs.add(v);
  return rs.rank();
}

std::vector<Vector> unit_basis(std::size_t dim) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < dim; ++i) out.push_back(unit_vector(dim, i));
  return out;
}

Vector slice(const Vector& v, std::size_t from, std::size_t to) {
  return Vector(v.begin() + static_cast<long>(from), v.begin() + static_cast<long>(to));
}

void place(Vector& target, std::size_t at, const Vector& block) {
  std::copy(block.begin(), block.end(), target.begin() + static_cast<long>(at));
}

// Kernel of the stacked difference constraints, or everything when there are none.
std::vector<Vector> equalizer(const std::vector<Vector>& rows, std::size_t total) {
  if (total == 0) return {};
  if (rows.empty()) return unit_basis(total);
  return kernel_basis(Matrix::from_rows(rows, total));
}

void append_difference_rows(std::vector<Vector>& rows, const Matrix& ra, std::size_t off_a, const Matrix& rb,
                            std::size_t off_b, std::size_t total) {
  for (std::size_t r = 0; r < ra.rows(); ++r) {
    Vector row(total);
    for (std::size_t c = 0; c < ra.cols(); ++c) row[off_a + c] = ra(r, c);
    for (std::size_t c = 0; c < rb.cols(); ++c) row[off_b + c] = -rb(r, c);
    if (!is_zero(row)) rows.push_back(std::move(row));
  }
}

}  // namespace

MinimalExtensionSheaf::MinimalExtensionSheaf(const Fan& fan, int max_j) : fan_(fan), max_j_(max_j) {
  for (std::size_t k = 0; k <= fan.ambient_dim(); ++k) monomials_.emplace_back(k, max_j + 1);
  cones_.resize(fan.size());
}

MinimalExtensionSheaf MinimalExtensionSheaf::build(const Fan& fan, int degree_cap, Representative representative) {
  const int n = fan.dim();
  if (degree_cap < 0) degree_cap = 2 * (n + 1);
  if (degree_cap % 2 != 0) throw DegreeCapTooSmall("degree cap must be even");
  if (degree_cap < 2 * n) {
    throw DegreeCapTooSmall("degree cap " + std::to_string(degree_cap) + " is below 2n = " + std::to_string(2 * n));
  }
  MinimalExtensionSheaf sheaf(fan, degree_cap / 2);
  sheaf.equivariant_ = is_centrally_symmetric(fan);
  if (sheaf.equivariant_) sheaf.antipode_ = antipode_map(fan);

  ConeData& zero = sheaf.cones_[0];
  zero.degrees = {0};
  zero.kernel_dims.assign(static_cast<std::size_t>(sheaf.max_j_) + 1, 0);
  zero.kernel_dims[0] = 1;
  sheaf.build_restrictions(0);
  // Faces precede their cofaces in id order and -sigma has the same dimension
  // as sigma, so per dimension the representatives go first.
  const auto transported = [&](int id) {
    if (!sheaf.equivariant_) return false;
    const int other = sheaf.antipode_[id];
    return representative == Representative::larger_id ? other > id : other < id;
  };
  for (int d = 1; d <= n; ++d) {
    const auto ids = fan.cones_of_dim(d);
    for (int id : ids) {
      if (!transported(id)) sheaf.process_cone(id, -1);
    }
    for (int id : ids) {
      if (transported(id)) sheaf.process_cone(id, sheaf.antipode_[id]);
    }
  }

  if (is_complete(fan)) {
    sheaf.global_ = sheaf.sections_over(fan.cones_of_dim(static_cast<int>(fan.ambient_dim())), true);
  } else {
    sheaf.global_ = sheaf.sections_over(fan.maximal_cones(), false);
  }
  sheaf.global_m_ = sheaf.m_span(sheaf.global_);
  return sheaf;
}

std::vector<int> MinimalExtensionSheaf::generator_degrees(int cone) const {
  std::vector<int> out;
  for (int d : cones_.at(cone).degrees) out.push_back(2 * d);
  return out;
}

std::size_t MinimalExtensionSheaf::stalk_dim(int cone, int q) const {
  if (q % 2 != 0 || q < 0) return 0;
  if (q / 2 > max_j_) throw DegreeCapTooSmall("degree " + std::to_string(q) + " is above the cap");
  return dim_j(cone, q / 2);
}

std::size_t MinimalExtensionSheaf::dim_j(int cone, int j) const {
  const auto& table = monomials_[fan_.cone(cone).dim];
  std::size_t total = 0;
  for (int d : cones_[cone].degrees) total += table.count(j - d);
  return total;
}

std::size_t MinimalExtensionSheaf::block_offset(int cone, int j, std::size_t gen) const {
  const auto& table = monomials_[fan_.cone(cone).dim];
  std::size_t total = 0;
  for (std::size_t i = 0; i < gen; ++i) total += table.count(j - cones_[cone].degrees[i]);
  return total;
}

Vector MinimalExtensionSheaf::multiply(int cone, const Vector& poly, int a, const Vector& element, int b) const {
  const auto& table = monomials_[fan_.cone(cone).dim];
  Vector out(dim_j(cone, a + b));
  const auto& degrees = cones_[cone].degrees;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] > b) continue;
    const std::size_t from = block_offset(cone, b, i);
    const Vector block = slice(element, from, from + table.count(b - degrees[i]));
    place(out, block_offset(cone, a + b, i), poly_mul(table, poly, a, block, b - degrees[i]));
  }
  return out;
}

Vector MinimalExtensionSheaf::linear_form(int cone, const Vector& functional) const {
  const auto& table = monomials_[fan_.cone(cone).dim];
  const auto& basis = cones_[cone].basis;
  Vector poly(table.count(1));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::vector<int> e(basis.size(), 0);
    e[i] = 1;
    poly[table.index(e)] = dot(functional, basis[i]);
  }
  return poly;
}

const Matrix& MinimalExtensionSheaf::restriction_j(int sigma, int nu, int j) const {
  return restrictions_.at({sigma, nu, j});
}

const Matrix& MinimalExtensionSheaf::restriction(int sigma, int nu, int q) const {
  if (q % 2 != 0 || q < 0 || q / 2 > max_j_) throw std::out_of_range("restriction degree out of range");
  return restriction_j(sigma, nu, q / 2);
}

void MinimalExtensionSheaf::build_restrictions(int sigma) {
  const int k = fan_.cone(sigma).dim;
  const ConeData& data = cones_[sigma];
  const auto& big = monomials_[k];
  for (int j = 0; j <= max_j_; ++j) {
    restrictions_[{sigma, sigma, j}] = Matrix::identity(dim_j(sigma, j));
  }
  for (int nu : fan_.faces_of(sigma)) {
    if (nu == sigma) continue;
    const int kp = fan_.cone(nu).dim;
    const auto& small = monomials_[kp];
    // y_l = sum_m M(l, m) z_m on V_nu
    const Matrix m = coordinates_in_basis(data.basis, cones_[nu].basis);
    std::vector<Vector> lin(k, Vector(small.count(1)));
    for (int l = 0; l < k; ++l) {
      for (int c = 0; c < kp; ++c) {
        std::vector<int> e(kp, 0);
        e[c] = 1;
        lin[l][small.index(e)] = m(l, c);
      }
    }
    std::vector<std::vector<Vector>> subst(static_cast<std::size_t>(max_j_) + 1);
    subst[0] = {Vector{Scalar(1)}};
    for (int a = 1; a <= max_j_; ++a) {
      for (std::size_t idx = 0; idx < big.count(a); ++idx) {
        std::vector<int> alpha = big.exponents(a, idx);
        const auto l = static_cast<std::size_t>(std::find_if(alpha.begin(), alpha.end(), [](int x) { return x > 0; }) -
                                                alpha.begin());
        --alpha[l];
        subst[a].push_back(poly_mul(small, subst[a - 1][big.index(alpha)], a - 1, lin[l], 1));
      }
    }
    const auto& images = data.images.at(nu);
    for (int j = 0; j <= max_j_; ++j) {
      Matrix r(dim_j(nu, j), dim_j(sigma, j));
      std::size_t col = 0;
      for (std::size_t i = 0; i < data.degrees.size(); ++i) {
        const int a = j - data.degrees[i];
        for (std::size_t idx = 0; idx < big.count(a); ++idx, ++col) {
          const Vector image = multiply(nu, subst[a][idx], a, images[i], data.degrees[i]);
          for (std::size_t row = 0; row < image.size(); ++row) r(row, col) = image[row];
        }
      }
      restrictions_[{sigma, nu, j}] = std::move(r);
    }
  }
}

void MinimalExtensionSheaf::process_cone(int sigma, int source) {
  const int k = fan_.cone(sigma).dim;
  ConeData& data = cones_[sigma];
  if (source < 0) {
    for (int r : span_basis(fan_, sigma)) data.basis.push_back(fan_.rays()[r]);
  } else {
    for (const auto& b : cones_[source].basis) data.basis.push_back(-b);
  }
  const std::string label = "cone " + std::to_string(sigma);
  const auto facets = fan_.facets_of(sigma);
  const std::size_t nf = facets.size();

  // coordinate functions of V_sigma restricted to each facet
  std::vector<std::vector<Vector>> y_on(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    const int kp = fan_.cone(facets[f]).dim;
    const auto& small = monomials_[kp];
    const Matrix m = coordinates_in_basis(data.basis, cones_[facets[f]].basis);
    for (int l = 0; l < k; ++l) {
      Vector poly(small.count(1));
      for (int c = 0; c < kp; ++c) {
        std::vector<int> e(kp, 0);
        e[c] = 1;
        poly[small.index(e)] = m(l, c);
      }
      y_on[f].push_back(std::move(poly));
    }
  }

  std::vector<std::vector<Vector>> lift_components;  // per generator, per facet
  std::vector<std::size_t> boundary_dims;
  std::vector<Vector> previous_basis;
  std::vector<std::size_t> previous_off;
  for (int j = 0; j <= max_j_; ++j) {
    std::vector<std::size_t> off(nf + 1, 0);
    for (std::size_t f = 0; f < nf; ++f) off[f + 1] = off[f] + dim_j(facets[f], j);
    const std::size_t total = off[nf];
    std::vector<Vector> constraints;
    for (std::size_t a = 0; a < nf; ++a) {
      for (std::size_t b = a + 1; b < nf; ++b) {
        const int nu = fan_.meet(facets[a], facets[b]);
        if (fan_.cone(nu).dim != k - 2) continue;
        append_difference_rows(constraints, restriction_j(facets[a], nu, j), off[a], restriction_j(facets[b], nu, j),
                               off[b], total);
      }
    }
    std::vector<Vector> basis = equalizer(constraints, total);
    boundary_dims.push_back(basis.size());

    RowSpace quotient(total);
    for (const auto& e : previous_basis) {
      for (int l = 0; l < k; ++l) {
        Vector v(total);
        for (std::size_t f = 0; f < nf; ++f) {
          const Vector comp = slice(e, previous_off[f], previous_off[f + 1]);
          place(v, off[f], multiply(facets[f], y_on[f][l], 1, comp, j - 1));
        }
        quotient.add(std::move(v));
      }
    }

    std::vector<Vector> lifts;
    if (source < 0) {
      for (const auto& v : basis) {
        if (quotient.add(v)) lifts.push_back(v);
      }
    } else {
      const ConeData& src = cones_[source];
      for (std::size_t i = 0; i < src.degrees.size(); ++i) {
        if (src.degrees[i] != j) continue;
        Vector v(total);
        for (std::size_t f = 0; f < nf; ++f) place(v, off[f], src.images.at(antipode_[facets[f]])[i]);
        for (const auto& row : constraints) {
          if (!dot(row, v).is_zero()) {
            failures_.push_back(label + ": transported generator is not a boundary section");
            axiom3_ok_ = false;
            break;
          }
        }
        if (!quotient.add(v)) {
          failures_.push_back(label + ": transported generators are dependent modulo m");
          axiom3_ok_ = false;
        }
        lifts.push_back(std::move(v));
      }
    }
    if (quotient.rank() != basis.size()) {
      failures_.push_back(label + ": generators do not span the boundary quotient in degree " + std::to_string(2 * j));
      axiom3_ok_ = false;
    }
    for (auto& v : lifts) {
      std::vector<Vector> comps;
      for (std::size_t f = 0; f < nf; ++f) comps.push_back(slice(v, off[f], off[f + 1]));
      lift_components.push_back(std::move(comps));
      data.degrees.push_back(j);
    }
    previous_basis = std::move(basis);
    previous_off = std::move(off);
  }

  for (std::size_t f = 0; f < nf; ++f) {
    auto& images = data.images[facets[f]];
    for (const auto& comps : lift_components) images.push_back(comps[f]);
  }
  for (int nu : fan_.faces_of(sigma)) {
    if (nu == sigma || data.images.count(nu)) continue;
    std::size_t f = 0;
    while (!is_subset(fan_.cone(nu).rays, fan_.cone(facets[f]).rays)) ++f;
    auto& images = data.images[nu];
    const auto& upper = data.images.at(facets[f]);
    for (std::size_t i = 0; i < data.degrees.size(); ++i) {
      images.push_back(restriction_j(facets[f], nu, data.degrees[i]) * upper[i]);
    }
  }
  build_restrictions(sigma);

  for (int j = 0; j <= max_j_; ++j) {
    std::vector<Vector> rows;
    for (int f : facets) {
      const Matrix& r = restriction_j(sigma, f, j);
      for (std::size_t i = 0; i < r.rows(); ++i) rows.push_back(r.row_vector(i));
    }
    const std::size_t image_rank = span_rank(rows, dim_j(sigma, j));
    if (image_rank != boundary_dims[j]) {
      failures_.push_back(label + ": restriction to the boundary is not surjective in degree " + std::to_string(2 * j));
      flabby_ok_ = false;
    }
    data.kernel_dims.push_back(dim_j(sigma, j) - image_rank);
  }
}

bool MinimalExtensionSheaf::phi_commutes_with_restrictions() const {
  if (!equivariant_) return false;
  for (const auto& [key, matrix] : restrictions_) {
    const auto [sigma, nu, j] = key;
    if (restriction_j(antipode_[sigma], antipode_[nu], j) != matrix) return false;
  }
  return true;
}

GradedSections MinimalExtensionSheaf::sections_over(const std::vector<int>& maximal, bool ridges_only) const {
  GradedSections s;
  s.cones = maximal;
  const int n = fan_.dim();
  for (int j = 0; j <= max_j_; ++j) {
    std::vector<std::size_t> off(maximal.size() + 1, 0);
    for (std::size_t c = 0; c < maximal.size(); ++c) off[c + 1] = off[c] + dim_j(maximal[c], j);
    const std::size_t total = off.back();
    std::vector<Vector> constraints;
    for (std::size_t a = 0; a < maximal.size(); ++a) {
      for (std::size_t b = a + 1; b < maximal.size(); ++b) {
        const int nu = fan_.meet(maximal[a], maximal[b]);
        if (ridges_only && fan_.cone(nu).dim != n - 1) continue;
        if (dim_j(nu, j) == 0) continue;
        append_difference_rows(constraints, restriction_j(maximal[a], nu, j), off[a], restriction_j(maximal[b], nu, j),
                               off[b], total);
      }
    }
    off.pop_back();
    s.offsets.push_back(std::move(off));
    s.basis.push_back(equalizer(constraints, total));
  }
  return s;
}

GradedSections MinimalExtensionSheaf::sections(const Subfan& subfan) const {
  std::vector<bool> member(fan_.size(), false);
  for (int id : subfan) member.at(id) = true;
  for (int id : subfan) {
    for (int f : fan_.faces_of(id)) {
      if (!member[f]) throw InvalidFan("subfan is not closed under faces");
    }
  }
  std::vector<bool> covered(fan_.size(), false);
  for (int id : subfan) {
    for (int f : fan_.faces_of(id)) {
      if (f != id) covered[f] = true;
    }
  }
  std::vector<int> maximal;
  for (int id : subfan) {
    if (!covered[id]) maximal.push_back(id);
  }
  std::sort(maximal.begin(), maximal.end());
  return sections_over(maximal, false);
}

Vector MinimalExtensionSheaf::times_linear(const GradedSections& s, int j, const Vector& e,
                                           const std::vector<Vector>& forms) const {
  std::size_t total = 0;
  for (int c : s.cones) total += dim_j(c, j + 1);
  Vector out(total);
  for (std::size_t c = 0; c < s.cones.size(); ++c) {
    const std::size_t to = c + 1 < s.cones.size() ? s.offsets[j][c + 1] : e.size();
    place(out, s.offsets[j + 1][c], multiply(s.cones[c], forms[c], 1, slice(e, s.offsets[j][c], to), j));
  }
  return out;
}

std::vector<std::vector<Vector>> MinimalExtensionSheaf::m_span(const GradedSections& s) const {
  const std::size_t n = fan_.ambient_dim();
  std::vector<std::vector<Vector>> forms(n);
  for (std::size_t l = 0; l < n; ++l) {
    for (int c : s.cones) forms[l].push_back(linear_form(c, unit_vector(n, l)));
  }
  std::vector<std::vector<Vector>> out(static_cast<std::size_t>(max_j_) + 1);
  for (int j = 1; j <= max_j_; ++j) {
    std::size_t total = 0;
    for (int c : s.cones) total += dim_j(c, j);
    RowSpace rs(total);
    for (const auto& e : s.basis[j - 1]) {
      for (std::size_t l = 0; l < n; ++l) rs.add(times_linear(s, j - 1, e, forms[l]));
    }
    out[j] = rs.rows();
  }
  return out;
}

IntPolynomial MinimalExtensionSheaf::poincare_v() const {
  std::vector<std::int64_t> c(2 * static_cast<std::size_t>(max_j_) + 1, 0);
  for (int j = 0; j <= max_j_; ++j) c[2 * j] = static_cast<std::int64_t>(global_.basis[j].size());
  return IntPolynomial(std::move(c));
}

IntPolynomial MinimalExtensionSheaf::poincare_u() const {
  std::vector<std::int64_t> c(2 * static_cast<std::size_t>(max_j_) + 1, 0);
  for (int j = 0; j <= max_j_; ++j) {
    c[2 * j] = static_cast<std::int64_t>(global_.basis[j].size() - global_m_[j].size());
  }
  return IntPolynomial(std::move(c));
}

Vector MinimalExtensionSheaf::apply_phi(const GradedSections& s, int j, const Vector& e) const {
  Vector out(e.size());
  for (std::size_t c = 0; c < s.cones.size(); ++c) {
    const auto it = std::lower_bound(s.cones.begin(), s.cones.end(), antipode_[s.cones[c]]);
    const auto src = static_cast<std::size_t>(it - s.cones.begin());
    const std::size_t len = dim_j(s.cones[c], j);
    place(out, s.offsets[j][c], slice(e, s.offsets[j][src], s.offsets[j][src] + len));
  }
  return out;
}

namespace {

// rows spanning the (1 + sign*phi)-image of a span
template <typename Phi>
std::vector<Vector> eigen_part(const std::vector<Vector>& span, int sign, Phi&& phi) {
  std::vector<Vector> out;
  for (const auto& v : span) out.push_back(sign > 0 ? v + phi(v) : v - phi(v));
  return out;
}

}  // namespace

PhiDimensions MinimalExtensionSheaf::phi_eigenspaces() const {
  if (!equivariant_) throw InvalidFan("phi eigenspaces need a centrally symmetric fan");
  std::vector<std::int64_t> vp, vm, up, um;
  for (int j = 0; j <= max_j_; ++j) {
    auto phi = [&](const Vector& v) { return apply_phi(global_, j, v); };
    std::size_t total = 0;
    for (int c : global_.cones) total += dim_j(c, j);
    const auto e_plus = span_rank(eigen_part(global_.basis[j], 1, phi), total);
    const auto e_minus = span_rank(eigen_part(global_.basis[j], -1, phi), total);
    const auto m_plus = span_rank(eigen_part(global_m_[j], 1, phi), total);
    const auto m_minus = span_rank(eigen_part(global_m_[j], -1, phi), total);
    for (auto* p : {&vp, &vm, &up, &um}) p->resize(2 * static_cast<std::size_t>(j) + 1, 0);
    vp[2 * j] = static_cast<std::int64_t>(e_plus);
    vm[2 * j] = static_cast<std::int64_t>(e_minus);
    up[2 * j] = static_cast<std::int64_t>(e_plus - m_plus);
    um[2 * j] = static_cast<std::int64_t>(e_minus - m_minus);
  }
  return {{IntPolynomial(vp), IntPolynomial(vm)}, {IntPolynomial(up), IntPolynomial(um)}};
}

std::vector<LefschetzRow> MinimalExtensionSheaf::lefschetz_impl(const ConewiseLinear& s, bool minus) const {
  if (!is_conewise_linear(fan_, s)) throw InvalidFan("multiplier is not conewise linear on the fan");
  if (minus && !equivariant_) throw InvalidFan("minus eigenspaces need a centrally symmetric fan");
  std::vector<Vector> forms;
  for (int c : global_.cones) forms.push_back(linear_form(c, s.on(c)));
  const int n = fan_.dim();

  auto total_at = [&](int j) {
    std::size_t total = 0;
    for (int c : global_.cones) total += dim_j(c, j);
    return total;
  };
  // (sections spanning E, rows spanning m*E) in degree j, optionally the minus part
  auto spaces = [&](int j) {
    std::pair<std::vector<Vector>, std::vector<Vector>> out{global_.basis[j], global_m_[j]};
    if (minus) {
      auto phi = [&](const Vector& v) { return apply_phi(global_, j, v); };
      out.first = eigen_part(out.first, -1, phi);
      out.second = eigen_part(out.second, -1, phi);
    }
    return out;
  };

  std::vector<LefschetzRow> rows;
  for (int j = 0; j <= std::min(n, max_j_ - 1); ++j) {
    auto [e_src, m_src] = spaces(j);
    auto [e_dst, m_dst] = spaces(j + 1);
    RowSpace src(total_at(j));
    for (auto& v : m_src) src.add(std::move(v));
    const std::size_t m_src_rank = src.rank();
    std::vector<Vector> lifts;
    for (auto& v : e_src) {
      if (src.add(v)) lifts.push_back(std::move(v));
    }
    RowSpace dst(total_at(j + 1));
    for (auto& v : m_dst) dst.add(std::move(v));
    const std::size_t m_dst_rank = dst.rank();
    RowSpace dst_full = dst;
    for (auto& v : e_dst) dst_full.add(std::move(v));
    for (const auto& l : lifts) dst.add(times_linear(global_, j, l, forms));

    LefschetzRow row;
    row.q = 2 * j;
    row.source_dim = src.rank() - m_src_rank;
    row.target_dim = dst_full.rank() - m_dst_rank;
    row.rank = dst.rank() - m_dst_rank;
    row.injective_required = 2 * j <= n - 1;
    row.surjective_required = 2 * j >= n - 1;
    rows.push_back(row);
  }
  return rows;
}

std::vector<LefschetzRow> MinimalExtensionSheaf::lefschetz_maps(const ConewiseLinear& s) const {
  return lefschetz_impl(s, false);
}

std::vector<LefschetzRow> MinimalExtensionSheaf::lefschetz_maps_minus(const ConewiseLinear& s) const {
  return lefschetz_impl(s, true);
}

namespace {

IntPolynomial one_minus_t2_pow(int n) { return IntPolynomial{1, 0, -1}.pow(n); }

IntPolynomial one_plus_t2_pow(int n) { return IntPolynomial::one_plus_x_pow(n).substitute_power(2); }

// even-degree coefficients 0, 2, ..., 2n as a sequence
IntPolynomial even_part(const IntPolynomial& p, int n) {
  std::vector<std::int64_t> c;
  for (int j = 0; j <= n; ++j) c.push_back(p[2 * j]);
  return IntPolynomial(std::move(c));
}

}  // namespace

bool check_free_series(const IntPolynomial& v, const IntPolynomial& u, int n, int cap) {
  return truncate_below(v * one_minus_t2_pow(n), cap + 1) == truncate_below(u, cap + 1);
}

bool check_refined_series(const PhiDimensions& phi, int n, int cap) {
  RefinedPolynomial factor{IntPolynomial{1}, IntPolynomial{0, 0, -1}};
  RefinedPolynomial power{IntPolynomial{1}, IntPolynomial{}};
  for (int i = 0; i < n; ++i) power = power * factor;
  return truncate_below(phi.v * power, cap + 1) == truncate_below(phi.u, cap + 1);
}

bool check_eigenspace_split(const PhiDimensions& phi, const IntPolynomial& v, int cap) {
  if (phi.v.plus[0] != 1 || phi.v.minus[0] != 0) return false;
  for (int q = 1; q <= cap; ++q) {
    if (v[q] % 2 != 0 || 2 * phi.v.plus[q] != v[q] || 2 * phi.v.minus[q] != v[q]) return false;
  }
  return true;
}

bool check_refined_u(const PhiDimensions& phi, const IntPolynomial& u, int n) {
  const IntPolynomial b = one_plus_t2_pow(n);
  const IntPolynomial two{2};
  return two * phi.u.plus == u + b && two * phi.u.minus == u - b;
}

bool verify_betti_equals_h(const MinimalExtensionSheaf& sheaf) {
  return sheaf.poincare_u() == h_polynomial(sheaf.fan()).substitute_power(2);
}

HauptsatzViaSheaf verify_hauptsatz_via_sheaf(const MinimalExtensionSheaf& sheaf, const ConewiseLinear& s) {
  const int n = sheaf.fan().dim();
  const PhiDimensions phi = sheaf.phi_eigenspaces();
  const IntPolynomial u = sheaf.poincare_u();
  const IntPolynomial two{2};
  HauptsatzViaSheaf r;
  r.minus_dims_match = two * phi.u.minus == u - one_plus_t2_pow(n);
  const auto rows = sheaf.lefschetz_maps_minus(s);
  r.minus_lefschetz_ok = std::all_of(rows.begin(), rows.end(), [](const LefschetzRow& x) { return x.ok(); });
  r.difference_unimodal = is_unimodal(even_part(phi.u.minus, n));
  const IntPolynomial diff = h_polynomial(sheaf.fan()) - IntPolynomial::one_plus_x_pow(n);
  r.agrees_with_bounds = diff.substitute_power(2) == two * phi.u.minus;
  return r;
}

std::string IHReport::first_failure() const {
  if (!axioms_ok) return "sheaf_axioms";
  if (!eq1_ok) return "eq1";
  if (eq2_ok && !*eq2_ok) return "eq2";
  if (eq4_ok && !*eq4_ok) return "eq4";
  if (proposition_ok && !*proposition_ok) return "proposition";
  if (!bettizahlen_ok) return "bettizahlen";
  if (!lefschetz_ok) return "hard_lefschetz";
  if (hauptsatz && !hauptsatz->ok()) return "hauptsatz_via_sheaf";
  return {};
}

IHReport analyse_ih(const Polytope& p, int degree_cap) {
  const Fan fan = face_fan(p);
  const auto sheaf = MinimalExtensionSheaf::build(fan, degree_cap);
  const ConewiseLinear s = support_function(p);
  IHReport r;
  r.n = static_cast<int>(p.dim());
  r.degree_cap = sheaf.degree_cap();
  r.h = h_polynomial(fan);
  r.u = sheaf.poincare_u();
  r.v = sheaf.poincare_v();
  r.axioms_ok = sheaf.failures().empty() && sheaf.flabby() && sheaf.axiom3_holds();
  r.eq1_ok = check_free_series(r.v, r.u, r.n, r.degree_cap);
  r.bettizahlen_ok = r.u == r.h.substitute_power(2);
  r.lefschetz = sheaf.lefschetz_maps(s);
  r.lefschetz_ok = std::all_of(r.lefschetz.begin(), r.lefschetz.end(), [](const LefschetzRow& x) { return x.ok(); });
  if (sheaf.equivariant()) {
    r.axioms_ok = r.axioms_ok && sheaf.phi_commutes_with_restrictions();
    r.phi = sheaf.phi_eigenspaces();
    r.eq2_ok = check_refined_series(*r.phi, r.n, r.degree_cap);
    r.eq4_ok = check_eigenspace_split(*r.phi, r.v, r.degree_cap);
    r.proposition_ok = check_refined_u(*r.phi, r.u, r.n);
    r.lefschetz_minus = sheaf.lefschetz_maps_minus(s);
    r.hauptsatz = verify_hauptsatz_via_sheaf(sheaf, s);
  }
  return r;
}

}  // namespace ghv
