#include "ghv/linalg.hpp"

#include <stdexcept>

namespace ghv {

Scalar dot(std::span<const Scalar> x, std::span<const Scalar> y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: dimension mismatch");
  Scalar s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero() && !y[i].is_zero()) s += x[i] * y[i];
  }
  return s;
}

Vector operator+(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("vector add: dimension mismatch");
  Vector r(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

Vector operator-(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("vector sub: dimension mismatch");
  Vector r(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

Vector operator*(const Scalar& c, const Vector& x) {
  Vector r(x);
  for (auto& v : r) v *= c;
  return r;
}

Vector operator-(const Vector& x) {
  Vector r(x);
  for (auto& v : r) v = -v;
  return r;
}

bool is_zero(std::span<const Scalar> x) {
  for (const auto& v : x) {
    if (!v.is_zero()) return false;
  }
  return true;
}

Vector unit_vector(std::size_t dim, std::size_t index) {
  Vector v(dim);
  v.at(index) = Scalar(1);
  return v;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("from_rows: ragged input");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("from_columns: ragged input");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Vector Matrix::row_vector(std::size_t i) const {
  auto r = row(i);
  return Vector(r.begin(), r.end());
}

Vector Matrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vector Matrix::operator*(const Vector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("matrix-vector: dimension mismatch");
  Vector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) y[i] = dot(row(i), x);
  return y;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (other.rows_ != cols_) throw std::invalid_argument("matrix product: dimension mismatch");
  Matrix p(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        if (!other(k, j).is_zero()) p(i, j) += a * other(k, j);
      }
    }
  }
  return p;
}

RowEchelon row_echelon(Matrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
    }
    const Scalar inv = Scalar(1) / m(r, c);
    for (std::size_t j = c; j < cols; ++j) {
      if (!m(r, j).is_zero()) m(r, j) *= inv;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Scalar f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix reduced(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) reduced(i, j) = m(i, j);
  return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return row_echelon(m).pivots.size(); }

std::vector<Vector> kernel_basis(const Matrix& m) {
  const auto ech = row_echelon(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = Scalar(1);
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
      if (!ech.reduced(i, f).is_zero()) v[ech.pivots[i]] = -ech.reduced(i, f);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto ech = row_echelon(std::move(aug));
  if (!ech.pivots.empty() && ech.pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) x[ech.pivots[i]] = ech.reduced(i, m.cols());
  return x;
}

Matrix quotient_projection(const Vector& line, std::size_t ambient_dim) {
  if (line.size() != ambient_dim) throw std::invalid_argument("quotient_projection: dimension mismatch");
  if (is_zero(line)) throw std::invalid_argument("quotient_projection: zero vector spans no line");
  std::vector<Vector> basis{line};
  RowSpace span(ambient_dim);
  span.add(line);
  for (std::size_t i = 0; i < ambient_dim && basis.size() < ambient_dim; ++i) {
    auto e = unit_vector(ambient_dim, i);
    if (span.add(e)) basis.push_back(std::move(e));
  }
  // rows of B^{-1} give dual coordinates; drop the one belonging to the line
  Matrix aug(ambient_dim, 2 * ambient_dim);
  for (std::size_t j = 0; j < ambient_dim; ++j)
    for (std::size_t i = 0; i < ambient_dim; ++i) aug(i, j) = basis[j][i];
  for (std::size_t i = 0; i < ambient_dim; ++i) aug(i, ambient_dim + i) = Scalar(1);
  const auto ech = row_echelon(std::move(aug));
  Matrix proj(ambient_dim - 1, ambient_dim);
  for (std::size_t i = 1; i < ambient_dim; ++i)
    for (std::size_t j = 0; j < ambient_dim; ++j) proj(i - 1, j) = ech.reduced(i, ambient_dim + j);
  return proj;
}

Matrix coordinates_in_basis(const std::vector<Vector>& basis, const std::vector<Vector>& targets) {
  if (basis.empty()) {
    for (const auto& t : targets) {
      if (!is_zero(t)) throw std::invalid_argument("coordinates_in_basis: target outside span");
    }
    return Matrix(0, targets.size());
  }
  const std::size_t dim = basis.front().size();
  const Matrix b = Matrix::from_columns(basis, dim);
  Matrix coords(basis.size(), targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    auto x = solve(b, targets[t]);
    if (!x) throw std::invalid_argument("coordinates_in_basis: target outside span");
    for (std::size_t i = 0; i < basis.size(); ++i) coords(i, t) = (*x)[i];
  }
  return coords;
}

Vector RowSpace::reduce(Vector v) const {
  if (v.size() != dim_) throw std::invalid_argument("RowSpace: dimension mismatch");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t p = pivots_[i];
    if (v[p].is_zero()) continue;
    const Scalar f = v[p];
    const Vector& r = rows_[i];
    for (std::size_t j = p; j < dim_; ++j) {
      if (!r[j].is_zero()) v[j] -= f * r[j];
    }
  }
  return v;
}

bool RowSpace::add(Vector v) {
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < dim_ && v[p].is_zero()) ++p;
  if (p == dim_) return false;
  const Scalar inv = Scalar(1) / v[p];
  for (std::size_t j = p; j < dim_; ++j) {
    if (!v[j].is_zero()) v[j] *= inv;
  }
  // keep the basis fully reduced so reduce() stays a single pass
  for (auto& r : rows_) {
    if (r[p].is_zero()) continue;
    const Scalar f = r[p];
    for (std::size_t j = p; j < dim_; ++j) {
      if (!v[j].is_zero()) r[j] -= f * v[j];
    }
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool RowSpace::contains(Vector v) const { return is_zero(reduce(std::move(v))); }

}  // namespace ghv
