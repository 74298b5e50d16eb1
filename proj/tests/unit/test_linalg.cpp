#include <doctest.h>

#include <random>

#include "ghv/linalg.hpp"

using ghv::Matrix;
using ghv::Scalar;
using ghv::Vector;

namespace {

Matrix rows(std::initializer_list<std::initializer_list<long>> r) {
  std::vector<Vector> out;
  std::size_t cols = 0;
  for (const auto& row : r) {
    Vector v;
    for (long x : row) v.emplace_back(x);
    cols = v.size();
    out.push_back(std::move(v));
  }
  return Matrix::from_rows(out, cols);
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long radicand) {
  std::uniform_int_distribution<long> entry(-3, 3);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = radicand ? Scalar::quadratic(entry(rng), entry(rng), radicand) : Scalar(entry(rng));
    }
  }
  return m;
}

// Rank by cofactor expansion over all square minors: an independent oracle
// for small matrices.
Scalar det(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Scalar(1);
  Scalar total(0);
  for (std::size_t j = 0; j < n; ++j) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t a = 1; a < n; ++a) {
      for (std::size_t b = 0, bb = 0; b < n; ++b) {
        if (b != j) minor(a - 1, bb++) = m(a, b);
      }
    }
    const Scalar term = m(0, j) * det(minor);
    total = j % 2 ? total - term : total + term;
  }
  return total;
}

std::size_t rank_by_minors(const Matrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  for (std::size_t k = std::min(r, c); k > 0; --k) {
    std::vector<bool> rsel(r, false), csel(c, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<long>(k), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<long>(k), true);
      do {
        Matrix sub(k, k);
        for (std::size_t i = 0, a = 0; i < r; ++i) {
          if (!rsel[i]) continue;
          for (std::size_t j = 0, b = 0; j < c; ++j) {
            if (csel[j]) sub(a, b++) = m(i, j);
          }
          ++a;
        }
        if (!det(sub).is_zero()) return k;
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
  }
  return 0;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("rank reference values") {
    CHECK(ghv::rank(Matrix::identity(3)) == 3);
    CHECK(ghv::rank(Matrix(2, 4)) == 0);
    CHECK(ghv::rank(rows({{1, 0, 1}, {0, 1, 1}, {1, 1, 2}})) == 2);
    CHECK(ghv::rank(Matrix(0, 3)) == 0);
  }

  TEST_CASE("kernel reference values") {
    CHECK(ghv::kernel_basis(Matrix::identity(4)).empty());
    CHECK(ghv::kernel_basis(Matrix(1, 3)).size() == 3);
    const Matrix row = rows({{1, 1, -2}});
    const auto k = ghv::kernel_basis(row);
    REQUIRE(k.size() == 2);
    for (const auto& v : k) CHECK(ghv::is_zero(row * v));
    CHECK(ghv::rank(Matrix::from_rows(k, 3)) == 2);
  }

  TEST_CASE("solve reference values") {
    const Vector b{Scalar(4), Scalar(-1), Scalar(7)};
    CHECK(ghv::solve(Matrix::identity(3), b) == b);
    CHECK_FALSE(ghv::solve(rows({{1}, {1}}), Vector{Scalar(0), Scalar(1)}).has_value());
    CHECK(ghv::solve(rows({{1, 1}, {1, -1}}), Vector{Scalar(3), Scalar(1)}) == Vector{Scalar(2), Scalar(1)});
  }

  TEST_CASE("quotient projection reference values") {
    const Matrix p1 = ghv::quotient_projection(ghv::unit_vector(2, 0), 2);
    CHECK(p1.rows() == 1);
    CHECK(ghv::is_zero(p1 * ghv::unit_vector(2, 0)));
    CHECK(ghv::rank(p1) == 1);
    const Matrix p2 = ghv::quotient_projection(Vector{Scalar(1), Scalar(1)}, 2);
    CHECK(ghv::is_zero(p2 * Vector{Scalar(1), Scalar(1)}));
    CHECK(p2 == ghv::quotient_projection(Vector{Scalar(1), Scalar(1)}, 2));
    const Matrix p3 = ghv::quotient_projection(ghv::unit_vector(3, 0), 3);
    CHECK(p3 == rows({{0, 1, 0}, {0, 0, 1}}));
  }

  TEST_CASE("row echelon is reduced with first-nonzero pivots") {
    const auto e = ghv::row_echelon(rows({{0, 2, 4}, {0, 0, 0}, {3, 1, 1}}));
    CHECK(e.pivots == std::vector<std::size_t>{0, 1});
    CHECK(e.reduced(0, 0) == Scalar(1));
    CHECK(e.reduced(1, 0) == Scalar(0));
    CHECK(e.reduced(0, 1) == Scalar(0));
  }

  TEST_CASE("random matrices agree with the minor oracle") {
    std::mt19937_64 rng(5);
    for (long d : {0L, 2L}) {
      for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<std::size_t> size(1, 4);
        const std::size_t r = size(rng), c = size(rng);
        Matrix m = random_matrix(rng, r, c, d);
        if (trial % 3 == 0 && r > 1) {  // force a dependency
          for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * Scalar(2) - m(1 % r, j);
        }
        const std::size_t rk = ghv::rank(m);
        CHECK(rk == rank_by_minors(m));
        const auto k = ghv::kernel_basis(m);
        CHECK(k.size() == c - rk);
        for (const auto& v : k) CHECK(ghv::is_zero(m * v));
        Vector x(c);
        for (auto& xi : x) xi = Scalar(std::uniform_int_distribution<long>(-5, 5)(rng));
        const Vector b = m * x;
        const auto sol = ghv::solve(m, b);
        REQUIRE(sol.has_value());
        CHECK(m * *sol == b);
        CHECK(ghv::rank(m.transposed()) == rk);
      }
    }
  }

  TEST_CASE("coordinates in a basis") {
    const std::vector<Vector> basis{{Scalar(1), Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1), Scalar(1)}};
    const Vector t{Scalar(2), Scalar(5), Scalar(3)};
    const Matrix c = ghv::coordinates_in_basis(basis, {t});
    CHECK(c(0, 0) == Scalar(2));
    CHECK(c(1, 0) == Scalar(3));
    CHECK_THROWS(ghv::coordinates_in_basis(basis, {ghv::unit_vector(3, 0)}));
  }

  TEST_CASE("row space tracks span membership") {
    ghv::RowSpace s(3);
    CHECK(s.add({Scalar(1), Scalar(2), Scalar(3)}));
    CHECK_FALSE(s.add({Scalar(2), Scalar(4), Scalar(6)}));
    CHECK(s.add({Scalar(0), Scalar(1), Scalar(1)}));
    CHECK(s.contains({Scalar(1), Scalar(3), Scalar(4)}));
    CHECK_FALSE(s.contains(ghv::unit_vector(3, 2)));
    CHECK(s.rank() == 2);
    CHECK(ghv::is_zero(s.reduce({Scalar(2), Scalar(5), Scalar(7)})));
  }

  TEST_CASE("matrix products") {
    const Matrix a = rows({{1, 2}, {3, 4}});
    const Matrix b = rows({{0, 1}, {1, 0}});
    CHECK(a * b == rows({{2, 1}, {4, 3}}));
    CHECK(a * Matrix::identity(2) == a);
    CHECK(a.transposed().transposed() == a);
    CHECK(Matrix::from_columns({{Scalar(1), Scalar(3)}, {Scalar(2), Scalar(4)}}, 2) == a);
  }
}
