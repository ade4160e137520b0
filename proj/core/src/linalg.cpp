#include "latsep/linalg.hpp"

#include <numeric>

#include "latsep/error.hpp"

namespace latsep {

RowEchelon row_reduce(RatMatrix matrix, std::size_t columns) {
  RowEchelon out;
  out.columns = columns;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < columns && pivot_row < matrix.size(); ++col) {
    std::size_t found = pivot_row;
    while (found < matrix.size() && matrix[found][col].is_zero()) {
      ++found;
    }
    if (found == matrix.size()) {
      continue;
    }
    std::swap(matrix[pivot_row], matrix[found]);
    const Rational inv = Rational(1) / matrix[pivot_row][col];
    for (std::size_t j = col; j < columns; ++j) {
      matrix[pivot_row][j] *= inv;
    }
    for (std::size_t r = 0; r < matrix.size(); ++r) {
      if (r == pivot_row || matrix[r][col].is_zero()) {
        continue;
      }
      const Rational factor = matrix[r][col];
      for (std::size_t j = col; j < columns; ++j) {
        if (!matrix[pivot_row][j].is_zero()) {
          matrix[r][j] -= factor * matrix[pivot_row][j];
        }
      }
    }
    out.pivot_columns.push_back(col);
    ++pivot_row;
  }
  matrix.resize(pivot_row);
  out.rows = std::move(matrix);
  return out;
}

std::size_t rank(const RatMatrix& matrix, std::size_t columns) {
  return row_reduce(matrix, columns).rank();
}

RatMatrix nullspace(const RatMatrix& matrix, std::size_t columns) {
  const RowEchelon ech = row_reduce(matrix, columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto c : ech.pivot_columns) {
    is_pivot[c] = true;
  }
  RatMatrix basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) {
      continue;
    }
    RatVector v(columns, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < ech.rows.size(); ++r) {
      v[ech.pivot_columns[r]] = -ech.rows[r][free];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVector> solve_linear(const RatMatrix& matrix, const RatVector& rhs,
                                      std::size_t columns) {
  if (matrix.size() != rhs.size()) {
    throw DimensionMismatch("right-hand side length does not match row count");
  }
  RatMatrix augmented = matrix;
  for (std::size_t r = 0; r < augmented.size(); ++r) {
    augmented[r].push_back(rhs[r]);
  }
  const RowEchelon ech = row_reduce(std::move(augmented), columns + 1);
  RatVector x(columns, Rational(0));
  for (std::size_t r = 0; r < ech.rows.size(); ++r) {
    const std::size_t col = ech.pivot_columns[r];
    if (col == columns) {
      return std::nullopt;
    }
    x[col] = ech.rows[r][columns];
  }
  return x;
}

IntPoint to_primitive_integer(const RatVector& v) {
  mpz_class lcm = 1;
  for (const auto& x : v) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.denominator().get_mpz_t());
  }
  std::vector<mpz_class> scaled;
  scaled.reserve(v.size());
  mpz_class g = 0;
  for (const auto& x : v) {
    mpz_class s = x.numerator() * (lcm / x.denominator());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_mpz_t());
    scaled.push_back(std::move(s));
  }
  IntPoint out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpz_class s = g == 0 ? mpz_class(0) : mpz_class(scaled[i] / g);
    if (!mpz_fits_slong_p(s.get_mpz_t())) {
      throw ArithmeticOverflow("integer direction outside 64-bit range");
    }
    out[i] = mpz_get_si(s.get_mpz_t());
  }
  return out;
}

RatVector to_rat_vector(const IntPoint& p) { return to_rational(p); }

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("inner product of vectors of different length");
  }
  Rational acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) {
      acc += a[i] * b[i];
    }
  }
  return acc;
}

Rational dot(const RatVector& a, const IntPoint& b) {
  if (a.size() != b.dim()) {
    throw DimensionMismatch("inner product of vectors of different length");
  }
  Rational acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && b[i] != 0) {
      acc += a[i] * Rational(b[i]);
    }
  }
  return acc;
}

std::vector<std::size_t> affinely_independent_indices(const std::vector<IntPoint>& points) {
  std::vector<std::size_t> chosen;
  if (points.empty()) {
    return chosen;
  }
  chosen.push_back(0);
  const std::size_t d = points[0].dim();
  // Incremental elimination: keep the reduced basis of chosen difference vectors.
  RatMatrix reduced;
  std::vector<std::size_t> pivots;
  for (std::size_t i = 1; i < points.size() && reduced.size() < d; ++i) {
    RatVector v = to_rat_vector(points[i] - points[0]);
    for (std::size_t r = 0; r < reduced.size(); ++r) {
      const Rational f = v[pivots[r]];
      if (!f.is_zero()) {
        for (std::size_t j = 0; j < d; ++j) {
          v[j] -= f * reduced[r][j];
        }
      }
    }
    std::size_t pivot = d;
    for (std::size_t j = 0; j < d; ++j) {
      if (!v[j].is_zero()) {
        pivot = j;
        break;
      }
    }
    if (pivot == d) {
      continue;
    }
    const Rational inv = Rational(1) / v[pivot];
    for (auto& x : v) {
      x *= inv;
    }
    reduced.push_back(std::move(v));
    pivots.push_back(pivot);
    chosen.push_back(i);
  }
  return chosen;
}

int affine_dimension(const std::vector<IntPoint>& points) {
  return static_cast<int>(affinely_independent_indices(points).size()) - 1;
}

}  // namespace latsep
