#include "latsep/lp.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "latsep/error.hpp"

namespace latsep {
namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_(rows + 1, RatVector(cols + 1)), basis_(rows, 0) {}

  Rational& at(std::size_t r, std::size_t c) { return cells_[r][c]; }
  Rational& rhs(std::size_t r) { return cells_[r][cols_]; }
  RatVector& objective() { return cells_[rows_]; }
  std::size_t& basic(std::size_t r) { return basis_[r]; }
  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  /// Installs reduced costs for maximizing costs . x given the current basis.
  void set_objective(const RatVector& costs) {
    RatVector& z = cells_[rows_];
    for (std::size_t j = 0; j <= cols_; ++j) {
      z[j] = j < cols_ ? costs[j] : Rational(0);
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& cb = costs[basis_[r]];
      if (cb.is_zero()) {
        continue;
      }
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (!cells_[r][j].is_zero()) {
          z[j] -= cb * cells_[r][j];
        }
      }
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    RatVector& p = cells_[row];
    const Rational inv = Rational(1) / p[col];
    nonzero_.clear();
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (!p[j].is_zero()) {
        p[j] *= inv;
        nonzero_.push_back(j);
      }
    }
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == row) {
        continue;
      }
      RatVector& target = cells_[r];
      if (target[col].is_zero()) {
        continue;
      }
      const Rational factor = target[col];
      for (auto j : nonzero_) {
        target[j] -= factor * p[j];
      }
    }
    basis_[row] = col;
  }

  /// Runs Bland's rule until optimal. Columns at or beyond `limit` never enter.
  /// Returns false when the objective is unbounded.
  bool optimize(std::size_t limit) {
    while (true) {
      std::size_t entering = limit;
      const RatVector& z = cells_[rows_];
      for (std::size_t j = 0; j < limit; ++j) {
        if (z[j].sign() > 0) {
          entering = j;
          break;
        }
      }
      if (entering == limit) {
        return true;
      }
      std::size_t leaving = rows_;
      Rational best;
      for (std::size_t r = 0; r < rows_; ++r) {
        const Rational& a = cells_[r][entering];
        if (a.sign() <= 0) {
          continue;
        }
        Rational ratio = cells_[r][cols_] / a;
        if (leaving == rows_ || ratio < best ||
            (ratio == best && basis_[r] < basis_[leaving])) {
          best = std::move(ratio);
          leaving = r;
        }
      }
      if (leaving == rows_) {
        return false;
      }
      pivot(leaving, entering);
    }
  }

  void drop_row(std::size_t r) {
    cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  RatMatrix cells_;  // last row holds reduced costs; last column holds the rhs
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nonzero_;
};

struct Overflow {};

std::int64_t narrow(__int128 v) {
  if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max()) {
    throw Overflow{};
  }
  return static_cast<std::int64_t>(v);
}

// Fraction-free tableau: the true tableau is cells / det with det > 0. After a
// pivot every entry is a subdeterminant of the integer input, so the update
// (a*p - b*c) / det divides exactly. Two cost rows are carried from the start
// (phase 1 and phase 2) so both stay exact.
class IntTableau {
 public:
  IntTableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_((rows + 2) * (cols + 1), 0), basis_(rows, 0) {}

  std::int64_t& at(std::size_t r, std::size_t c) { return cells_[r * (cols_ + 1) + c]; }
  std::int64_t& rhs(std::size_t r) { return at(r, cols_); }
  std::int64_t& cost(int phase, std::size_t c) { return at(rows_ + static_cast<std::size_t>(phase - 1), c); }
  std::size_t& basic(std::size_t r) { return basis_[r]; }
  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::int64_t det() const { return det_; }

  void pivot(std::size_t row, std::size_t col) {
    const std::int64_t piv = at(row, col);
    const std::size_t width = cols_ + 1;
    for (std::size_t r = 0; r < rows_ + 2; ++r) {
      if (r == row) {
        continue;
      }
      std::int64_t* target = &cells_[r * width];
      const std::int64_t* p = &cells_[row * width];
      const std::int64_t factor = target[col];
      if (factor == 0) {
        if (piv != det_) {
          for (std::size_t j = 0; j < width; ++j) {
            target[j] = scaled(target[j], piv);
          }
        }
        continue;
      }
      for (std::size_t j = 0; j < width; ++j) {
        std::int64_t a = 0;
        std::int64_t b = 0;
        std::int64_t v = 0;
        if (!__builtin_mul_overflow(target[j], piv, &a) && !__builtin_mul_overflow(factor, p[j], &b) &&
            !__builtin_sub_overflow(a, b, &v)) {
          target[j] = v / det_;
        } else {
          target[j] = narrow((static_cast<__int128>(target[j]) * piv - static_cast<__int128>(factor) * p[j]) / det_);
        }
      }
    }
    det_ = piv;
    if (det_ < 0) {
      for (auto& x : cells_) {
        x = -x;
      }
      det_ = -det_;
    }
    basis_[row] = col;
  }

  [[nodiscard]] std::int64_t scaled(std::int64_t x, std::int64_t piv) const {
    std::int64_t a = 0;
    if (!__builtin_mul_overflow(x, piv, &a)) {
      return a / det_;
    }
    return narrow(static_cast<__int128>(x) * piv / det_);
  }

  bool optimize(int phase, std::size_t limit) {
    while (true) {
      std::size_t entering = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (cost(phase, j) > 0) {
          entering = j;
          break;
        }
      }
      if (entering == limit) {
        return true;
      }
      std::size_t leaving = rows_;
      for (std::size_t r = 0; r < rows_; ++r) {
        const std::int64_t a = at(r, entering);
        if (a <= 0) {
          continue;
        }
        if (leaving == rows_) {
          leaving = r;
          continue;
        }
        // rhs_r / a < rhs_l / a_l, cross-multiplied (both denominators > 0).
        const __int128 lhs = static_cast<__int128>(rhs(r)) * at(leaving, entering);
        const __int128 rhs_ = static_cast<__int128>(rhs(leaving)) * a;
        if (lhs < rhs_ || (lhs == rhs_ && basis_[r] < basis_[leaving])) {
          leaving = r;
        }
      }
      if (leaving == rows_) {
        return false;
      }
      pivot(leaving, entering);
    }
  }

  void drop_row(std::size_t r) {
    const std::size_t width = cols_ + 1;
    cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(r * width),
                 cells_.begin() + static_cast<std::ptrdiff_t>((r + 1) * width));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int64_t> cells_;  // rows_ constraint rows, then two cost rows
  std::vector<std::size_t> basis_;
  std::int64_t det_ = 1;
};

// Positive integer multiple of a row of rationals, or nullopt when too large.
std::optional<std::vector<std::int64_t>> integer_row(const RatVector& coeffs, const Rational& rhs,
                                                     mpz_class& scale) {
  scale = 1;
  for (const auto& x : coeffs) {
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.denominator().get_mpz_t());
  }
  mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), rhs.denominator().get_mpz_t());
  std::vector<std::int64_t> out;
  out.reserve(coeffs.size() + 1);
  auto push = [&](const Rational& x) {
    const mpz_class v = x.numerator() * (scale / x.denominator());
    if (!mpz_fits_slong_p(v.get_mpz_t())) {
      return false;
    }
    out.push_back(mpz_get_si(v.get_mpz_t()));
    return true;
  };
  for (const auto& x : coeffs) {
    if (!push(x)) {
      return std::nullopt;
    }
  }
  if (!push(rhs)) {
    return std::nullopt;
  }
  return out;
}

bool all_integer(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_small() && x.is_integer(); });
}

// Integer-pivoting version of the rational solver below, pivot for pivot.
// Returns nullopt when data or intermediate values leave 64 bits.
std::optional<LpResult> solve_integer(const LinearProgram& program) {
  const std::size_t n = program.num_vars;
  std::vector<bool> is_free(n, false);
  for (auto v : program.free_variables) {
    is_free.at(v) = true;
  }
  std::vector<std::size_t> pos_col(n);
  std::vector<std::size_t> neg_col(n, SIZE_MAX);
  std::size_t structural = 0;
  for (std::size_t v = 0; v < n; ++v) {
    pos_col[v] = structural++;
    if (is_free[v]) {
      neg_col[v] = structural++;
    }
  }

  struct Row {
    std::vector<std::int64_t> coeffs;  // n coefficients then rhs
    Relation relation;
  };
  std::vector<Row> rows;
  rows.reserve(program.constraints.size());
  std::size_t slacks = 0;
  std::size_t artificials = 0;
  mpz_class scale;
  for (const auto& c : program.constraints) {
    std::optional<std::vector<std::int64_t>> ints;
    if (all_integer(c.coeffs) && c.rhs.is_small() && c.rhs.is_integer()) {
      ints.emplace();
      ints->reserve(n + 1);
      for (const auto& x : c.coeffs) {
        ints->push_back(x.floor());
      }
      ints->push_back(c.rhs.floor());
    } else {
      ints = integer_row(c.coeffs, c.rhs, scale);
      if (!ints) {
        return std::nullopt;
      }
    }
    Row row{std::move(*ints), c.relation};
    if (row.coeffs[n] < 0) {
      for (auto& x : row.coeffs) {
        if (x == std::numeric_limits<std::int64_t>::min()) {
          return std::nullopt;
        }
        x = -x;
      }
      if (row.relation == Relation::LessEqual) {
        row.relation = Relation::GreaterEqual;
      } else if (row.relation == Relation::GreaterEqual) {
        row.relation = Relation::LessEqual;
      }
    }
    if (row.relation != Relation::Equal) {
      ++slacks;
    }
    if (row.relation != Relation::LessEqual) {
      ++artificials;
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::int64_t> objective(n, 0);
  mpz_class objective_scale = 1;
  if (!program.objective.empty()) {
    auto ints = integer_row(program.objective, Rational(0), objective_scale);
    if (!ints) {
      return std::nullopt;
    }
    std::copy(ints->begin(), ints->begin() + static_cast<std::ptrdiff_t>(n), objective.begin());
  }

  const std::size_t m = rows.size();
  const std::size_t artificial_start = structural + slacks;
  const std::size_t total = artificial_start + artificials;
  try {
    IntTableau tab(m, total);
    std::size_t next_slack = structural;
    std::size_t next_art = artificial_start;
    for (std::size_t r = 0; r < m; ++r) {
      const Row& row = rows[r];
      for (std::size_t v = 0; v < n; ++v) {
        tab.at(r, pos_col[v]) = row.coeffs[v];
        if (is_free[v]) {
          tab.at(r, neg_col[v]) = narrow(-static_cast<__int128>(row.coeffs[v]));
        }
      }
      tab.rhs(r) = row.coeffs[n];
      switch (row.relation) {
        case Relation::LessEqual:
          tab.at(r, next_slack) = 1;
          tab.basic(r) = next_slack++;
          break;
        case Relation::GreaterEqual:
          tab.at(r, next_slack++) = -1;
          tab.at(r, next_art) = 1;
          tab.basic(r) = next_art++;
          break;
        case Relation::Equal:
          tab.at(r, next_art) = 1;
          tab.basic(r) = next_art++;
          break;
      }
    }
    // Reduced costs for the initial (slack/artificial) basis, det = 1.
    for (std::size_t v = 0; v < n; ++v) {
      tab.cost(2, pos_col[v]) = objective[v];
      if (is_free[v]) {
        tab.cost(2, neg_col[v]) = narrow(-static_cast<__int128>(objective[v]));
      }
    }
    for (std::size_t j = artificial_start; j < total; ++j) {
      tab.cost(1, j) = -1;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.basic(r) < artificial_start) {
        continue;
      }
      for (std::size_t j = 0; j <= total; ++j) {
        tab.cost(1, j) = narrow(static_cast<__int128>(tab.cost(1, j)) + tab.at(r, j));
      }
    }

    LpResult result;
    if (artificials > 0) {
      tab.optimize(1, total);
      if (tab.cost(1, total) != 0) {
        result.status = LpStatus::Infeasible;
        return result;
      }
      for (std::size_t r = 0; r < tab.rows();) {
        if (tab.basic(r) < artificial_start) {
          ++r;
          continue;
        }
        std::size_t col = artificial_start;
        for (std::size_t j = 0; j < artificial_start; ++j) {
          if (tab.at(r, j) != 0) {
            col = j;
            break;
          }
        }
        if (col == artificial_start) {
          tab.drop_row(r);
          continue;
        }
        tab.pivot(r, col);
        ++r;
      }
    }
    if (!tab.optimize(2, artificial_start)) {
      result.status = LpStatus::Unbounded;
      return result;
    }
    const Rational det(tab.det());
    std::vector<Rational> column_values(total, Rational(0));
    for (std::size_t r = 0; r < tab.rows(); ++r) {
      column_values[tab.basic(r)] = Rational(tab.rhs(r)) / det;
    }
    result.status = LpStatus::Optimal;
    result.x.assign(n, Rational(0));
    for (std::size_t v = 0; v < n; ++v) {
      result.x[v] = column_values[pos_col[v]];
      if (is_free[v]) {
        result.x[v] -= column_values[neg_col[v]];
      }
    }
    result.value = -Rational(tab.cost(2, total)) / det / Rational(mpq_class(objective_scale));
    return result;
  } catch (const Overflow&) {
    return std::nullopt;
  }
}

}  // namespace

LpResult solve_rational(const LinearProgram& program) {
  const std::size_t n = program.num_vars;
  for (const auto& c : program.constraints) {
    if (c.coeffs.size() != n) {
      throw DimensionMismatch("constraint length does not match variable count");
    }
  }
  if (!program.objective.empty() && program.objective.size() != n) {
    throw DimensionMismatch("objective length does not match variable count");
  }

  // Column layout: structural (free variables split into +/- parts), then
  // slack/surplus, then artificial.
  std::vector<bool> is_free(n, false);
  for (auto v : program.free_variables) {
    is_free.at(v) = true;
  }
  std::vector<std::size_t> pos_col(n);
  std::vector<std::size_t> neg_col(n, SIZE_MAX);
  std::size_t structural = 0;
  for (std::size_t v = 0; v < n; ++v) {
    pos_col[v] = structural++;
    if (is_free[v]) {
      neg_col[v] = structural++;
    }
  }

  struct Row {
    RatVector coeffs;
    Relation relation;
    Rational rhs;
  };
  std::vector<Row> rows;
  rows.reserve(program.constraints.size());
  std::size_t slacks = 0;
  std::size_t artificials = 0;
  for (const auto& c : program.constraints) {
    Row row{c.coeffs, c.relation, c.rhs};
    if (row.rhs.sign() < 0) {
      for (auto& x : row.coeffs) {
        x = -x;
      }
      row.rhs = -row.rhs;
      if (row.relation == Relation::LessEqual) {
        row.relation = Relation::GreaterEqual;
      } else if (row.relation == Relation::GreaterEqual) {
        row.relation = Relation::LessEqual;
      }
    }
    if (row.relation != Relation::Equal) {
      ++slacks;
    }
    if (row.relation != Relation::LessEqual) {
      ++artificials;
    }
    rows.push_back(std::move(row));
  }

  const std::size_t m = rows.size();
  const std::size_t artificial_start = structural + slacks;
  const std::size_t total = artificial_start + artificials;
  Tableau tab(m, total);
  std::size_t next_slack = structural;
  std::size_t next_art = artificial_start;
  for (std::size_t r = 0; r < m; ++r) {
    const Row& row = rows[r];
    for (std::size_t v = 0; v < n; ++v) {
      if (row.coeffs[v].is_zero()) {
        continue;
      }
      tab.at(r, pos_col[v]) = row.coeffs[v];
      if (is_free[v]) {
        tab.at(r, neg_col[v]) = -row.coeffs[v];
      }
    }
    tab.rhs(r) = row.rhs;
    switch (row.relation) {
      case Relation::LessEqual:
        tab.at(r, next_slack) = 1;
        tab.basic(r) = next_slack++;
        break;
      case Relation::GreaterEqual:
        tab.at(r, next_slack++) = -1;
        tab.at(r, next_art) = 1;
        tab.basic(r) = next_art++;
        break;
      case Relation::Equal:
        tab.at(r, next_art) = 1;
        tab.basic(r) = next_art++;
        break;
    }
  }

  LpResult result;
  if (artificials > 0) {
    RatVector phase1(total, Rational(0));
    for (std::size_t j = artificial_start; j < total; ++j) {
      phase1[j] = -1;
    }
    tab.set_objective(phase1);
    tab.optimize(total);
    // Objective value is minus the rhs entry of the reduced-cost row.
    if (tab.objective()[total].sign() != 0) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive zero-valued artificials out of the basis; drop redundant rows.
    for (std::size_t r = 0; r < tab.rows();) {
      if (tab.basic(r) < artificial_start) {
        ++r;
        continue;
      }
      std::size_t col = artificial_start;
      for (std::size_t j = 0; j < artificial_start; ++j) {
        if (!tab.at(r, j).is_zero()) {
          col = j;
          break;
        }
      }
      if (col == artificial_start) {
        tab.drop_row(r);
        continue;
      }
      tab.pivot(r, col);
      ++r;
    }
  }

  RatVector costs(total, Rational(0));
  for (std::size_t v = 0; v < n && !program.objective.empty(); ++v) {
    costs[pos_col[v]] = program.objective[v];
    if (is_free[v]) {
      costs[neg_col[v]] = -program.objective[v];
    }
  }
  tab.set_objective(costs);
  if (!tab.optimize(artificial_start)) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  RatVector column_values(total, Rational(0));
  for (std::size_t r = 0; r < tab.rows(); ++r) {
    column_values[tab.basic(r)] = tab.rhs(r);
  }
  result.status = LpStatus::Optimal;
  result.x.assign(n, Rational(0));
  for (std::size_t v = 0; v < n; ++v) {
    result.x[v] = column_values[pos_col[v]];
    if (is_free[v]) {
      result.x[v] -= column_values[neg_col[v]];
    }
  }
  result.value = -tab.objective()[total];
  return result;
}

LpResult solve(const LinearProgram& program) {
  const std::size_t n = program.num_vars;
  for (const auto& c : program.constraints) {
    if (c.coeffs.size() != n) {
      throw DimensionMismatch("constraint length does not match variable count");
    }
  }
  if (!program.objective.empty() && program.objective.size() != n) {
    throw DimensionMismatch("objective length does not match variable count");
  }
  if (auto fast = solve_integer(program)) {
    return std::move(*fast);
  }
  return solve_rational(program);
}

LpResult solve_with_row_generation(const LinearProgram& base,
                                   const std::vector<LinearConstraint>& lazy, std::size_t batch) {
  if (lazy.size() <= 4 * batch) {
    LinearProgram full = base;
    full.constraints.insert(full.constraints.end(), lazy.begin(), lazy.end());
    return solve(full);
  }
  // How far x is on the wrong side of a row; positive means violated.
  auto excess = [](const LinearConstraint& c, const RatVector& x) {
    const Rational lhs = dot(c.coeffs, x);
    switch (c.relation) {
      case Relation::LessEqual:
        return lhs - c.rhs;
      case Relation::GreaterEqual:
        return c.rhs - lhs;
      case Relation::Equal:
        return abs(lhs - c.rhs);
    }
    return Rational(0);
  };
  std::vector<bool> active(lazy.size(), false);
  LinearProgram working = base;
  while (true) {
    LpResult res = solve(working);
    if (res.status != LpStatus::Optimal) {
      return res;
    }
    std::vector<std::pair<Rational, std::size_t>> violated;
    for (std::size_t i = 0; i < lazy.size(); ++i) {
      if (active[i]) {
        continue;
      }
      Rational e = excess(lazy[i], res.x);
      if (e.sign() > 0) {
        violated.emplace_back(std::move(e), i);
      }
    }
    if (violated.empty()) {
      return res;
    }
    const std::size_t take = std::min(batch, violated.size());
    std::partial_sort(violated.begin(), violated.begin() + static_cast<std::ptrdiff_t>(take),
                      violated.end(), [](const auto& l, const auto& r) {
                        return l.first != r.first ? l.first > r.first : l.second < r.second;
                      });
    for (std::size_t i = 0; i < take; ++i) {
      active[violated[i].second] = true;
      working.constraints.push_back(lazy[violated[i].second]);
    }
  }
}

}  // namespace latsep
