#include "ram/lp.hpp"

#include <optional>

#include "ram/errors.hpp"

namespace ram {
namespace {

class Tableau {
 public:
  Tableau(const LinearProgram& lp)
      : vars_(lp.variables), m_(static_cast<int>(lp.rows.size())), cols_(vars_ + m_) {
    rows_.assign(m_, std::vector<Rational>(cols_ + 1));
    basis_.resize(m_);
    for (int r = 0; r < m_; ++r) {
      const bool flip = lp.rhs[r] < 0;
      for (int j = 0; j < vars_; ++j) rows_[r][j] = flip ? -lp.rows[r][j] : lp.rows[r][j];
      rows_[r][vars_ + r] = 1;  // artificial
      rows_[r][cols_] = flip ? -lp.rhs[r] : lp.rhs[r];
      basis_[r] = vars_ + r;
    }
    allowed_.assign(cols_, true);
  }

  // Runs simplex iterations for `cost` until optimal; false if unbounded.
  bool optimize(const std::vector<Rational>& cost, int& pivots) {
    while (true) {
      const std::optional<int> entering = entering_column(cost);
      if (!entering) return true;
      const std::optional<int> leaving = leaving_row(*entering);
      if (!leaving) return false;
      pivot(*leaving, *entering);
      ++pivots;
    }
  }

  [[nodiscard]] Rational objective_value(const std::vector<Rational>& cost) const {
    Rational v;
    for (int r = 0; r < m_; ++r) v += cost[basis_[r]] * rows_[r][cols_];
    return v;
  }

  // After phase one: pivots zero-level artificials out of the basis, deleting
  // rows that are linear combinations of others.
  void expel_artificials() {
    for (int r = 0; r < m_;) {
      if (basis_[r] < vars_) {
        ++r;
        continue;
      }
      int column = -1;
      for (int j = 0; j < vars_; ++j) {
        if (!rows_[r][j].is_zero()) {
          column = j;
          break;
        }
      }
      if (column >= 0) {
        pivot(r, column);
        ++r;
      } else {
        rows_.erase(rows_.begin() + r);
        basis_.erase(basis_.begin() + r);
        --m_;
      }
    }
    for (int j = vars_; j < cols_; ++j) allowed_[j] = false;
  }

  [[nodiscard]] std::vector<Rational> primal() const {
    std::vector<Rational> x(vars_);
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < vars_) x[basis_[r]] = rows_[r][cols_];
    }
    return x;
  }

  [[nodiscard]] int columns() const { return cols_; }
  [[nodiscard]] int variables() const { return vars_; }

 private:
  // Bland: the lowest-index column with positive reduced cost.
  std::optional<int> entering_column(const std::vector<Rational>& cost) const {
    std::vector<bool> basic(cols_, false);
    for (int b : basis_) basic[b] = true;
    for (int j = 0; j < cols_; ++j) {
      if (!allowed_[j] || basic[j]) continue;
      Rational reduced = cost[j];
      for (int r = 0; r < m_; ++r) {
        if (!rows_[r][j].is_zero()) reduced -= cost[basis_[r]] * rows_[r][j];
      }
      if (reduced > 0) return j;
    }
    return std::nullopt;
  }

  // Minimum ratio; ties go to the row whose basic variable has the lowest index.
  std::optional<int> leaving_row(int column) const {
    std::optional<int> best;
    Rational best_ratio;
    for (int r = 0; r < m_; ++r) {
      if (rows_[r][column] <= 0) continue;
      Rational ratio = rows_[r][cols_] / rows_[r][column];
      if (!best || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[*best])) {
        best = r;
        best_ratio = std::move(ratio);
      }
    }
    return best;
  }

  void pivot(int row, int column) {
    const Rational p = rows_[row][column];
    for (auto& x : rows_[row]) x /= p;
    for (int r = 0; r < m_; ++r) {
      if (r == row || rows_[r][column].is_zero()) continue;
      const Rational factor = rows_[r][column];
      for (int j = 0; j <= cols_; ++j) {
        if (!rows_[row][j].is_zero()) rows_[r][j] -= factor * rows_[row][j];
      }
    }
    basis_[row] = column;
  }

  int vars_;
  int m_;
  int cols_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> basis_;
  std::vector<bool> allowed_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  if (lp.rhs.size() != lp.rows.size() || static_cast<int>(lp.objective.size()) != lp.variables) {
    throw InputError("linear program dimensions are inconsistent");
  }
  for (const auto& row : lp.rows) {
    if (static_cast<int>(row.size()) != lp.variables) {
      throw InputError("linear program row has the wrong width");
    }
  }

  Tableau tableau(lp);
  LpSolution out;

  std::vector<Rational> phase_one(tableau.columns());
  for (int j = lp.variables; j < tableau.columns(); ++j) phase_one[j] = -1;
  if (!tableau.optimize(phase_one, out.pivots)) {
    throw InternalError("phase one of the simplex method cannot be unbounded");
  }
  if (tableau.objective_value(phase_one) < 0) {
    out.status = LpSolution::Status::kInfeasible;
    return out;
  }
  tableau.expel_artificials();

  std::vector<Rational> cost(tableau.columns());
  for (int j = 0; j < lp.variables; ++j) cost[j] = lp.objective[j];
  if (!tableau.optimize(cost, out.pivots)) {
    out.status = LpSolution::Status::kUnbounded;
    return out;
  }
  out.status = LpSolution::Status::kOptimal;
  out.value = tableau.objective_value(cost);
  out.x = tableau.primal();
  return out;
}

}  // namespace ram
