#ifndef RAM_LP_HPP_
#define RAM_LP_HPP_

#include <vector>

#include "ram/rational.hpp"

namespace ram {

// maximize objective . x  subject to  rows * x = rhs,  x >= 0.
struct LinearProgram {
  int variables = 0;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<Rational> objective;
};

struct LpSolution {
  enum class Status { kOptimal, kInfeasible, kUnbounded };
  Status status = Status::kInfeasible;
  Rational value;
  std::vector<Rational> x;
  int pivots = 0;
};

// Two-phase primal simplex on a dense exact tableau, Bland's rule throughout.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace ram

#endif  // RAM_LP_HPP_
