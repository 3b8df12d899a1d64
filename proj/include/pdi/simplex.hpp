// simplex.hpp
// Dense LP solver working directly on >= rows: min c.x subject to A x >= b.
//
// A basis is a set of n linearly independent row indices; its basic solution
// is the point where those rows are tight. The solver pivots among bases
// (dual simplex from a dual-feasible start, primal simplex otherwise, with a
// zero-objective dual-simplex phase 1 when neither is at hand) and reports
// dual multipliers positionally over all rows, which is what makes the
// certificates elsewhere in this library line up with stacked systems.
#ifndef PDI_SIMPLEX_HPP
#define PDI_SIMPLEX_HPP

#include <optional>
#include <vector>

#include "pdi/dense.hpp"

namespace pdi {

/// Ordered set of n row indices whose rows are linearly independent.
using BasisIndexSet = std::vector<int>;

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  Vector x;                  // basic solution (valid when optimal)
  double obj_value = 0.0;
  Vector duals;              // one entry per row, >= 0, zero off the basis
  BasisIndexSet basis;       // sorted
  std::optional<Vector> farkas_ray;  // r >= 0, r.A = 0, r.b > 0 (infeasible)
  int pivots = 0;

  /// c.x == y.b within tol*(1 + |c.x|)?
  bool strong_duality_holds(const Vector& b, double tol) const;
};

/// Solves min c.x over {x : A x >= b}. If `warm_basis` is given and its rows
/// factor, pivoting starts from it (a dual-feasible warm basis goes straight
/// into dual simplex; re-solving unchanged data from its optimal basis takes
/// zero pivots).
LpSolution solve_lp(const Matrix& a, const Vector& b, const Vector& c,
                    const std::optional<BasisIndexSet>& warm_basis = {});

/// The point where the basis rows hold with equality: (A_B)^{-1} b_B.
Vector basic_solution_of(const BasisIndexSet& basis, const Matrix& a,
                         const Vector& b);

/// True when the basic solution of `basis` satisfies every row of the system
/// within kFeasTol.
bool is_basis_feasible(const BasisIndexSet& basis, const Matrix& a,
                       const Vector& b);

/// True when x satisfies every row within tol.
bool point_satisfies(const Matrix& a, const Vector& b, const Vector& x,
                     double tol);

} // namespace pdi

#endif
