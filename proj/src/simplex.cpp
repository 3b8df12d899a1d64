// simplex.cpp
#include "pdi/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "pdi/constants.hpp"
#include "pdi/errors.hpp"
#include "pdi/kernels.hpp"

namespace pdi {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

bool LpSolution::strong_duality_holds(const Vector& b, double tol) const {
  if (status != LpStatus::kOptimal) return false;
  const double yb = kernels::dot(duals.data(), b.data(), b.size());
  return std::fabs(obj_value - yb) <= tol * (1.0 + std::fabs(obj_value));
}

namespace {

// Active-set simplex over the rows of one system. The basis matrix is
// refactored on every pivot; systems here are small and the refactor keeps
// warm starts and perturbed re-solves on one code path.
class RowSimplex {
 public:
  RowSimplex(const Matrix& a, const Vector& b)
      : a_(a), b_(b), m_(static_cast<int>(a.rows())),
        n_(static_cast<int>(a.cols())) {
    if (b_.size() != a_.rows()) {
      throw DimensionError("solve_lp: rhs length != row count");
    }
    if (m_ < n_) {
      throw DimensionError("solve_lp: fewer rows than variables");
    }
    in_basis_.assign(m_, false);
  }

  LpSolution run(const Vector& c, const std::optional<BasisIndexSet>& warm) {
    if (static_cast<int>(c.size()) != n_) {
      throw DimensionError("solve_lp: objective length != column count");
    }
    init_basis(c, warm);
    LpSolution sol;

    refactor();
    Vector y = duals_on_basis(c);
    const bool dual_feasible =
        std::all_of(y.begin(), y.end(),
                    [](double v) { return v >= -kDualTol; });
    bool primal_feasible = false;
    if (!dual_feasible) {
      const Vector x = current_point();
      primal_feasible = point_satisfies(a_, b_, x, kFeasTol);
    }

    if (dual_feasible) {
      if (!dual_phase(c, sol)) return sol;  // infeasible, ray recorded
    } else if (primal_feasible) {
      if (!primal_phase(c, sol)) return sol;  // unbounded
    } else {
      // Phase 1: with a zero objective every basis is dual feasible, so the
      // dual simplex works purely toward primal feasibility.
      const Vector zero(n_, 0.0);
      if (!dual_phase(zero, sol)) return sol;
      if (!primal_phase(c, sol)) return sol;
    }

    finish_optimal(c, sol);
    return sol;
  }

 private:
  void init_basis(const Vector& c, const std::optional<BasisIndexSet>& warm) {
    if (warm) {
      if (static_cast<int>(warm->size()) != n_) {
        throw DimensionError("warm basis must contain exactly n rows");
      }
      basis_ = *warm;
      for (int r : basis_) {
        if (r < 0 || r >= m_) {
          throw DimensionError("warm basis row index out of range");
        }
      }
      if (try_factor()) {
        mark_basis();
        return;
      }
      throw NumericalError("warm basis rows are linearly dependent");
    }
    if (unit_row_basis(c)) {
      mark_basis();
      return;
    }
    greedy_basis();
    mark_basis();
  }

  void mark_basis() {
    in_basis_.assign(m_, false);
    for (int r : basis_) in_basis_[r] = true;
  }

  // Builds a basis from single-nonzero rows, one per variable, preferring
  // the sign that makes the start dual feasible and the highest row index
  // (bound overrides sit below the base rows they tighten).
  bool unit_row_basis(const Vector& c) {
    basis_.assign(n_, -1);
    for (int i = 0; i < m_; ++i) {
      int nz = -1;
      bool unit = true;
      for (int j = 0; j < n_; ++j) {
        if (a_(i, j) != 0.0) {
          if (nz >= 0) { unit = false; break; }
          nz = j;
        }
      }
      if (!unit || nz < 0) continue;
      const bool positive = a_(i, nz) > 0.0;
      const bool wanted = c[nz] > 0.0 ? positive
                        : c[nz] < 0.0 ? !positive
                                      : true;
      if (wanted) {
        basis_[nz] = i;  // keep the highest-index wanted row
      } else if (basis_[nz] < 0) {
        basis_[nz] = i;  // placeholder, may leave the start dual infeasible
      }
    }
    for (int j = 0; j < n_; ++j) {
      if (basis_[j] < 0) return false;
    }
    return try_factor();
  }

  // Gaussian elimination over all rows to pick n independent ones.
  void greedy_basis() {
    Matrix w = a_;
    std::vector<bool> row_used(m_, false), col_used(n_, false);
    double scale = 0.0;
    for (double v : w.data()) scale = std::max(scale, std::fabs(v));
    const double tiny = 1e-10 * std::max(1.0, scale);
    basis_.clear();
    for (int step = 0; step < n_; ++step) {
      int bi = -1, bj = -1;
      double best = tiny;
      for (int i = 0; i < m_; ++i) {
        if (row_used[i]) continue;
        for (int j = 0; j < n_; ++j) {
          if (col_used[j]) continue;
          const double v = std::fabs(w(i, j));
          if (v > best) { best = v; bi = i; bj = j; }
        }
      }
      if (bi < 0) {
        throw NumericalError("system has no nonsingular basis (rank < n)");
      }
      row_used[bi] = true;
      col_used[bj] = true;
      basis_.push_back(bi);
      const double inv = 1.0 / w(bi, bj);
      for (int i = 0; i < m_; ++i) {
        if (row_used[i]) continue;
        const double f = w(i, bj) * inv;
        if (f != 0.0) {
          kernels::axpy(-f, w.row(bi).data(), w.row(i).data(), n_);
        }
      }
    }
    std::sort(basis_.begin(), basis_.end());
    if (!try_factor()) {
      throw NumericalError("greedy basis failed to factor");
    }
  }

  bool try_factor() {
    Matrix ab(n_, n_);
    for (int k = 0; k < n_; ++k) {
      const auto row = a_.row(basis_[k]);
      std::copy(row.begin(), row.end(), ab.row(k).begin());
    }
    factor_.emplace(ab);
    return factor_->ok();
  }

  void refactor() {
    if (!try_factor()) {
      throw NumericalError("singular basis after tolerance-driven pivoting");
    }
  }

  Vector current_point() const {
    Vector bb(n_);
    for (int k = 0; k < n_; ++k) bb[k] = b_[basis_[k]];
    return factor_->solve(bb);
  }

  // y with y A_B = c, aligned with basis positions.
  Vector duals_on_basis(const Vector& c) const {
    return factor_->solve_transposed(c);
  }

  // Dual simplex toward primal feasibility; keeps y >= 0 for `c`.
  // Returns false (and fills sol) when the system is infeasible.
  bool dual_phase(const Vector& c, LpSolution& sol) {
    bool bland = false;
    int degenerate_run = 0;
    const int bland_trigger = 2 * (m_ + n_);
    const long iter_cap = 200L * (m_ + n_) + 10000;
    for (long iter = 0; ; ++iter) {
      if (iter > iter_cap) {
        throw NumericalError("dual simplex iteration limit exceeded");
      }
      const Vector x = current_point();
      int entering = -1;
      double worst = kFeasTol;
      for (int i = 0; i < m_; ++i) {
        if (in_basis_[i]) continue;
        const double viol = b_[i] - a_.row_dot(i, x);
        if (viol > worst) {
          worst = viol;
          entering = i;
          if (bland) break;  // lowest violated index
        }
      }
      if (entering < 0) {
        return true;  // primal feasible
      }
      // Express the entering row over the basis: w A_B = A_entering.
      Vector arow(a_.row(entering).begin(), a_.row(entering).end());
      const Vector w = factor_->solve_transposed(arow);
      const Vector y = duals_on_basis(c);
      int leave_pos = -1;
      double best_ratio = 0.0;
      for (int k = 0; k < n_; ++k) {
        if (w[k] <= kPivotTol) continue;
        const double ratio = std::max(y[k], 0.0) / w[k];
        if (leave_pos < 0 || ratio < best_ratio - 1e-12 ||
            (std::fabs(ratio - best_ratio) <= 1e-12 &&
             basis_[k] < basis_[leave_pos])) {
          best_ratio = ratio;
          leave_pos = k;
        }
      }
      if (leave_pos < 0) {
        // Dual ray: the entering row minus its basis expansion is a
        // nonnegative combination proving A x >= b empty.
        Vector ray(m_, 0.0);
        ray[entering] = 1.0;
        for (int k = 0; k < n_; ++k) {
          ray[basis_[k]] = std::max(-w[k], 0.0);
        }
        sol.status = LpStatus::kInfeasible;
        sol.farkas_ray = std::move(ray);
        sol.basis = sorted_basis();
        sol.pivots = pivots_;
        return false;
      }
      if (best_ratio <= 1e-12) {
        if (++degenerate_run > bland_trigger) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      in_basis_[basis_[leave_pos]] = false;
      in_basis_[entering] = true;
      basis_[leave_pos] = entering;
      ++pivots_;
      refactor();
    }
  }

  // Primal simplex from a primal-feasible basis. Returns false when the
  // objective is unbounded below.
  bool primal_phase(const Vector& c, LpSolution& sol) {
    bool bland = false;
    int degenerate_run = 0;
    const int bland_trigger = 2 * (m_ + n_);
    const long iter_cap = 200L * (m_ + n_) + 10000;
    for (long iter = 0; ; ++iter) {
      if (iter > iter_cap) {
        throw NumericalError("primal simplex iteration limit exceeded");
      }
      const Vector y = duals_on_basis(c);
      int leave_pos = -1;
      double most_negative = -kDualTol;
      for (int k = 0; k < n_; ++k) {
        if (y[k] < most_negative) {
          if (bland) {
            if (leave_pos < 0 || basis_[k] < basis_[leave_pos]) leave_pos = k;
          } else {
            most_negative = y[k];
            leave_pos = k;
          }
        }
      }
      if (leave_pos < 0) {
        return true;  // dual feasible at a primal-feasible point: optimal
      }
      // Move off the leaving row while staying on the others.
      Vector e(n_, 0.0);
      e[leave_pos] = 1.0;
      const Vector d = factor_->solve(e);
      const Vector x = current_point();
      int entering = -1;
      double step = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (in_basis_[i]) continue;
        const double ad = a_.row_dot(i, d);
        if (ad >= -kPivotTol) continue;
        const double slack = std::max(a_.row_dot(i, x) - b_[i], 0.0);
        const double ratio = slack / (-ad);
        if (entering < 0 || ratio < step - 1e-12 ||
            (std::fabs(ratio - step) <= 1e-12 && i < entering)) {
          step = ratio;
          entering = i;
        }
      }
      if (entering < 0) {
        sol.status = LpStatus::kUnbounded;
        sol.basis = sorted_basis();
        sol.pivots = pivots_;
        return false;
      }
      if (step <= 1e-12) {
        if (++degenerate_run > bland_trigger) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      in_basis_[basis_[leave_pos]] = false;
      in_basis_[entering] = true;
      basis_[leave_pos] = entering;
      ++pivots_;
      refactor();
    }
  }

  void finish_optimal(const Vector& c, LpSolution& sol) {
    sol.status = LpStatus::kOptimal;
    sol.x = current_point();
    sol.obj_value = kernels::dot(c.data(), sol.x.data(), n_);
    const Vector y = duals_on_basis(c);
    sol.duals.assign(m_, 0.0);
    for (int k = 0; k < n_; ++k) {
      sol.duals[basis_[k]] = std::max(y[k], 0.0);
    }
    sol.basis = sorted_basis();
    sol.pivots = pivots_;
  }

  BasisIndexSet sorted_basis() const {
    BasisIndexSet s = basis_;
    std::sort(s.begin(), s.end());
    return s;
  }

 private:
  const Matrix& a_;
  const Vector& b_;
  int m_ = 0, n_ = 0;
  BasisIndexSet basis_;
  std::vector<bool> in_basis_;
  std::optional<LuFactors> factor_;
  int pivots_ = 0;
};

} // namespace

LpSolution solve_lp(const Matrix& a, const Vector& b, const Vector& c,
                    const std::optional<BasisIndexSet>& warm_basis) {
  RowSimplex solver(a, b);
  return solver.run(c, warm_basis);
}

Vector basic_solution_of(const BasisIndexSet& basis, const Matrix& a,
                         const Vector& b) {
  const int n = static_cast<int>(a.cols());
  if (static_cast<int>(basis.size()) != n) {
    throw DimensionError("basis must contain exactly n rows");
  }
  Matrix ab(n, n);
  Vector bb(n);
  for (int k = 0; k < n; ++k) {
    const int r = basis[k];
    if (r < 0 || r >= static_cast<int>(a.rows())) {
      throw DimensionError("basis row index out of range");
    }
    const auto row = a.row(r);
    std::copy(row.begin(), row.end(), ab.row(k).begin());
    bb[k] = b[r];
  }
  LuFactors lu(ab);
  if (!lu.ok()) {
    throw NumericalError("basis rows are linearly dependent");
  }
  return lu.solve(bb);
}

bool is_basis_feasible(const BasisIndexSet& basis, const Matrix& a,
                       const Vector& b) {
  const Vector x = basic_solution_of(basis, a, b);
  return point_satisfies(a, b, x, kFeasTol);
}

bool point_satisfies(const Matrix& a, const Vector& b, const Vector& x,
                     double tol) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (a.row_dot(i, x) < b[i] - tol) {
      return false;
    }
  }
  return true;
}

} // namespace pdi
