// oracle.cpp
#include "support/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace pdi::testing {

namespace {

// Local Gaussian elimination in long double; returns false on (near)
// singular systems.
bool gauss_solve(std::vector<std::vector<long double>> m,
                 std::vector<long double> rhs, Vector& out) {
  const std::size_t n = rhs.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs((double)m[i][k]) > std::fabs((double)m[pivot][k])) {
        pivot = i;
      }
    }
    if (std::fabs((double)m[pivot][k]) < 1e-11) return false;
    std::swap(m[k], m[pivot]);
    std::swap(rhs[k], rhs[pivot]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const long double f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
      rhs[i] -= f * rhs[k];
    }
  }
  out.assign(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    long double s = rhs[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= m[ii][j] * out[j];
    out[ii] = static_cast<double>(s / m[ii][ii]);
  }
  return true;
}

void for_each_combination(int m, int n,
                          const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    f(idx);
    int k = n - 1;
    while (k >= 0 && idx[k] == m - n + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool satisfies_all(const Matrix& a, const Vector& b, const Vector& x,
                   double tol) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    long double dot = 0.0L;
    for (std::size_t j = 0; j < a.cols(); ++j) dot += (long double)a(i, j) * x[j];
    if ((double)dot < b[i] - tol) return false;
  }
  return true;
}

} // namespace

OracleLp enumerate_lp(const Matrix& a, const Vector& b, const Vector& c,
                      double feas_tol) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  OracleLp best;
  if (n == 0) {
    best.feasible = std::all_of(b.begin(), b.end(),
                                [&](double v) { return v <= feas_tol; });
    return best;
  }
  for_each_combination(m, n, [&](const std::vector<int>& rows) {
    std::vector<std::vector<long double>> sys(n,
                                              std::vector<long double>(n));
    std::vector<long double> rhs(n);
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) sys[k][j] = a(rows[k], j);
      rhs[k] = b[rows[k]];
    }
    Vector x;
    if (!gauss_solve(std::move(sys), std::move(rhs), x)) return;
    if (!satisfies_all(a, b, x, feas_tol)) return;
    long double val = 0.0L;
    for (int j = 0; j < n; ++j) val += (long double)c[j] * x[j];
    const double value = static_cast<double>(val);
    if (!best.feasible || value < best.value) {
      best.feasible = true;
      best.value = value;
      best.point = x;
    }
  });
  return best;
}

std::vector<Vector> enumerate_vertices(const Matrix& a, const Vector& b,
                                       double feas_tol) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  std::vector<Vector> vertices;
  for_each_combination(m, n, [&](const std::vector<int>& rows) {
    std::vector<std::vector<long double>> sys(n,
                                              std::vector<long double>(n));
    std::vector<long double> rhs(n);
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) sys[k][j] = a(rows[k], j);
      rhs[k] = b[rows[k]];
    }
    Vector x;
    if (!gauss_solve(std::move(sys), std::move(rhs), x)) return;
    if (!satisfies_all(a, b, x, feas_tol)) return;
    for (const Vector& seen : vertices) {
      double diff = 0.0;
      for (int j = 0; j < n; ++j) diff = std::max(diff, std::fabs(seen[j] - x[j]));
      if (diff < 1e-8) return;
    }
    vertices.push_back(std::move(x));
  });
  return vertices;
}

namespace {

// Reduce the instance by fixing its integer variables, then hand the
// continuous remainder to enumerate_lp.
OracleLp solve_with_fixed_integers(const Instance& inst,
                                   const std::vector<double>& assignment) {
  const int n = inst.num_vars;
  std::vector<int> cont;
  std::vector<int> int_pos(n, -1);
  for (std::size_t k = 0; k < inst.integer_vars.size(); ++k) {
    int_pos[inst.integer_vars[k]] = static_cast<int>(k);
  }
  for (int j = 0; j < n; ++j) {
    if (int_pos[j] < 0) cont.push_back(j);
  }
  const int nc = static_cast<int>(cont.size());
  Matrix a(0, static_cast<std::size_t>(std::max(nc, 1)));
  Vector b;
  const int m = inst.num_rows();
  Vector fixed_contrib(m, 0.0);
  for (int i = 0; i < m; ++i) {
    long double shift = 0.0L;
    for (int j = 0; j < n; ++j) {
      if (int_pos[j] >= 0) shift += (long double)inst.rows(i, j) * assignment[int_pos[j]];
    }
    fixed_contrib[i] = static_cast<double>(shift);
  }
  if (nc == 0) {
    OracleLp res;
    bool ok = true;
    for (int i = 0; i < m; ++i) {
      if (fixed_contrib[i] < inst.rhs[i] - 1e-7) ok = false;
    }
    res.feasible = ok;
    if (ok) {
      long double val = 0.0L;
      for (std::size_t k = 0; k < inst.integer_vars.size(); ++k) {
        val += (long double)inst.objective[inst.integer_vars[k]] * assignment[k];
      }
      res.value = static_cast<double>(val);
    }
    return res;
  }
  for (int i = 0; i < m; ++i) {
    Vector row(nc, 0.0);
    bool nonzero = false;
    for (int k = 0; k < nc; ++k) {
      row[k] = inst.rows(i, cont[k]);
      if (row[k] != 0.0) nonzero = true;
    }
    const double rhs = inst.rhs[i] - fixed_contrib[i];
    if (!nonzero) {
      if (rhs > 1e-7) {
        OracleLp res;  // constant row violated: infeasible
        return res;
      }
      continue;
    }
    a.append_row(row);
    b.push_back(rhs);
  }
  Vector c(nc);
  for (int k = 0; k < nc; ++k) c[k] = inst.objective[cont[k]];
  OracleLp res = enumerate_lp(a, b, c);
  if (res.feasible) {
    long double val = res.value;
    for (std::size_t k = 0; k < inst.integer_vars.size(); ++k) {
      val += (long double)inst.objective[inst.integer_vars[k]] * assignment[k];
    }
    res.value = static_cast<double>(val);
  }
  return res;
}

void enumerate_assignments(
    const Instance& inst, std::size_t k, std::vector<double>& current,
    const std::function<void(const std::vector<double>&)>& f) {
  if (k == inst.integer_vars.size()) {
    f(current);
    return;
  }
  const int var = inst.integer_vars[k];
  const long lo = std::lround(std::ceil(inst.lower_bound(var) - 1e-9));
  const long hi = std::lround(std::floor(inst.upper_bound(var) + 1e-9));
  for (long v = lo; v <= hi; ++v) {
    current[k] = static_cast<double>(v);
    enumerate_assignments(inst, k + 1, current, f);
  }
}

} // namespace

std::optional<double> oracle_milp_opt(const Instance& inst) {
  std::optional<double> best;
  std::vector<double> current(inst.integer_vars.size(), 0.0);
  enumerate_assignments(inst, 0, current, [&](const std::vector<double>& a) {
    const OracleLp res = solve_with_fixed_integers(inst, a);
    if (res.feasible && (!best || res.value < *best)) {
      best = res.value;
    }
  });
  return best;
}

std::vector<std::vector<double>> feasible_integer_assignments(
    const Instance& inst) {
  std::vector<std::vector<double>> result;
  std::vector<double> current(inst.integer_vars.size(), 0.0);
  enumerate_assignments(inst, 0, current, [&](const std::vector<double>& a) {
    if (solve_with_fixed_integers(inst, a).feasible) {
      result.push_back(a);
    }
  });
  return result;
}

} // namespace pdi::testing
