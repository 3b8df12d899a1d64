// dense.cpp
#include "pdi/dense.hpp"

#include <cassert>
#include <cmath>

#include "pdi/errors.hpp"
#include "pdi/kernels.hpp"

namespace pdi {

void Matrix::append_row(std::span<const double> r) {
  if (rows_ == 0 && cols_ == 0) {
    cols_ = r.size();
  }
  if (r.size() != cols_) {
    throw DimensionError("append_row: row has " + std::to_string(r.size()) +
                         " entries, matrix has " + std::to_string(cols_) +
                         " columns");
  }
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

double Matrix::row_dot(std::size_t i, std::span<const double> x) const {
  assert(x.size() == cols_);
  return kernels::dot(data_.data() + i * cols_, x.data(), cols_);
}

LuFactors::LuFactors(const Matrix& a) : n_(a.rows()), lu_(a), perm_(n_) {
  if (a.rows() != a.cols()) {
    throw DimensionError("LU requires a square matrix");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    perm_[i] = i;
  }
  // Scale-aware singularity threshold.
  double max_abs = 0.0;
  for (double v : lu_.data()) {
    max_abs = std::max(max_abs, std::fabs(v));
  }
  const double tiny = 1e-12 * std::max(1.0, max_abs);

  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t pivot = k;
    double best = std::fabs(lu_(k, k));
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double v = std::fabs(lu_(i, k));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (best <= tiny) {
      ok_ = false;
      return;
    }
    if (pivot != k) {
      std::swap(perm_[k], perm_[pivot]);
      for (std::size_t j = 0; j < n_; ++j) {
        std::swap(lu_(k, j), lu_(pivot, j));
      }
    }
    const double inv_pivot = 1.0 / lu_(k, k);
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double m = lu_(i, k) * inv_pivot;
      lu_(i, k) = m;
      if (m != 0.0) {
        // Eliminate the trailing part of row i.
        kernels::axpy(-m, &lu_(k, k + 1), &lu_(i, k + 1), n_ - k - 1);
      }
    }
  }
  ok_ = true;
}

Vector LuFactors::solve(std::span<const double> rhs) const {
  if (!ok_) {
    throw NumericalError("solve on a singular factorization");
  }
  if (rhs.size() != n_) {
    throw DimensionError("solve: rhs size mismatch");
  }
  Vector x(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    x[i] = rhs[perm_[i]];
  }
  for (std::size_t i = 1; i < n_; ++i) {
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) {
      s -= lu_(i, j) * x[j];
    }
    x[i] = s;
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t j = ii + 1; j < n_; ++j) {
      s -= lu_(ii, j) * x[j];
    }
    x[ii] = s / lu_(ii, ii);
  }
  return x;
}

Vector LuFactors::solve_transposed(std::span<const double> rhs) const {
  if (!ok_) {
    throw NumericalError("solve_transposed on a singular factorization");
  }
  if (rhs.size() != n_) {
    throw DimensionError("solve_transposed: rhs size mismatch");
  }
  // A = P^T L U, so A^T x = rhs means U^T (L^T P x) = rhs.
  Vector z(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < n_; ++i) {
    double s = z[i];
    for (std::size_t j = 0; j < i; ++j) {
      s -= lu_(j, i) * z[j];
    }
    z[i] = s / lu_(i, i);
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    double s = z[ii];
    for (std::size_t j = ii + 1; j < n_; ++j) {
      s -= lu_(j, ii) * z[j];
    }
    z[ii] = s;
  }
  Vector x(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    x[perm_[i]] = z[i];
  }
  return x;
}

} // namespace pdi
