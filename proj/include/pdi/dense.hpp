// dense.hpp
// Row-major dense matrix and the LU factorization used for basis systems.
#ifndef PDI_DENSE_HPP
#define PDI_DENSE_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace pdi {

using Vector = std::vector<double>;

/// Row-major dense matrix. Rows are the unit of access everywhere in this
/// codebase (constraints are rows; certificates index rows).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  /// Appends a row (must have cols() entries once the matrix is nonempty).
  void append_row(std::span<const double> r);

  /// a_i . x for row i.
  double row_dot(std::size_t i, std::span<const double> x) const;

  bool operator==(const Matrix& other) const = default;

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// LU factorization with partial pivoting of a square matrix.
///
/// Used for basis systems A_B x = b_B and their transposes y A_B = c. The
/// factorization reports singularity instead of dividing by a tiny pivot.
class LuFactors {
 public:
  /// Factors `a` (n x n). Check ok() before solving.
  explicit LuFactors(const Matrix& a);

  bool ok() const { return ok_; }
  std::size_t dim() const { return n_; }

  /// Solves A x = rhs.
  Vector solve(std::span<const double> rhs) const;

  /// Solves A^T x = rhs (equivalently x^T A = rhs^T).
  Vector solve_transposed(std::span<const double> rhs) const;

 private:
  std::size_t n_ = 0;
  Matrix lu_;
  std::vector<std::size_t> perm_;
  bool ok_ = false;
};

} // namespace pdi

#endif
