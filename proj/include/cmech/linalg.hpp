#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cmech {

/// Dense row-major real matrix. Sizes in this library are tiny (at most a few
/// dozen rows), so no attempt is made at blocking or vectorization.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }

  double trace() const;
  Matrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

/// Largest absolute entry.
double max_abs(const Matrix& m);

/// True when |A_ij - A_ji| <= tol for all i, j.
bool is_symmetric(const Matrix& m, double tol);

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // column i pairs with values[i]
};

/// Cyclic Jacobi rotations. Stops when the off-diagonal Frobenius norm drops
/// below 1e-13 (relative to the Frobenius norm of the input when that exceeds
/// one) or after 200 sweeps. Throws NotSymmetric if asymmetry exceeds 1e-10.
SymmetricEigen symmetric_eigen(const Matrix& a);

/// Eigenvalues only, descending.
std::vector<double> symmetric_eigenvalues(const Matrix& a);

/// Solves A x = b by Gaussian elimination with partial pivoting. Throws
/// DimensionMismatch on shape errors and Degenerate for a singular system.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

}  // namespace cmech
