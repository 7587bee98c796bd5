#pragma once

#include <cstddef>
#include <vector>

namespace reslab {

// Dense row-major matrix. Small sizes only, robustness over speed.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double* row_ptr(std::size_t i) { return a_.data() + i * cols_; }
  const double* row_ptr(std::size_t i) const { return a_.data() + i * cols_; }

  std::vector<double> multiply(const std::vector<double>& v) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

// LL^T factorization of a symmetric positive-definite matrix.
// Throws std::runtime_error if a pivot falls below tolerance.
class Cholesky {
 public:
  explicit Cholesky(const Matrix& a);
  std::vector<double> solve(const std::vector<double>& rhs) const;
  std::size_t size() const { return l_.rows(); }

 private:
  Matrix l_;
};

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j is the eigenvector for values[j]
};

// Householder tridiagonalization followed by implicit-shift QL.
SymmetricEigen symmetric_eigen(const Matrix& a);

// Cyclic Jacobi. Used as a cross-check for small matrices.
SymmetricEigen jacobi_eigen(const Matrix& a, int max_sweeps = 64);

// Eigenpairs of a symmetric tridiagonal matrix with eigenvalue < cutoff,
// by Sturm-sequence bisection plus inverse iteration. diag has size n,
// off has size n-1.
struct TridiagPartialEigen {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;  // unit 2-norm
};
TridiagPartialEigen tridiag_eigen_below(const std::vector<double>& diag,
                                        const std::vector<double>& off,
                                        double cutoff);

// count of eigenvalues strictly below x
int tridiag_count_below(const std::vector<double>& diag,
                        const std::vector<double>& off, double x);

}  // namespace reslab
