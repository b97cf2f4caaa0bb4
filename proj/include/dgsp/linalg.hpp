#pragma once

// Dense real vectors and matrices, a cyclic Jacobi eigensolver for symmetric
// matrices, and a Moore-Penrose pseudo-inverse built on top of it. Everything
// is value-semantic and pure; this is the numeric substrate for the rest of
// the library. No external linear-algebra dependency: sizes stay at desk
// scale and determinism per build matters more than throughput.

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace dgsp {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : entries_(dim, 0.0) {}
  Vector(std::initializer_list<double> xs) : entries_(xs) { check_finite(); }
  explicit Vector(std::vector<double> xs) : entries_(std::move(xs)) { check_finite(); }

  std::size_t dim() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  double& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<double>& entries() const { return entries_; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  void check_finite() const;
  std::vector<double> entries_;
};

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& v);
bool operator==(const Vector& a, const Vector& b);

double dot(const Vector& a, const Vector& b);
double squared_norm(const Vector& v);
double norm(const Vector& v);
double max_abs_diff(const Vector& a, const Vector& b);

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const std::vector<double>& data() const { return data_; }

  Matrix transpose() const;
  Vector row(std::size_t i) const;
  Vector col(std::size_t j) const;

 private:
  void check_finite() const;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& v);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
bool operator==(const Matrix& a, const Matrix& b);

double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& a);

/// Stack side by side: [a | b].
Matrix hstack(const Matrix& a, const Matrix& b);
/// Stack on top of each other: [a ; b].
Matrix vstack(const Matrix& a, const Matrix& b);

struct SymEigen {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // orthonormal columns, i-th column pairs with eigenvalues[i]
};

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Off-diagonal Frobenius threshold 1e-12 (relative to the input scale),
/// at most 100 sweeps. Deterministic for identical input within one build.
/// Throws DomainError for non-square input or asymmetry beyond 1e-10.
SymEigen sym_eigen(const Matrix& a);

/// Moore-Penrose pseudo-inverse via the symmetric eigensolver applied to the
/// Gram matrix. Singular values below tol * sigma_max are treated as zero.
Matrix pseudo_inverse(const Matrix& a, double tol = 1e-10);

/// Number of singular values above tol * sigma_max.
std::size_t numeric_rank(const Matrix& a, double tol = 1e-10);

}  // namespace dgsp
