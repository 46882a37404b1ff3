#pragma once

// Exact linear algebra over the rationals.
//
// A linear map Q^m -> Q^n is an n x m Matrix, so composition B o A is B * A.
// Empty shapes (0 x m, n x 0) are legal everywhere and behave as the zero map.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "fatlab/error.hpp"

namespace fatlab {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

std::string to_string(const Rational& q);
Rational parse_rational(std::string_view s);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n);
  static Matrix scalar(std::size_t n, const Rational& s);
  static Matrix column(const Vector& v);
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& cols);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool square() const { return r_ == c_; }
  bool empty() const { return r_ == 0 || c_ == 0; }

  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Vector col(std::size_t j) const;
  bool is_zero() const;
  bool is_identity() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Rational& s);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  const std::vector<Rational>& entries() const { return a_; }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Rational> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, Matrix a);
Vector operator*(const Matrix& a, const Vector& v);

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(const Rational& s, Vector v);
bool is_zero(const Vector& v);

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);

// Reduced row echelon form in place, pivoting only within the first ncols
// columns; returns the pivot columns.
std::vector<std::size_t> reduce_rows(Matrix& a, std::size_t ncols);

// Rank by fraction-free (Bareiss) elimination on denominator-cleared rows.
std::size_t rank(const Matrix& a);

// Basis of the null space, one vector per free column of the reduced form.
std::vector<Vector> kernel_basis(const Matrix& a);

// Throws NonSquare or NotInvertible.
Matrix inverse(const Matrix& a);
bool invertible(const Matrix& a);

struct Solution {
  Vector x;
  bool unique = false;
};

// Particular solution of a x = b; throws NoSolution when inconsistent.
Solution solve(const Matrix& a, const Vector& b);

// Solve a X = b column by column.
Matrix solve_matrix(const Matrix& a, const Matrix& b, bool* unique = nullptr);

Matrix power(const Matrix& a, unsigned k);

std::string to_string(const Matrix& m);

}  // namespace fatlab
