#pragma once

// Exact integer linear algebra: a small dense matrix over arbitrary-precision
// integers and the Smith normal form.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace paramphase {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

// Row-major dense matrix of Integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector column(std::size_t j) const;
  IntVector row(std::size_t i) const;
  IntMatrix rows_range(std::size_t first, std::size_t count) const;
  IntMatrix cols_range(std::size_t first, std::size_t count) const;
  IntMatrix transpose() const;
  bool is_zero() const;
  bool operator==(const IntMatrix& other) const = default;

  // Elementary operations.
  void add_row(std::size_t target, std::size_t source, const Integer& k);  // row_t += k row_s
  void add_col(std::size_t target, std::size_t source, const Integer& k);  // col_t += k col_s
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& x);
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);

// Exact determinant by fraction-free elimination (Bareiss).
Integer determinant(const IntMatrix& a);

// U * A * V = S with S diagonal, s_1 | s_2 | ..., all s_i >= 0 and U, V
// unimodular. The inverses are tracked alongside.
struct SmithForm {
  IntMatrix u, s, v;
  IntMatrix u_inv, v_inv;
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

// Floor-style residue in [0, |m|).
Integer mod_floor(const Integer& a, const Integer& m);

}  // namespace paramphase
