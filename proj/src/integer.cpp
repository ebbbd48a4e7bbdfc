#include "paramphase/integer.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "paramphase/errors.hpp"

namespace paramphase {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ValidationError("ragged integer matrix literal");
    for (long long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntMatrix IntMatrix::rows_range(std::size_t first, std::size_t count) const {
  IntMatrix out(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(first + i, j);
  return out;
}

IntMatrix IntMatrix::cols_range(std::size_t first, std::size_t count) const {
  IntMatrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

bool IntMatrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

void IntMatrix::add_row(std::size_t target, std::size_t source, const Integer& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Integer& s = (*this)(source, j);
    if (s != 0) (*this)(target, j) += k * s;
  }
}

void IntMatrix::add_col(std::size_t target, std::size_t source, const Integer& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Integer& s = (*this)(i, source);
    if (s != 0) (*this)(i, target) += k * s;
  }
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
    os << '\n';
  }
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("integer matrix product: shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) out(i, j) += aik * b(k, j);
    }
  return out;
}

IntVector operator*(const IntMatrix& a, const IntVector& x) {
  if (a.cols() != x.size()) throw ValidationError("integer matrix-vector product: shape mismatch");
  IntVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a(i, k) != 0 && x[k] != 0) out[i] += a(i, k) * x[k];
  return out;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw ValidationError("hstack: row count mismatch");
  IntMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw ValidationError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> out;
  const std::size_t n = std::min(s.rows(), s.cols());
  for (std::size_t i = 0; i < n; ++i) out.push_back(s(i, i));
  return out;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  const Integer mm = abs(m);
  Integer r = a % mm;
  if (r < 0) r += mm;
  return r;
}

namespace {

// Row and column operations applied to S while keeping U, V and their
// inverses in step (U A V = S throughout).
struct SmithState {
  IntMatrix s, u, v, u_inv, v_inv;

  void add_row(std::size_t t, std::size_t src, const Integer& k) {
    s.add_row(t, src, k);
    u.add_row(t, src, k);
    u_inv.add_col(src, t, -k);
  }
  void add_col(std::size_t t, std::size_t src, const Integer& k) {
    s.add_col(t, src, k);
    v.add_col(t, src, k);
    v_inv.add_row(src, t, -k);
  }
  void swap_rows(std::size_t a, std::size_t b) {
    s.swap_rows(a, b);
    u.swap_rows(a, b);
    u_inv.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    s.swap_cols(a, b);
    v.swap_cols(a, b);
    v_inv.swap_rows(a, b);
  }
  void negate_row(std::size_t i) {
    s.negate_row(i);
    u.negate_row(i);
    u_inv.negate_col(i);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithState st{a, IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(m),
                IntMatrix::identity(n)};
  IntMatrix& s = st.s;

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // Pivot: smallest non-zero magnitude in the trailing block.
    bool found = false;
    std::size_t pi = t, pj = t;
    Integer best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (s(i, j) != 0 && (!found || abs(s(i, j)) < best)) {
          found = true;
          best = abs(s(i, j));
          pi = i;
          pj = j;
        }
    if (!found) break;
    st.swap_rows(t, pi);
    st.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i)
        if (s(i, t) != 0) {
          st.add_row(i, t, -(s(i, t) / s(t, t)));
          if (s(i, t) != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (s(t, j) != 0) {
          st.add_col(j, t, -(s(t, j) / s(t, t)));
          if (s(t, j) != 0) clean = false;
        }
      if (!clean) {
        // Move the smallest remainder in row/column t onto the diagonal.
        std::size_t bi = t, bj = t;
        Integer bv = abs(s(t, t));
        for (std::size_t i = t + 1; i < m; ++i)
          if (s(i, t) != 0 && abs(s(i, t)) < bv) bv = abs(s(i, t)), bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(t, j) != 0 && abs(s(t, j)) < bv) bv = abs(s(t, j)), bi = t, bj = j;
        st.swap_rows(t, bi);
        st.swap_cols(t, bj);
        continue;
      }
      // Divisibility: the pivot must divide the whole trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(i, j) % s(t, t) != 0) {
            st.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (s(t, t) < 0) st.negate_row(t);
  }

  SmithForm out;
  out.rank = t;
  out.s = std::move(st.s);
  out.u = std::move(st.u);
  out.v = std::move(st.v);
  out.u_inv = std::move(st.u_inv);
  out.v_inv = std::move(st.v_inv);
  return out;
}

}  // namespace paramphase
