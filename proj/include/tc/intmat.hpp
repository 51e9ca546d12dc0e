#pragma once

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "tc/errors.hpp"
#include "tc/int.hpp"

namespace tc {

// Dense exact integer matrix, row-major. Immutable by convention once
// handed out of a computation; all algebra is exact.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  IntMatrix(std::size_t r, std::size_t c, std::vector<Int> entries)
      : rows(r), cols(c), a(std::move(entries)) {
    if (a.size() != rows * cols) throw Error("IntMatrix: entry count mismatch");
  }

  // Row-major literal: {{1,2},{3,4}}.
  IntMatrix(std::initializer_list<std::initializer_list<long long>> lit) {
    rows = lit.size();
    cols = rows ? lit.begin()->size() : 0;
    a.reserve(rows * cols);
    for (const auto& row : lit) {
      if (row.size() != cols) throw Error("IntMatrix: ragged literal");
      for (long long v : row) a.emplace_back(v);
    }
  }

  Int& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix zero(std::size_t r, std::size_t c) { return IntMatrix(r, c); }

  static IntMatrix from_columns(std::size_t nrows, const std::vector<ExpVec>& columns) {
    IntMatrix m(nrows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != nrows) throw Error("from_columns: bad column length");
      for (std::size_t i = 0; i < nrows; ++i) m.at(i, j) = columns[j][i];
    }
    return m;
  }

  ExpVec column(std::size_t j) const {
    ExpVec v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
  }

  ExpVec row(std::size_t i) const {
    ExpVec v(cols);
    for (std::size_t j = 0; j < cols; ++j) v[j] = at(i, j);
    return v;
  }

  bool is_zero() const {
    for (const Int& x : a)
      if (x != 0) return false;
    return true;
  }

  bool operator==(const IntMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  IntMatrix mul(const IntMatrix& o) const {
    if (cols != o.rows) throw Error("IntMatrix::mul: shape mismatch");
    IntMatrix r(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k) {
        const Int& v = at(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < o.cols; ++j) r.at(i, j) += v * o.at(k, j);
      }
    return r;
  }

  ExpVec apply(const ExpVec& x) const {
    if (x.size() != cols) throw Error("IntMatrix::apply: shape mismatch");
    ExpVec r(rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (at(i, j) != 0 && x[j] != 0) r[i] += at(i, j) * x[j];
    return r;
  }

  IntMatrix hstack(const IntMatrix& o) const {
    if (o.rows != rows && o.cols != 0) throw Error("hstack: row mismatch");
    IntMatrix r(rows, cols + o.cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
      for (std::size_t j = 0; j < o.cols; ++j) r.at(i, cols + j) = o.at(i, j);
    }
    return r;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < cols; ++j) os << (j ? " " : "") << at(i, j);
    }
    os << "]";
    return os.str();
  }
};

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det(const IntMatrix& m) {
  if (m.rows != m.cols) throw Error("det: matrix not square");
  std::size_t n = m.rows;
  if (n == 0) return 1;
  IntMatrix w = m;
  Int prev = 1;
  int sgn = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && w.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
    prev = w.at(k, k);
  }
  return sgn > 0 ? w.at(n - 1, n - 1) : Int(-w.at(n - 1, n - 1));
}

}  // namespace tc
