#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "tc/intmat.hpp"

namespace tc {

// Column Hermite normal form.
//
// Convention used throughout the library: lattices are column spans. The
// canonical form is column-echelon with pivots strictly descending the
// rows, positive pivots, entries above a pivot zero, and entries in a
// pivot row to the left of the pivot reduced into [0, pivot). Zero
// columns are pushed to the right.
struct HermiteResult {
  IntMatrix h;  // h = m * t
  IntMatrix t;  // unimodular
  std::size_t rank = 0;
};

inline HermiteResult hnf(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix t = IntMatrix::identity(m.cols);
  const std::size_t nr = m.rows, nc = m.cols;

  auto add_col = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < nr; ++i) h.at(i, dst) -= q * h.at(i, src);
    for (std::size_t i = 0; i < nc; ++i) t.at(i, dst) -= q * t.at(i, src);
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < nr; ++i) std::swap(h.at(i, x), h.at(i, y));
    for (std::size_t i = 0; i < nc; ++i) std::swap(t.at(i, x), t.at(i, y));
  };
  auto negate_col = [&](std::size_t x) {
    for (std::size_t i = 0; i < nr; ++i) h.at(i, x) = -h.at(i, x);
    for (std::size_t i = 0; i < nc; ++i) t.at(i, x) = -t.at(i, x);
  };

  std::size_t placed = 0;
  for (std::size_t r = 0; r < nr && placed < nc; ++r) {
    // gcd-reduce row r across the active columns until one nonzero remains
    for (;;) {
      std::size_t jmin = nc;
      for (std::size_t j = placed; j < nc; ++j) {
        if (h.at(r, j) == 0) continue;
        if (jmin == nc || abs_int(h.at(r, j)) < abs_int(h.at(r, jmin))) jmin = j;
      }
      if (jmin == nc) break;  // row r clear among active columns
      bool others = false;
      for (std::size_t j = placed; j < nc; ++j) {
        if (j == jmin || h.at(r, j) == 0) continue;
        add_col(j, jmin, h.at(r, j) / h.at(r, jmin));
        if (h.at(r, j) != 0) others = true;
      }
      if (!others) {
        swap_cols(placed, jmin);
        if (h.at(r, placed) < 0) negate_col(placed);
        // canonical reduction of earlier columns at this pivot row
        for (std::size_t j = 0; j < placed; ++j)
          add_col(j, placed, fdiv_q(h.at(r, j), h.at(r, placed)));
        ++placed;
        break;
      }
    }
  }
  return {std::move(h), std::move(t), placed};
}

// The canonical column basis of the column span: HNF with zero columns
// dropped. Unique per sublattice.
inline IntMatrix hermite_basis(const IntMatrix& m) {
  HermiteResult r = hnf(m);
  IntMatrix b(m.rows, r.rank);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < r.rank; ++j) b.at(i, j) = r.h.at(i, j);
  return b;
}

// Smith normal form: u * m * v = s with u, v unimodular and s diagonal,
// d1 | d2 | ... | dk, all >= 0. The inverses of u and v are accumulated
// during the reduction so that no matrix inversion is ever needed.
struct SmithDecomposition {
  IntMatrix s, u, v;
  IntMatrix u_inv, v_inv;

  std::size_t diag_len() const { return s.rows < s.cols ? s.rows : s.cols; }
  Int diag(std::size_t i) const { return s.at(i, i); }
  std::size_t rank() const {
    std::size_t r = 0;
    while (r < diag_len() && s.at(r, r) != 0) ++r;
    return r;
  }
};

inline SmithDecomposition snf(const IntMatrix& m) {
  SmithDecomposition d;
  d.s = m;
  d.u = IntMatrix::identity(m.rows);
  d.u_inv = IntMatrix::identity(m.rows);
  d.v = IntMatrix::identity(m.cols);
  d.v_inv = IntMatrix::identity(m.cols);
  IntMatrix& s = d.s;
  const std::size_t nr = m.rows, nc = m.cols;

  auto row_sub = [&](std::size_t i, std::size_t k, const Int& q) {
    // row_i -= q * row_k ; U likewise ; Uinv col_k += q * col_i
    if (q == 0) return;
    for (std::size_t j = 0; j < nc; ++j) s.at(i, j) -= q * s.at(k, j);
    for (std::size_t j = 0; j < nr; ++j) d.u.at(i, j) -= q * d.u.at(k, j);
    for (std::size_t j = 0; j < nr; ++j) d.u_inv.at(j, k) += q * d.u_inv.at(j, i);
  };
  auto col_sub = [&](std::size_t j, std::size_t k, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < nr; ++i) s.at(i, j) -= q * s.at(i, k);
    for (std::size_t i = 0; i < nc; ++i) d.v.at(i, j) -= q * d.v.at(i, k);
    for (std::size_t i = 0; i < nc; ++i) d.v_inv.at(k, i) += q * d.v_inv.at(j, i);
  };
  auto row_swap = [&](std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < nc; ++j) std::swap(s.at(i, j), s.at(k, j));
    for (std::size_t j = 0; j < nr; ++j) std::swap(d.u.at(i, j), d.u.at(k, j));
    for (std::size_t j = 0; j < nr; ++j) std::swap(d.u_inv.at(j, i), d.u_inv.at(j, k));
  };
  auto col_swap = [&](std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < nr; ++i) std::swap(s.at(i, j), s.at(i, k));
    for (std::size_t i = 0; i < nc; ++i) std::swap(d.v.at(i, j), d.v.at(i, k));
    for (std::size_t i = 0; i < nc; ++i) std::swap(d.v_inv.at(j, i), d.v_inv.at(k, i));
  };
  auto row_neg = [&](std::size_t i) {
    for (std::size_t j = 0; j < nc; ++j) s.at(i, j) = -s.at(i, j);
    for (std::size_t j = 0; j < nr; ++j) d.u.at(i, j) = -d.u.at(i, j);
    for (std::size_t j = 0; j < nr; ++j) d.u_inv.at(j, i) = -d.u_inv.at(j, i);
  };

  const std::size_t nmin = nr < nc ? nr : nc;
  for (std::size_t t = 0; t < nmin; ++t) {
    for (;;) {
      // pivot: minimal nonzero |entry| in the trailing submatrix
      std::size_t pi = nr, pj = nc;
      for (std::size_t i = t; i < nr; ++i)
        for (std::size_t j = t; j < nc; ++j) {
          if (s.at(i, j) == 0) continue;
          if (pi == nr || abs_int(s.at(i, j)) < abs_int(s.at(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == nr) {
        t = nmin;  // submatrix zero; done
        break;
      }
      row_swap(t, pi);
      col_swap(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < nr; ++i) {
        if (s.at(i, t) == 0) continue;
        row_sub(i, t, s.at(i, t) / s.at(t, t));
        if (s.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < nc; ++j) {
        if (s.at(t, j) == 0) continue;
        col_sub(j, t, s.at(t, j) / s.at(t, t));
        if (s.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: pivot must divide every remaining entry
      bool divides = true;
      for (std::size_t i = t + 1; i < nr && divides; ++i)
        for (std::size_t j = t + 1; j < nc; ++j)
          if (s.at(i, j) % s.at(t, t) != 0) {
            row_sub(t, i, Int(-1));  // pull the offending row up and retry
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (t >= nmin) break;
  }
  for (std::size_t t = 0; t < nmin; ++t)
    if (s.at(t, t) < 0) row_neg(t);
  return d;
}

// Solve m * x = b over the integers. Returns a verified witness or
// nothing; the witness always satisfies m * x = b exactly.
inline std::optional<ExpVec> solve_in_span(const IntMatrix& m, const ExpVec& b) {
  if (b.size() != m.rows) throw Error("solve_in_span: rhs length mismatch");
  SmithDecomposition d = snf(m);
  ExpVec c = d.u.apply(b);
  ExpVec z(m.cols, Int(0));
  const std::size_t k = d.diag_len();
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (i < k && d.diag(i) != 0) {
      if (c[i] % d.diag(i) != 0) return std::nullopt;
      z[i] = c[i] / d.diag(i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  ExpVec x = d.v.apply(z);
  if (m.apply(x) != b) throw Error("solve_in_span: witness failed verification");
  return x;
}

// Basis (as columns) of the integer kernel of m.
inline IntMatrix kernel_lattice(const IntMatrix& m) {
  SmithDecomposition d = snf(m);
  const std::size_t k = d.diag_len();
  std::vector<ExpVec> cols;
  for (std::size_t j = 0; j < m.cols; ++j) {
    if (j < k && d.diag(j) != 0) continue;
    cols.push_back(d.v.column(j));
  }
  return hermite_basis(IntMatrix::from_columns(m.cols, cols));
}

}  // namespace tc
