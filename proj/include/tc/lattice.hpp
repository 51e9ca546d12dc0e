#pragma once

#include <optional>
#include <vector>

#include "tc/normalform.hpp"

namespace tc {

// A sublattice of Z^n given by its canonical column-Hermite basis.
// Columns are linearly independent; the basis is unique per sublattice.
struct Lattice {
  std::size_t ambient_rank = 0;
  IntMatrix basis;  // ambient_rank x k, k <= ambient_rank, column HNF

  static Lattice from_columns(std::size_t ambient, const IntMatrix& gens) {
    if (gens.rows != ambient && gens.cols != 0)
      throw Error("Lattice: generator rows do not match ambient rank");
    IntMatrix g = gens;
    if (g.cols == 0) g = IntMatrix::zero(ambient, 0);
    Lattice l;
    l.ambient_rank = ambient;
    l.basis = hermite_basis(g);
    return l;
  }

  static Lattice from_vectors(std::size_t ambient, const std::vector<ExpVec>& gens) {
    return from_columns(ambient, IntMatrix::from_columns(ambient, gens));
  }

  std::size_t rank() const { return basis.cols; }

  bool contains(const ExpVec& v) const {
    return solve_in_span(basis, v).has_value();
  }
};

// [Z^n : L]; infinite when the basis is not square.
inline Cardinality lattice_index(const Lattice& l) {
  if (l.rank() < l.ambient_rank) return Cardinality::inf();
  // full-rank column HNF is lower triangular
  Int p = 1;
  for (std::size_t i = 0; i < l.ambient_rank; ++i) p *= l.basis.at(i, i);
  return Cardinality::of(abs_int(p));
}

// Coset representatives of Z^n / L, one per coset, reduced to the box of
// the Smith coordinate system and enumerated in lexicographic order of
// the Smith coordinates. Deterministic.
inline std::vector<ExpVec> transversal(const Lattice& l) {
  Cardinality idx = lattice_index(l);
  if (idx.infinite) throw IndexInfinite("transversal: lattice has infinite index");
  const std::size_t n = l.ambient_rank;
  if (n == 0) return {ExpVec{}};
  SmithDecomposition d = snf(l.basis);
  // x in L  <=>  (u*x)_i == 0 mod d_i ; cosets are the Smith box
  std::vector<Int> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = d.diag(i);
  std::vector<ExpVec> reps;
  ExpVec y(n, Int(0));
  for (;;) {
    reps.push_back(d.u_inv.apply(y));
    // increment y lexicographically, last coordinate fastest
    std::size_t i = n;
    while (i > 0) {
      --i;
      y[i] += 1;
      if (y[i] < diag[i]) break;
      y[i] = 0;
      if (i == 0) return reps;
    }
  }
}

}  // namespace tc
