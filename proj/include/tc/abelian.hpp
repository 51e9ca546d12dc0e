#pragma once

#include <functional>
#include <vector>

#include "tc/congruence.hpp"
#include "tc/subgroup.hpp"

namespace tc {

// Coordinates on an abelian section P/Q of a pc group (Q <= P; the
// quotient is abelianized, so for P/Q to be P/Q on the nose the factor
// must be abelian, which holds for every central-series factor this
// library forms).
//
// Coordinates: y = decomposition over seq(P), z = U*y from the Smith
// form of the relation lattice. Each row of z carries a modulus d:
// d = 0 free, d = 1 dead (dropped), d > 1 torsion. Public coordinates
// are the non-dead rows.
struct AbelianFactor {
  Subgroup p, q;
  IntMatrix u, u_inv;
  std::vector<Int> dvec;            // modulus per z-row
  std::vector<std::size_t> pub;     // public row indices

  static AbelianFactor compute(const Subgroup& p, const Subgroup& q) {
    const PcPresentation& g = *p.parent;
    AbelianFactor f;
    f.p = p;
    f.q = q;
    const std::size_t t = p.seq.size();
    std::vector<ExpVec> rel;
    auto decomp = [&](const PcElement& x) -> ExpVec {
      auto d = p.member_decompose(x);
      if (!d) throw Error("AbelianFactor: element escapes the section subgroup");
      return *d;
    };
    for (const auto& qe : q.seq) rel.push_back(decomp(qe));
    for (std::size_t i = 0; i < t; ++i) {
      Int o = p.rel_order(i);
      if (o == 0) continue;
      ExpVec col = decomp(g.pow(p.seq[i], o));
      for (auto& v : col) v = -v;
      col[i] += o;
      rel.push_back(std::move(col));
    }
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = i + 1; j < t; ++j)
        rel.push_back(decomp(g.commutator(p.seq[i], p.seq[j])));

    SmithDecomposition s = snf(IntMatrix::from_columns(t, rel));
    f.u = s.u;
    f.u_inv = s.u_inv;
    f.dvec.assign(t, Int(0));
    for (std::size_t i = 0; i < s.diag_len(); ++i) f.dvec[i] = s.diag(i);
    for (std::size_t i = 0; i < t; ++i)
      if (f.dvec[i] != 1) f.pub.push_back(i);
    return f;
  }

  std::size_t dim() const { return pub.size(); }

  std::vector<Int> moduli() const {
    std::vector<Int> m;
    for (auto i : pub) m.push_back(dvec[i]);
    return m;
  }

  std::size_t free_rank() const {
    std::size_t r = 0;
    for (auto i : pub)
      if (dvec[i] == 0) ++r;
    return r;
  }

  std::vector<Int> invariant_factors() const {
    std::vector<Int> inv;
    for (auto i : pub)
      if (dvec[i] > 1) inv.push_back(dvec[i]);
    return inv;
  }

  bool is_trivial_group() const { return pub.empty(); }

  Cardinality order() const {
    if (free_rank() > 0) return Cardinality::inf();
    Int n = 1;
    for (auto i : pub)
      if (dvec[i] > 1) n *= dvec[i];
    return Cardinality::of(n);
  }

  // public coordinates of x (x must lie in P); torsion rows reduced
  ExpVec coords(const PcElement& x) const {
    auto d = p.member_decompose(x);
    if (!d) throw Error("AbelianFactor::coords: element not in the section subgroup");
    ExpVec z = u.apply(*d);
    ExpVec out;
    out.reserve(pub.size());
    for (auto i : pub) out.push_back(dvec[i] > 1 ? fdiv_r(z[i], dvec[i]) : z[i]);
    return out;
  }

  ExpVec reduce(const ExpVec& z) const {
    ExpVec out(z);
    for (std::size_t k = 0; k < pub.size(); ++k)
      if (dvec[pub[k]] > 1) out[k] = fdiv_r(out[k], dvec[pub[k]]);
    return out;
  }

  // canonical section: an element of P with the given public coordinates
  PcElement lift(const ExpVec& z) const {
    if (z.size() != pub.size()) throw Error("AbelianFactor::lift: coordinate length");
    ExpVec zf(dvec.size(), Int(0));
    for (std::size_t k = 0; k < pub.size(); ++k) zf[pub[k]] = z[k];
    ExpVec y = u_inv.apply(zf);
    const PcPresentation& g = *p.parent;
    PcElement r = g.identity();
    for (std::size_t i = 0; i < y.size(); ++i)
      if (y[i] != 0) r = g.mul(r, g.pow(p.seq[i], y[i]));
    return r;
  }

  // matrix of a map on the factor: column k = coords(img(lift(e_k)))
  IntMatrix induced_matrix(const std::function<PcElement(const PcElement&)>& img) const {
    IntMatrix m(dim(), dim());
    for (std::size_t k = 0; k < dim(); ++k) {
      ExpVec ek(dim(), Int(0));
      ek[k] = 1;
      ExpVec col = coords(img(lift(ek)));
      for (std::size_t i = 0; i < dim(); ++i) m.at(i, k) = col[i];
    }
    return m;
  }
};

// whole-group abelianization helper: G / [G,G]
inline AbelianFactor abelianization(const Subgroup& h) {
  return AbelianFactor::compute(h, derived_subgroup(h));
}

}  // namespace tc
