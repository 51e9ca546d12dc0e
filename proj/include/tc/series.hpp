#pragma once

#include <vector>

#include "tc/quotient.hpp"

namespace tc {

// A central series with its abelian factor coordinates.
//   lower: terms gamma_1 = G, gamma_2, ..., gamma_{k+1} = 1 (descending);
//          factors[i] = gamma_{i+1} / gamma_{i+2}  ... factors[i] is
//          terms[i] / terms[i+1]
//   upper: terms zeta_0 = 1 < zeta_1 < ... < zeta_k = G (ascending);
//          factors[i] = zeta_{i+1} / zeta_i
struct CentralSeriesData {
  enum class Kind { lower, upper };
  Kind kind;
  std::vector<Subgroup> terms;
  std::vector<AbelianFactor> factors;
};

// gamma_1 = G, gamma_{i+1} = [gamma_i, G]; computed by commutator
// generation and normal closure, terminating at the trivial subgroup.
inline CentralSeriesData lower_central_series(PcRef g) {
  CentralSeriesData s;
  s.kind = CentralSeriesData::Kind::lower;
  std::vector<PcElement> gens;
  for (int i = 0; i < g->ngens(); ++i) gens.push_back(g->generator(i));
  s.terms.push_back(whole_group(g));
  for (;;) {
    const Subgroup& cur = s.terms.back();
    if (cur.is_trivial()) break;
    std::vector<PcElement> comms;
    for (const auto& x : cur.seq)
      for (const auto& gen : gens) comms.push_back(g->commutator(x, gen));
    Subgroup next = subgroup_from_generators(g, std::move(comms), gens);
    if (next == cur)
      throw NotNilpotent("lower central series does not reach the trivial subgroup");
    s.terms.push_back(std::move(next));
  }
  for (std::size_t i = 0; i + 1 < s.terms.size(); ++i)
    s.factors.push_back(AbelianFactor::compute(s.terms[i], s.terms[i + 1]));
  return s;
}

inline int nilpotency_class(PcRef g) {
  return static_cast<int>(lower_central_series(g).terms.size()) - 1;
}

namespace detail {

// Subgroup generated by the union of two subgroups' sequences, closed
// under conjugation by the whole group (both inputs normal in our uses).
inline Subgroup join_normal(PcRef g, const Subgroup& a, const Subgroup& b) {
  std::vector<PcElement> gens(a.seq);
  gens.insert(gens.end(), b.seq.begin(), b.seq.end());
  std::vector<PcElement> conj;
  for (int i = 0; i < g->ngens(); ++i) conj.push_back(g->generator(i));
  return subgroup_from_generators(g, std::move(gens), std::move(conj));
}

// {x in S : [x, g_j] in bottom for all generators g_j}, where the
// commutators of S with G already lie in top and top/bottom is a
// central (hence abelian) factor. One linear-congruence solve.
inline Subgroup centralizer_refine(PcRef g, const Subgroup& s, const Subgroup& top,
                                   const Subgroup& bottom) {
  if (s.is_trivial()) return s;
  AbelianFactor f = AbelianFactor::compute(top, bottom);
  Subgroup ds = derived_subgroup(s);
  AbelianFactor sa = AbelianFactor::compute(s, ds);
  const std::size_t dim = sa.dim();
  const int ng = g->ngens();
  // tau(x) = ([x, g_1], ..., [x, g_ng]) in factor coordinates is a
  // homomorphism on s since the factor is central
  IntMatrix m(f.dim() * ng, dim);
  std::vector<Int> mods;
  for (int j = 0; j < ng; ++j)
    for (const Int& d : f.moduli()) mods.push_back(d);
  for (std::size_t k = 0; k < dim; ++k) {
    ExpVec ek(dim, Int(0));
    ek[k] = 1;
    PcElement x = sa.lift(ek);
    for (int j = 0; j < ng; ++j) {
      PcElement c = g->commutator(x, g->generator(j));
      ExpVec z = f.coords(c);
      for (std::size_t i = 0; i < f.dim(); ++i) m.at(j * f.dim() + i, k) = z[i];
    }
  }
  Lattice ker = CongruenceSystem(std::move(m), std::move(mods)).kernel();
  std::vector<PcElement> gens;
  for (std::size_t j = 0; j < ker.basis.cols; ++j) gens.push_back(sa.lift(ker.basis.column(j)));
  gens.insert(gens.end(), ds.seq.begin(), ds.seq.end());
  return subgroup_from_generators(g, std::move(gens));
}

// {x : [x, G] <= z}: refine down the chain z * W_w of weight tails.
inline Subgroup next_center(PcRef g, const Subgroup& z) {
  Subgroup s = whole_group(g);
  const int maxw = g->max_weight();
  Subgroup top = whole_group(g);
  for (int w = 1; w <= maxw; ++w) {
    Subgroup bottom = join_normal(g, z, tail_subgroup(g, g->weight_tail_start(w + 1)));
    s = centralizer_refine(g, s, top, bottom);
    top = std::move(bottom);
  }
  return s;
}

}  // namespace detail

// zeta_0 = 1 < zeta_1 < ... < zeta_k = G, each zeta_{i+1}/zeta_i the
// center of G/zeta_i, computed by layered linear-congruence solves along
// the weight filtration.
inline CentralSeriesData upper_central_series(PcRef g) {
  CentralSeriesData s;
  s.kind = CentralSeriesData::Kind::upper;
  s.terms.push_back(trivial_subgroup(g));
  Subgroup whole = whole_group(g);
  for (;;) {
    if (s.terms.back() == whole) break;
    Subgroup next = detail::next_center(g, s.terms.back());
    if (next == s.terms.back())
      throw NotNilpotent("upper central series stalls below the whole group");
    s.terms.push_back(std::move(next));
  }
  for (std::size_t i = 0; i + 1 < s.terms.size(); ++i)
    s.factors.push_back(AbelianFactor::compute(s.terms[i + 1], s.terms[i]));
  return s;
}

}  // namespace tc
