#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tc/series.hpp"

namespace tc {

// Certificate that R(phi) is infinite.
//   degenerate_lattice: the twisted-class lattice of some lower-central
//     layer is not of full rank; `vector` is a nonzero integer vector
//     annihilating the layer lattice matrix (a left kernel vector, i.e.
//     a kernel vector of its transpose).
//   fixed_on_factor: an upper-central factor A_i has a nonzero vector
//     fixed by the induced map.
struct InfinityWitness {
  enum class Kind { degenerate_lattice, fixed_on_factor };
  Kind kind = Kind::degenerate_lattice;
  int layer = 0;
  ExpVec vector;
  std::string element;  // printable witness element, when meaningful
};

struct TwistedClass {
  PcElement representative;
  // per-layer construction data: (layer, transversal index)
  std::vector<std::pair<int, Int>> layer_trace;
};

struct ReidemeisterResult {
  bool finite = false;
  Int count = 0;
  std::vector<TwistedClass> classes;
  InfinityWitness witness;

  static ReidemeisterResult make_finite(std::vector<TwistedClass> cls) {
    ReidemeisterResult r;
    r.finite = true;
    r.count = Int(cls.size());
    r.classes = std::move(cls);
    return r;
  }
  static ReidemeisterResult make_infinite(InfinityWitness w) {
    ReidemeisterResult r;
    r.finite = false;
    r.witness = std::move(w);
    return r;
  }
};

// ---------------------------------------------------------------------
// abelian layer: R(phi) = [A : im(phi - id)] with transversal reps
// ---------------------------------------------------------------------

namespace detail {

// lattice generated by the columns of `gens` together with the torsion
// identifications of the factor coordinates
inline Lattice coset_lattice(const AbelianFactor& a, const IntMatrix& gens) {
  std::vector<ExpVec> cols;
  for (std::size_t j = 0; j < gens.cols; ++j) cols.push_back(gens.column(j));
  std::vector<Int> mods = a.moduli();
  for (std::size_t i = 0; i < mods.size(); ++i) {
    if (mods[i] == 0) continue;
    ExpVec e(a.dim(), Int(0));
    e[i] = mods[i];
    cols.push_back(std::move(e));
  }
  return Lattice::from_vectors(a.dim(), cols);
}

inline ExpVec left_kernel_vector(const IntMatrix& b) {
  IntMatrix k = kernel_lattice(b.transpose());
  if (k.cols == 0) throw Error("left_kernel_vector: matrix has full row rank");
  return k.column(0);
}

struct AbelianLayer {
  bool finite = false;
  Int index = 0;
  std::vector<ExpVec> rep_coords;  // transversal, lexicographic in Smith box
  ExpVec left_kernel;              // when infinite
  IntMatrix lattice_matrix;        // generator columns incl. torsion
};

inline AbelianLayer abelian_layer(const AbelianFactor& a, const IntMatrix& gens) {
  AbelianLayer r;
  Lattice l = coset_lattice(a, gens);
  std::vector<ExpVec> cols;
  for (std::size_t j = 0; j < l.basis.cols; ++j) cols.push_back(l.basis.column(j));
  r.lattice_matrix = l.basis;
  Cardinality idx = lattice_index(l);
  if (idx.infinite) {
    r.finite = false;
    r.left_kernel = left_kernel_vector(l.basis);
    return r;
  }
  r.finite = true;
  r.index = idx.value;
  r.rep_coords = transversal(l);
  return r;
}

}  // namespace detail

// R(phi) for a map on an abelian factor given by its induced matrix.
inline detail::AbelianLayer reidemeister_abelian_coords(const AbelianFactor& a,
                                                        const IntMatrix& m) {
  IntMatrix b(a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) b.at(i, j) = m.at(i, j) - (i == j ? 1 : 0);
  return detail::abelian_layer(a, b);
}

// R(phi) of an automorphism of an abelian pc group, with class
// representatives.
inline ReidemeisterResult reidemeister_abelian(PcRef g, const GroupMap& phi) {
  if (!g->is_abelian()) throw Error("reidemeister_abelian: group is not abelian");
  AbelianFactor a = AbelianFactor::compute(whole_group(g), trivial_subgroup(g));
  IntMatrix m = a.induced_matrix([&](const PcElement& x) { return phi.apply(x); });
  detail::AbelianLayer layer = reidemeister_abelian_coords(a, m);
  if (!layer.finite) {
    InfinityWitness w;
    w.kind = InfinityWitness::Kind::degenerate_lattice;
    w.layer = 1;
    w.vector = layer.left_kernel;
    return ReidemeisterResult::make_infinite(std::move(w));
  }
  std::vector<TwistedClass> cls;
  Int ti = 0;
  for (const auto& z : layer.rep_coords) {
    TwistedClass c;
    c.representative = a.lift(z);
    c.layer_trace = {{1, ti}};
    ti += 1;
    cls.push_back(std::move(c));
  }
  return ReidemeisterResult::make_finite(std::move(cls));
}

// ---------------------------------------------------------------------
// fixed subgroups (inductive procedure along the lower central series)
// ---------------------------------------------------------------------

inline Subgroup fix_subgroup(PcRef g, const GroupMap& phi);

namespace detail {

inline Subgroup fix_subgroup_abelian(PcRef g, const GroupMap& phi) {
  AbelianFactor a = AbelianFactor::compute(whole_group(g), trivial_subgroup(g));
  IntMatrix m = a.induced_matrix([&](const PcElement& x) { return phi.apply(x); });
  for (std::size_t i = 0; i < a.dim(); ++i) m.at(i, i) -= 1;
  Lattice k = CongruenceSystem(m, a.moduli()).kernel();
  std::vector<PcElement> gens;
  for (std::size_t j = 0; j < k.basis.cols; ++j) gens.push_back(a.lift(k.basis.column(j)));
  return subgroup_from_generators(g, std::move(gens));
}

// kernel of the homomorphism mu(x) = phi(x) x^-1 from h into the central
// subgroup c; equals the fixed subgroup of phi restricted to h when h is
// the full preimage of the fixed subgroup downstairs
inline Subgroup mu_kernel(PcRef g, const Subgroup& h, const Subgroup& c,
                          const AbelianFactor& c_coords, const GroupMap& phi) {
  Subgroup dh = derived_subgroup(h);
  AbelianFactor ha = AbelianFactor::compute(h, dh);
  IntMatrix m(c_coords.dim(), ha.dim());
  for (std::size_t k = 0; k < ha.dim(); ++k) {
    ExpVec ek(ha.dim(), Int(0));
    ek[k] = 1;
    PcElement x = ha.lift(ek);
    PcElement mu = g->mul(phi.apply(x), g->inv(x));
    if (!c.contains(mu))
      throw MuNotWellDefined("mu image escapes the central subgroup (internal)");
    ExpVec z = c_coords.coords(mu);
    for (std::size_t i = 0; i < c_coords.dim(); ++i) m.at(i, k) = z[i];
  }
  Lattice k = CongruenceSystem(std::move(m), c_coords.moduli()).kernel();
  std::vector<PcElement> gens;
  for (std::size_t j = 0; j < k.basis.cols; ++j) gens.push_back(ha.lift(k.basis.column(j)));
  gens.insert(gens.end(), dh.seq.begin(), dh.seq.end());
  return subgroup_from_generators(g, std::move(gens));
}

}  // namespace detail

// Generators of Fix_phi(G) = {x : phi(x) = x} for an automorphism of a
// nilpotent pc group. Recursion: fix downstairs modulo the last
// lower-central term, lift, adjoin the central generators, then take the
// kernel of mu : x -> phi(x) x^-1. Every returned sequence element is
// verified fixed.
inline Subgroup fix_subgroup(PcRef g, const GroupMap& phi) {
  CentralSeriesData lcs = lower_central_series(g);
  Subgroup result = trivial_subgroup(g);
  if (lcs.terms.size() <= 2) {
    result = detail::fix_subgroup_abelian(g, phi);
  } else {
    const Subgroup& c = lcs.terms[lcs.terms.size() - 2];
    Quotient q = quotient_mod(g, c);
    GroupMap phibar = induced_map(phi, q);
    Subgroup fbar = fix_subgroup(q.group, phibar);
    std::vector<PcElement> gens;
    for (const auto& x : fbar.seq) gens.push_back(q.lift(x));
    gens.insert(gens.end(), c.seq.begin(), c.seq.end());
    Subgroup h = subgroup_from_generators(g, std::move(gens));
    AbelianFactor cc = AbelianFactor::compute(c, trivial_subgroup(g));
    result = detail::mu_kernel(g, h, c, cc, phi);
  }
  for (const auto& x : result.seq)
    if (!(phi.apply(x) == x))
      throw MuNotWellDefined("fix_subgroup produced an unfixed generator (internal)");
  return result;
}

// ---------------------------------------------------------------------
// L(C, psi) = { c in C | exists x : psi(x) = c x }
// ---------------------------------------------------------------------

struct LSubgroupResult {
  Subgroup c;
  GroupMap psi;
  AbelianFactor c_coords;
  std::vector<PcElement> preimages;   // f_j
  std::vector<PcElement> generators;  // c_j with psi(f_j) = c_j f_j
  IntMatrix lattice_gens;             // coords(c_j) as columns
  Lattice as_lattice;                 // with torsion identifications adjoined
};

inline LSubgroupResult L_subgroup(PcRef g, const Subgroup& c, const GroupMap& psi,
                                  const Quotient* ready_quotient = nullptr) {
  for (const auto& x : c.seq)
    for (int j = 0; j < g->ngens(); ++j)
      if (!g->commutator(x, g->generator(j)).is_identity())
        throw NotCentral("L_subgroup: subgroup is not central");
  for (const auto& x : c.seq)
    if (!c.contains(psi.apply(x)))
      throw NotAdmissible("L_subgroup: psi does not map C into C");

  Quotient local;
  const Quotient* q = ready_quotient;
  if (!q) {
    local = quotient_mod(g, c);
    q = &local;
  }
  GroupMap psibar = induced_map(psi, *q);
  Subgroup fbar = fix_subgroup(q->group, psibar);
  std::vector<PcElement> gens;
  for (const auto& x : fbar.seq) gens.push_back(q->lift(x));
  gens.insert(gens.end(), c.seq.begin(), c.seq.end());
  Subgroup h = subgroup_from_generators(g, std::move(gens));

  LSubgroupResult r;
  r.c = c;
  r.psi = psi;
  r.c_coords = AbelianFactor::compute(c, trivial_subgroup(g));
  std::vector<ExpVec> cols;
  for (const auto& f : h.seq) {
    PcElement cj = g->mul(psi.apply(f), g->inv(f));
    if (!c.contains(cj))
      throw MuNotWellDefined("L_subgroup: psi(f) f^-1 escapes C (internal)");
    // stored pair verifies psi(f) = c_j * f exactly
    if (!(psi.apply(f) == g->mul(cj, f)))
      throw MuNotWellDefined("L_subgroup: stored pair fails verification (internal)");
    r.preimages.push_back(f);
    r.generators.push_back(cj);
    cols.push_back(r.c_coords.coords(cj));
  }
  r.lattice_gens = IntMatrix::from_columns(r.c_coords.dim(), cols);
  r.as_lattice = detail::coset_lattice(r.c_coords, r.lattice_gens);
  return r;
}

// Reconstruct a witness x with psi(x) = c * x for c in L, from the
// stored preimage data. Returns nothing when c is not in L.
inline std::optional<PcElement> L_witness(PcRef g, const LSubgroupResult& l,
                                          const PcElement& c_elt) {
  std::vector<Int> mods = l.c_coords.moduli();
  IntMatrix a = l.lattice_gens;
  ExpVec b = l.c_coords.coords(c_elt);
  auto sol = CongruenceSystem(a, mods).solve(b);
  if (!sol) return std::nullopt;
  PcElement x = g->identity();
  for (std::size_t j = 0; j < l.preimages.size(); ++j)
    if ((*sol)[j] != 0) x = g->mul(x, g->pow(l.preimages[j], (*sol)[j]));
  if (!(l.psi.apply(x) == g->mul(c_elt, x)))
    throw MuNotWellDefined("L_witness verification failed (internal)");
  return x;
}

// ---------------------------------------------------------------------
// class lifting through a central quotient (Lemma 4 machinery)
// ---------------------------------------------------------------------

// phi_g = conjugation-by-g after phi: h -> g^-1 phi(h) g
inline GroupMap twist_by(PcRef g, const GroupMap& phi, const PcElement& gelt) {
  GroupMap r;
  r.source = g;
  r.target = g;
  for (const auto& im : phi.images) r.images.push_back(g->conjugate(im, gelt));
  return r;
}

inline ReidemeisterResult lift_classes(PcRef g, const Subgroup& c, const GroupMap& phi,
                                       const std::vector<TwistedClass>& downstairs,
                                       const Quotient& q, int layer,
                                       const std::vector<PcElement>* preimage_override =
                                           nullptr) {
  if (downstairs.empty())
    throw EmptyDownstairs("lift_classes: empty downstairs class list");
  AbelianFactor cc = AbelianFactor::compute(c, trivial_subgroup(g));
  std::vector<TwistedClass> classes;
  for (std::size_t di = 0; di < downstairs.size(); ++di) {
    PcElement g0 = preimage_override ? (*preimage_override)[di]
                                     : q.lift(downstairs[di].representative);
    GroupMap phig = twist_by(g, phi, g0);
    LSubgroupResult l = L_subgroup(g, c, phig, &q);
    Lattice lat = l.as_lattice;
    if (lat.rank() < cc.dim()) {
      InfinityWitness w;
      w.kind = InfinityWitness::Kind::degenerate_lattice;
      w.layer = layer;
      w.vector = detail::left_kernel_vector(lat.basis);
      return ReidemeisterResult::make_infinite(std::move(w));
    }
    std::vector<ExpVec> reps = transversal(lat);
    Int ti = 0;
    for (const auto& z : reps) {
      TwistedClass tcls;
      tcls.representative = g->mul(g0, cc.lift(z));
      tcls.layer_trace = downstairs[di].layer_trace;
      tcls.layer_trace.emplace_back(layer, ti);
      ti += 1;
      classes.push_back(std::move(tcls));
    }
  }
  return ReidemeisterResult::make_finite(std::move(classes));
}

// ---------------------------------------------------------------------
// the full layered algorithm and the decision procedure
// ---------------------------------------------------------------------

// R(phi) by induction along the lower central series, without the
// upper-central shortcut.
inline ReidemeisterResult reidemeister_layered(PcRef g, const GroupMap& phi) {
  CentralSeriesData lcs = lower_central_series(g);
  if (lcs.terms.size() <= 2) return reidemeister_abelian(g, phi);
  int layer = static_cast<int>(lcs.terms.size()) - 1;  // class of g
  const Subgroup& c = lcs.terms[lcs.terms.size() - 2];
  Quotient q = quotient_mod(g, c);
  GroupMap phibar = induced_map(phi, q);
  ReidemeisterResult down = reidemeister_layered(q.group, phibar);
  if (!down.finite) return down;
  return lift_classes(g, c, phi, down.classes, q, layer);
}

// Twisted-conjugacy decision: a witness x with phi(x) g = f x, or
// nothing when g and f are not phi-conjugate. Witnesses verify exactly.
inline std::optional<PcElement> decide(PcRef g, const GroupMap& phi, const PcElement& gelt,
                                       const PcElement& felt) {
  CentralSeriesData lcs = lower_central_series(g);
  std::optional<PcElement> x;
  if (lcs.terms.size() <= 2) {
    AbelianFactor a = AbelianFactor::compute(whole_group(g), trivial_subgroup(g));
    IntMatrix m = a.induced_matrix([&](const PcElement& e) { return phi.apply(e); });
    for (std::size_t i = 0; i < a.dim(); ++i) m.at(i, i) -= 1;
    ExpVec zg = a.coords(gelt), zf = a.coords(felt);
    ExpVec rhs(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) rhs[i] = zf[i] - zg[i];
    auto sol = CongruenceSystem(std::move(m), a.moduli()).solve(rhs);
    if (!sol) return std::nullopt;
    x = a.lift(*sol);
  } else {
    const Subgroup& c = lcs.terms[lcs.terms.size() - 2];
    Quotient q = quotient_mod(g, c);
    GroupMap phibar = induced_map(phi, q);
    auto xbar = decide(q.group, phibar, q.project(gelt), q.project(felt));
    if (!xbar) return std::nullopt;
    PcElement x0 = q.lift(*xbar);
    // phi(x0) g = f x0 c0
    PcElement c0 = g->mul(g->inv(g->mul(felt, x0)), g->mul(phi.apply(x0), gelt));
    if (!c.contains(c0)) throw Error("decide: discrepancy escapes the center (internal)");
    GroupMap phig = twist_by(g, phi, gelt);
    LSubgroupResult l = L_subgroup(g, c, phig, &q);
    auto v = L_witness(g, l, g->inv(c0));
    if (!v) return std::nullopt;
    x = g->mul(x0, *v);
  }
  if (!(g->mul(phi.apply(*x), gelt) == g->mul(felt, *x)))
    throw Error("decide: witness failed exact verification (internal)");
  return x;
}

// ---------------------------------------------------------------------
// infinity witnesses from the upper central series (Corollary 3.2)
// ---------------------------------------------------------------------

inline std::optional<InfinityWitness> infinity_witness_uc(PcRef g, const GroupMap& phi) {
  CentralSeriesData ucs = upper_central_series(g);
  for (std::size_t i = 0; i + 1 < ucs.terms.size(); ++i) {
    const AbelianFactor& a = ucs.factors[i];
    for (const auto& h : ucs.terms[i + 1].seq)
      if (!ucs.terms[i + 1].contains(phi.apply(h)))
        throw Error("infinity_witness_uc: upper central term not preserved (internal)");
    if (!a.invariant_factors().empty())
      throw TorsionPresent("upper central factor " + std::to_string(i) +
                           " has torsion; group is not torsion-free");
    IntMatrix m = a.induced_matrix([&](const PcElement& x) { return phi.apply(x); });
    for (std::size_t k = 0; k < a.dim(); ++k) m.at(k, k) -= 1;
    IntMatrix ker = kernel_lattice(m);
    if (ker.cols > 0) {
      InfinityWitness w;
      w.kind = InfinityWitness::Kind::fixed_on_factor;
      w.layer = static_cast<int>(i);
      w.vector = ker.column(0);
      w.element = g->print(a.lift(ker.column(0)));
      return w;
    }
  }
  return std::nullopt;
}

// Full Reidemeister computation: for torsion-free presentations the
// cheap upper-central certificate runs first, then the layered
// algorithm.
inline ReidemeisterResult reidemeister(PcRef g, const GroupMap& phi) {
  if (g->is_torsion_free_presentation() && g->ngens() > 0) {
    auto w = infinity_witness_uc(g, phi);
    if (w) return ReidemeisterResult::make_infinite(std::move(*w));
  }
  return reidemeister_layered(g, phi);
}

// ---------------------------------------------------------------------
// R-infinity predicates for free nilpotent groups
// ---------------------------------------------------------------------

// Formanek's classification: N_{rc} has nontrivial elements fixed by all
// automorphisms iff (a) r in {2,3} and c = 2kr with k >= 2, or
// (b) r >= 4 and c = 2kr with k >= 1.
inline bool formanek_fixed(int r, int c) {
  if (r < 2 || c < 2) throw Error("formanek_fixed: requires r >= 2 and c >= 2");
  if (c % (2 * r) != 0) return false;
  int k = c / (2 * r);
  if (r == 2 || r == 3) return k >= 2;
  return k >= 1;
}

// Hypothesis of the R-infinity theorem for N_{rc}: c >= 4r when r is 2
// or 3, c >= 2r when r >= 4. True means certified in R-infinity; false
// means the theorem is silent.
inline bool theorem2_rinf(int r, int c) {
  if (r < 2 || c < 2) throw Error("theorem2_rinf: requires r >= 2 and c >= 2");
  if (r == 2 || r == 3) return c >= 4 * r;
  return c >= 2 * r;
}

}  // namespace tc
