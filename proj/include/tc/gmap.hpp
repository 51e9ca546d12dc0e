#pragma once

#include <string>
#include <vector>

#include "tc/abelian.hpp"

namespace tc {

// A homomorphism between pc groups, given by generator images. Instances
// handed out by check_map / check_hom have had every defining relation
// verified.
struct GroupMap {
  PcRef source, target;
  std::vector<PcElement> images;

  PcElement apply(const PcElement& x) const {
    PcElement r = target->identity();
    for (std::size_t i = 0; i < images.size(); ++i)
      if (x.e[i] != 0) r = target->mul(r, target->pow(images[i], x.e[i]));
    return r;
  }

  // this after f (apply f first)
  GroupMap compose_after(const GroupMap& f) const {
    GroupMap r;
    r.source = f.source;
    r.target = target;
    for (const auto& im : f.images) r.images.push_back(apply(im));
    return r;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images.size(); ++i)
      if (!(images[i] == source->generator(static_cast<int>(i)))) return false;
    return source == target;
  }
};

inline GroupMap identity_map(PcRef g) {
  GroupMap m;
  m.source = g;
  m.target = g;
  for (int i = 0; i < g->ngens(); ++i) m.images.push_back(g->generator(i));
  return m;
}

// Verify that generator images define a homomorphism source -> target:
// every defining relation of the source (including the implicit
// commutation of unrelated pairs) must map to a verified identity.
inline GroupMap check_hom(PcRef source, PcRef target, std::vector<PcElement> images) {
  const PcPresentation& s = *source;
  const PcPresentation& t = *target;
  const int n = s.ngens();
  if (static_cast<int>(images.size()) != n)
    throw RelationViolated("check_hom: need one image per generator");
  GroupMap m{source, target, std::move(images)};
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      PcElement lhs = t.conjugate(m.images[j], m.images[i]);
      PcElement rhs = m.apply(PcElement{s.conj_relation(j, i)});
      if (!(lhs == rhs))
        throw RelationViolated("image violates the conjugation relation for (" +
                               s.gen_names[j] + ", " + s.gen_names[i] + ")");
    }
  for (int i = 0; i < n; ++i) {
    if (s.orders[i] == 0) continue;
    PcElement lhs = t.pow(m.images[i], s.orders[i]);
    PcElement rhs = m.apply(PcElement{s.pow_tail(i)});
    if (!(lhs == rhs))
      throw RelationViolated("image violates the power relation for " + s.gen_names[i]);
  }
  return m;
}

enum class MapRequirement { endo, automorphism };

// Validate an endomorphism or automorphism of G. The automorphism check
// verifies that the induced map on the abelianization is bijective
// (surjectivity on a finitely generated abelian group suffices, and
// for a nilpotent group surjectivity lifts; finitely generated
// nilpotent groups are Hopfian).
inline GroupMap check_map(PcRef g, std::vector<PcElement> images, MapRequirement req) {
  GroupMap m = check_hom(g, g, std::move(images));
  if (req == MapRequirement::endo) return m;
  AbelianFactor ab = abelianization(whole_group(g));
  IntMatrix mat = ab.induced_matrix([&](const PcElement& x) { return m.apply(x); });
  // surjective on A  <=>  [A : im + torsion] = 1
  std::vector<ExpVec> cols;
  for (std::size_t j = 0; j < mat.cols; ++j) cols.push_back(mat.column(j));
  std::vector<Int> mods = ab.moduli();
  for (std::size_t i = 0; i < mods.size(); ++i) {
    if (mods[i] == 0) continue;
    ExpVec e(ab.dim(), Int(0));
    e[i] = mods[i];
    cols.push_back(std::move(e));
  }
  Lattice l = Lattice::from_vectors(ab.dim(), cols);
  Cardinality idx = lattice_index(l);
  if (idx.infinite || idx.value != 1)
    throw NotBijective("induced map on the abelianization is not bijective");
  return m;
}

}  // namespace tc
