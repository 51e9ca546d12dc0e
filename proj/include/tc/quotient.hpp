#pragma once

#include <vector>

#include "tc/gmap.hpp"

namespace tc {

// Quotient of a pc group by a normal subgroup contained in a central
// tail segment: abelian-quotient coordinates on the tail block, head
// generators untouched. Carries the projection map and a canonical
// section (preimage per quotient generator): the lift of a quotient
// normal form is the section product with the same exponents, which for
// a full-tail kernel is literally "same exponents, zeros on kernel
// coordinates".
struct Quotient {
  PcRef source;
  Subgroup kernel;
  PcRef group;                     // the quotient presentation
  GroupMap proj;                   // source -> group, verified
  std::vector<PcElement> section;  // canonical preimage per quotient generator

  PcElement project(const PcElement& x) const { return proj.apply(x); }

  PcElement lift(const PcElement& xbar) const {
    PcElement r = source->identity();
    for (std::size_t k = 0; k < section.size(); ++k)
      if (xbar.e[k] != 0) r = source->mul(r, source->pow(section[k], xbar.e[k]));
    return r;
  }
};

inline Quotient quotient_mod(PcRef g, const Subgroup& c) {
  if (c.parent != g) throw Error("quotient_mod: subgroup of a different group");
  const PcPresentation& gp = *g;
  const int n = gp.ngens();

  if (c.is_trivial()) {
    Quotient q;
    q.source = g;
    q.kernel = c;
    q.group = g;
    q.proj = identity_map(g);
    for (int i = 0; i < n; ++i) q.section.push_back(gp.generator(i));
    return q;
  }

  const int t = c.leads[0];
  // the tail segment from the kernel's first leading index must be
  // central, so that the tail block is an abelian coordinate patch and
  // the kernel is automatically normal
  for (int m = t; m < n; ++m)
    for (int i = 0; i < m; ++i)
      if (!gp.conj_trivial(m, i))
        throw NotTailCompatible("kernel is not contained in a central tail segment (generator " +
                                gp.gen_names[m] + " is not central)");

  Subgroup tail = tail_subgroup(g, t);
  AbelianFactor f = AbelianFactor::compute(tail, c);

  // quotient generator list: head generators, then one per public
  // coordinate of tail/kernel
  std::vector<std::string> names;
  std::vector<Int> orders;
  for (int i = 0; i < t; ++i) {
    names.push_back(gp.gen_names[i]);
    orders.push_back(gp.orders[i]);
  }
  std::vector<Int> fmods = f.moduli();
  for (std::size_t k = 0; k < f.dim(); ++k) {
    std::string nm = "q" + std::to_string(k + 1);
    while (std::find(names.begin(), names.end(), nm) != names.end()) nm += "'";
    names.push_back(nm);
    orders.push_back(fmods[k]);
  }
  const int qn = static_cast<int>(names.size());

  // any element supported on the tail block maps to its factor coords
  auto map_tail_part = [&](const ExpVec& v) -> ExpVec {
    ExpVec tv(n, Int(0));
    bool any = false;
    for (int m = t; m < n; ++m) {
      tv[m] = v[m];
      if (v[m] != 0) any = true;
    }
    ExpVec out(f.dim(), Int(0));
    if (any) out = f.coords(PcElement{tv});
    return out;
  };
  auto rewrite = [&](const ExpVec& v) -> ExpVec {
    ExpVec w(qn, Int(0));
    for (int i = 0; i < t; ++i) w[i] = v[i];
    ExpVec z = map_tail_part(v);
    for (std::size_t k = 0; k < f.dim(); ++k) w[t + k] = z[k];
    return w;
  };

  std::vector<std::tuple<int, int, ExpVec>> conj_rel;
  for (int j = 1; j < t; ++j)
    for (int i = 0; i < j; ++i)
      if (!gp.conj_trivial(j, i)) conj_rel.emplace_back(j, i, rewrite(gp.conj_relation(j, i)));
  // new tail generators are central: no conjugation relations for them

  std::vector<std::pair<int, ExpVec>> pow_rel;
  for (int i = 0; i < t; ++i)
    if (gp.orders[i] != 0) pow_rel.emplace_back(i, rewrite(gp.pow_tail(i)));
  // Smith coordinates decouple the torsion of the new block: the power
  // relations of the new generators have trivial tails

  PcRef q = PcPresentation::create(gp.name + ".q", names, orders, std::move(conj_rel),
                                   std::move(pow_rel));

  Quotient result;
  result.source = g;
  result.kernel = c;
  result.group = q;
  std::vector<PcElement> images;
  for (int i = 0; i < n; ++i) {
    ExpVec gi(n, Int(0));
    gi[i] = 1;
    images.push_back(q->from_exponents(rewrite(gi)));
  }
  result.proj = check_hom(g, q, std::move(images));
  for (int i = 0; i < t; ++i) result.section.push_back(gp.generator(i));
  for (std::size_t k = 0; k < f.dim(); ++k) {
    ExpVec ek(f.dim(), Int(0));
    ek[k] = 1;
    result.section.push_back(f.lift(ek));
  }
  return result;
}

// The induced map on a quotient: requires the kernel to be preserved,
// verifies the commuting square on generators and the quotient relations.
inline GroupMap induced_map(const GroupMap& f, const Quotient& q) {
  if (f.source != q.source || f.target != q.source)
    throw Error("induced_map: map does not live on the quotient's source group");
  for (const auto& h : q.kernel.seq)
    if (!q.kernel.contains(f.apply(h)))
      throw KernelNotPreserved("map does not preserve the quotient kernel");
  std::vector<PcElement> images;
  for (const auto& s : q.section) images.push_back(q.project(f.apply(s)));
  GroupMap fbar = check_hom(q.group, q.group, std::move(images));
  for (int i = 0; i < q.source->ngens(); ++i) {
    PcElement lhs = q.project(f.apply(q.source->generator(i)));
    PcElement rhs = fbar.apply(q.project(q.source->generator(i)));
    if (!(lhs == rhs)) throw Error("induced_map: commuting square failed (internal)");
  }
  return fbar;
}

}  // namespace tc
